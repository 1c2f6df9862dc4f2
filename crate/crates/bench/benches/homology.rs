use criterion::{criterion_group, criterion_main, Criterion};

use tuplex::homology::ChainComplex;
use tuplex::Limits;
use tuplex_bench::homology_cases;

fn bench(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    for (name, x) in homology_cases(&limits).unwrap() {
        // a fresh chain complex per iteration, so the cached SNF is not reused
        g.bench_function(name, |b| {
            b.iter(|| {
                let cc = ChainComplex::of_complex(&x, None, &limits).unwrap();
                cc.all_reduced_homology().unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
