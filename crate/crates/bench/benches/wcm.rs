use criterion::{criterion_group, criterion_main, Criterion};

use tuplex::tupling::hypergraph_matching;
use tuplex::wcm::{check_wcm, tupling_wcm_dimension};
use tuplex::Limits;
use tuplex_bench::wcm_grid;

fn bench(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("wcm-grid");
    g.sample_size(10);
    for (n, r) in wcm_grid().into_iter().filter(|&(n, _)| n >= 6) {
        let (m, _) = hypergraph_matching(n + 1, r, &limits).unwrap();
        let target = tupling_wcm_dimension(n as i64, r as i64);
        g.bench_function(format!("n={n} r={r}"), |b| b.iter(|| check_wcm(&m, target, &limits).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
