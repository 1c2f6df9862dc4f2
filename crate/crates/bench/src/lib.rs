//! Fixed workloads shared by the `bench` subcommand and the criterion
//! benches. Each case reports wall time and the largest simplex count it
//! built; nothing here asserts correctness.

use std::time::Instant;

use serde::Serialize;

use tuplex::homology::ChainComplex;
use tuplex::tupling::hypergraph_matching;
use tuplex::wcm::{check_wcm, tupling_wcm_dimension};
use tuplex::{r_tuple, Error, Limits, Result, SimplicialComplex};

pub const SUITES: [&str; 3] = ["tupling", "homology", "wcm-grid"];

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub name: String,
    pub wall_time_s: f64,
    pub peak_simplices: usize,
    /// One-line summary of what was computed, e.g. an f-vector.
    pub result: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
}

fn timed(name: String, f: impl FnOnce() -> Result<(usize, String)>) -> Result<Case> {
    let start = Instant::now();
    let (peak_simplices, result) = f()?;
    Ok(Case {
        name,
        wall_time_s: start.elapsed().as_secs_f64(),
        peak_simplices,
        result,
    })
}

/// Inputs of the tupling suite: `(label, source, r)`.
pub fn tupling_cases() -> Vec<(String, SimplicialComplex, usize)> {
    let mut out = Vec::new();
    for n in 5..=9 {
        out.push((format!("D2(simplex {n})"), SimplicialComplex::simplex(n), 2));
    }
    out.push(("D3(simplex 8)".into(), SimplicialComplex::simplex(8), 3));
    out.push(("D2(boundary 7)".into(), SimplicialComplex::boundary(7), 2));
    out.push(("D3(boundary 8)".into(), SimplicialComplex::boundary(8), 3));
    out
}

/// Inputs of the homology suite.
pub fn homology_cases(limits: &Limits) -> Result<Vec<(String, SimplicialComplex)>> {
    Ok(vec![
        ("M(K7)".into(), hypergraph_matching(7, 2, limits)?.0),
        ("M(K8)".into(), hypergraph_matching(8, 2, limits)?.0),
        ("M_9(3)".into(), hypergraph_matching(9, 3, limits)?.0),
        ("sd(boundary 4)".into(), SimplicialComplex::boundary(4).barycentric()?.0),
    ])
}

/// The simplex-tupling wCM grid: `(n, r)` with `r ∈ {2, 3}` and `r - 1 <= n <= 8`.
pub fn wcm_grid() -> Vec<(u32, u32)> {
    [2u32, 3]
        .into_iter()
        .flat_map(|r| ((r - 1)..=8).map(move |n| (n, r)))
        .collect()
}

pub fn run_suite(suite: &str, limits: &Limits) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    match suite {
        "tupling" => {
            for (name, x, r) in tupling_cases() {
                cases.push(timed(name, || {
                    let t = r_tuple(&x, r, limits)?;
                    let f = t.complex.f_vector()?;
                    Ok((f.total(), format!("f-vector {:?}", f.0)))
                })?);
            }
        }
        "homology" => {
            for (name, x) in homology_cases(limits)? {
                cases.push(timed(name, || {
                    let cc = ChainComplex::of_complex(&x, None, limits)?;
                    let groups = cc.all_reduced_homology()?;
                    let text: Vec<String> = groups
                        .iter()
                        .filter(|g| g.degree >= 0 && !g.is_zero())
                        .map(|g| format!("H{} = {g}", g.degree))
                        .collect();
                    Ok((x.simplex_count()?, text.join(", ")))
                })?);
            }
        }
        "wcm-grid" => {
            for (n, r) in wcm_grid() {
                cases.push(timed(format!("simplex tupling n={n} r={r}"), || {
                    let (m, _) = hypergraph_matching(n + 1, r, limits)?;
                    let target = tupling_wcm_dimension(n as i64, r as i64);
                    let rep = check_wcm(&m, target, limits)?;
                    Ok((m.simplex_count()?, format!("dim {target}: {}", rep.verdict)))
                })?);
            }
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        cases,
    })
}
