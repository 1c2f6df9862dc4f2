//! Exact reduced integral homology and homological connectivity.
//!
//! "k-connected" throughout the crate means homologically k-connected over
//! the integers, with a fundamental-group certificate attached where one
//! could be found.

mod chain;
mod matrix;
mod pi1;
mod snf;

pub use chain::{boundary_matrix, ChainComplex, HomologyGroup};
pub use matrix::{rank_mod_p, SparseMatrix};
pub use pi1::{pi1_triviality, Pi1Status, Presentation};
pub use snf::{smith_normal_form, InvariantFactors};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::limits::Limits;

/// Connectivity of a complex as seen through reduced integral homology.
///
/// Conventions: every complex is (-2)-connected; (-1)-connected means
/// non-empty; 0-connected means non-empty with `H̃_0 = 0`. When all reduced
/// homology vanishes the complex is `acyclic` and `homological_connectivity`
/// is capped at its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub homological_connectivity: i64,
    pub acyclic: bool,
    /// False when the computation stopped at a requested degree; the
    /// connectivity value is then a lower bound.
    pub exact: bool,
    /// Groups from degree 0 up to the first nonvanishing one (or the last
    /// degree computed).
    pub groups: Vec<HomologyGroup>,
    pub pi1_status: Pi1Status,
}

impl ConnectivityReport {
    /// Whether the complex is (at least) homologically `k`-connected.
    pub fn satisfies(&self, k: i64) -> bool {
        k <= -2 || self.acyclic || self.homological_connectivity >= k
    }
}

/// Reduced homology of `x` in degree `p >= 0`.
pub fn reduced_homology(x: &SimplicialComplex, p: usize, limits: &Limits) -> Result<HomologyGroup> {
    let cc = ChainComplex::of_complex(x, Some(p), limits)?;
    cc.reduced_homology(p as i64)
}

/// Every reduced homology group of `x` from degree 0 to `dim x`, checked
/// against the Euler characteristic.
pub fn all_reduced_homology(x: &SimplicialComplex, limits: &Limits) -> Result<Vec<HomologyGroup>> {
    let cc = ChainComplex::of_complex(x, None, limits)?;
    let mut groups = cc.all_reduced_homology()?;
    groups.retain(|g| g.degree >= 0);
    Ok(groups)
}

/// Full homological connectivity: ascends from degree 0 to the first
/// nonvanishing group or the top dimension.
pub fn homological_connectivity(x: &SimplicialComplex, limits: &Limits) -> Result<ConnectivityReport> {
    ascend(x, None, limits)
}

/// Like [`homological_connectivity`] but stops after degree `k`: enough to
/// decide whether `x` is homologically `k`-connected.
pub fn connectivity_up_to(x: &SimplicialComplex, k: i64, limits: &Limits) -> Result<ConnectivityReport> {
    ascend(x, Some(k), limits)
}

fn ascend(x: &SimplicialComplex, stop: Option<i64>, limits: &Limits) -> Result<ConnectivityReport> {
    let dim = x.dim();
    if x.is_empty() {
        return Ok(ConnectivityReport {
            homological_connectivity: -2,
            acyclic: false,
            exact: true,
            groups: Vec::new(),
            pi1_status: Pi1Status::NotAttempted,
        });
    }
    let last = match stop {
        Some(k) if k < dim => k,
        _ => dim,
    };
    if last < 0 {
        // Only (-1)-connectivity was asked for: non-emptiness decides it.
        return Ok(ConnectivityReport {
            homological_connectivity: -1,
            acyclic: false,
            exact: false,
            groups: Vec::new(),
            pi1_status: Pi1Status::NotAttempted,
        });
    }
    let cc = ChainComplex::of_complex(x, Some(last as usize), limits)?;
    let mut groups = Vec::new();
    for p in 0..=last {
        let g = cc.reduced_homology(p)?;
        let zero = g.is_zero();
        groups.push(g);
        if !zero {
            return Ok(ConnectivityReport {
                homological_connectivity: p - 1,
                acyclic: false,
                exact: true,
                groups,
                pi1_status: Pi1Status::NotAttempted,
            });
        }
    }
    let acyclic = last == dim;
    Ok(ConnectivityReport {
        homological_connectivity: last,
        acyclic,
        exact: acyclic,
        groups,
        pi1_status: Pi1Status::NotAttempted,
    })
}
