use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::simplex::Simplex;

use super::matrix::{rank_mod_p, SparseMatrix};
use super::snf::{smith_normal_form, InvariantFactors};

/// Boundary `∂_p` of `x`: rows are the `(p-1)`-simplices (the single empty
/// simplex when `p = 0`, which makes `∂_0` the augmentation), columns the
/// `p`-simplices, both in lexicographic order. The face omitting the vertex
/// at position `i` gets sign `(-1)^i`.
pub fn boundary_matrix(x: &SimplicialComplex, p: usize) -> Result<SparseMatrix> {
    let cols_s = x.faces(p as i64)?;
    if p == 0 {
        return Ok(SparseMatrix::from_columns(
            1,
            cols_s.iter().map(|_| vec![(0, 1)]).collect(),
        ));
    }
    let rows_s = x.faces(p as i64 - 1)?;
    Ok(boundary_between(&rows_s, &cols_s))
}

fn boundary_between(rows: &[Simplex], cols: &[Simplex]) -> SparseMatrix {
    let index: HashMap<&Simplex, u32> = rows.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    let cols = cols
        .iter()
        .map(|s| {
            (0..s.len())
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    (index[&s.face(i)], sign)
                })
                .collect()
        })
        .collect();
    SparseMatrix::from_columns(rows.len(), cols)
}

/// Augmented chain complex of free abelian groups, degrees `-1..=top`.
///
/// A truncated complex (built for a connectivity query) only carries the
/// boundaries it needs; homology is then available up to `top - 1`.
#[derive(Debug)]
pub struct ChainComplex {
    /// rank of `C_p` at index `p + 1`
    ranks: Vec<usize>,
    /// `∂_p` at index `p`
    boundaries: Vec<SparseMatrix>,
    /// `C_{top+1} = 0`, i.e. nothing was cut off.
    complete: bool,
    snf: Vec<OnceLock<InvariantFactors>>,
}

impl ChainComplex {
    /// Checks shapes and `∂_{p} ∘ ∂_{p+1} = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>, complete: bool) -> Result<Self> {
        if ranks.len() != boundaries.len() + 1 {
            return Err(Error::Inconsistent(format!(
                "{} basis ranks for {} boundaries",
                ranks.len(),
                boundaries.len()
            )));
        }
        for (p, b) in boundaries.iter().enumerate() {
            if b.nrows() != ranks[p] || b.ncols() != ranks[p + 1] {
                return Err(Error::Inconsistent(format!("boundary {p} has the wrong shape")));
            }
        }
        for p in 1..boundaries.len() {
            let comp = boundaries[p - 1]
                .checked_mul(&boundaries[p])
                .ok_or_else(|| Error::Inconsistent("overflow composing boundaries".into()))?;
            if !comp.is_zero() {
                return Err(Error::Inconsistent(format!("∂_{} ∘ ∂_{} ≠ 0", p - 1, p)));
            }
        }
        let snf = (0..boundaries.len()).map(|_| OnceLock::new()).collect();
        Ok(ChainComplex {
            ranks,
            boundaries,
            complete,
            snf,
        })
    }

    /// Augmented simplicial chain complex of `x`. With `top = Some(k)` only
    /// the boundaries up to `∂_{k+1}` are built, which suffices for
    /// `H̃_0..=H̃_k`.
    pub fn of_complex(x: &SimplicialComplex, top: Option<usize>, limits: &Limits) -> Result<Self> {
        let dim = x.dim();
        let last = (dim >= 0).then(|| match top {
            Some(k) if (k as i64) < dim => k + 1,
            _ => dim as usize,
        });
        let strata = x.strata()?;
        let mut ranks = vec![1usize];
        let mut boundaries = Vec::new();
        let mut entries = 0usize;
        if let Some(last) = last {
            for p in 0..=last {
                let cols = &strata[p];
                entries += cols.len() * (p + 1);
                if entries > limits.matrix_entries {
                    return Err(Error::budget("matrix entry", limits.matrix_entries));
                }
                ranks.push(cols.len());
                boundaries.push(if p == 0 {
                    SparseMatrix::from_columns(1, cols.iter().map(|_| vec![(0, 1)]).collect())
                } else {
                    boundary_between(&strata[p - 1], cols)
                });
            }
        }
        let complete = last.is_none_or(|l| l as i64 == dim);
        Self::new(ranks, boundaries, complete)
    }

    /// Highest degree with a basis.
    pub fn top(&self) -> i64 {
        self.ranks.len() as i64 - 2
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn rank(&self, p: i64) -> usize {
        usize::try_from(p + 1).ok().and_then(|i| self.ranks.get(i)).copied().unwrap_or(0)
    }

    pub fn boundary(&self, p: i64) -> Option<&SparseMatrix> {
        usize::try_from(p).ok().and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[SparseMatrix] {
        &self.boundaries
    }

    fn factors(&self, p: i64) -> Option<&InvariantFactors> {
        let i = usize::try_from(p).ok()?;
        let b = self.boundaries.get(i)?;
        Some(self.snf[i].get_or_init(|| smith_normal_form(b)))
    }

    /// Highest degree whose reduced homology this complex determines.
    pub fn max_homology_degree(&self) -> i64 {
        if self.complete {
            self.top()
        } else {
            self.top() - 1
        }
    }

    /// Reduced homology in degree `p >= -1`.
    pub fn reduced_homology(&self, p: i64) -> Result<HomologyGroup> {
        if p < -1 {
            return Err(Error::InvalidInput(format!("homology degree {p} < -1")));
        }
        if p > self.max_homology_degree() {
            if self.complete {
                return Ok(HomologyGroup::zero(p));
            }
            return Err(Error::InvalidInput(format!(
                "degree {p} is beyond the truncated chain complex"
            )));
        }
        let rank_out = self.factors(p).map_or(0, InvariantFactors::rank);
        let incoming = self.factors(p + 1);
        let rank_in = incoming.map_or(0, InvariantFactors::rank);
        Ok(HomologyGroup {
            degree: p,
            free_rank: self.rank(p) - rank_out - rank_in,
            torsion: incoming.map(InvariantFactors::torsion).unwrap_or_default(),
        })
    }

    /// Reduced Betti number over `F_p` in degree `d`.
    pub fn betti_mod(&self, d: i64, p: u64) -> Result<usize> {
        if d > self.max_homology_degree() && !self.complete {
            return Err(Error::InvalidInput(format!(
                "degree {d} is beyond the truncated chain complex"
            )));
        }
        let out = self.boundary(d).map_or(0, |b| rank_mod_p(b, p));
        let inc = self.boundary(d + 1).map_or(0, |b| rank_mod_p(b, p));
        Ok(self.rank(d) - out - inc)
    }

    /// Compares, degree by degree, the rank of every boundary over `Q` and
    /// over each `F_p` with what the invariant factors predict.
    pub fn check_field_consistency(&self, primes: &[u64]) -> Result<()> {
        for (i, b) in self.boundaries.iter().enumerate() {
            let f = self.factors(i as i64).unwrap();
            for &p in primes {
                let direct = rank_mod_p(b, p);
                if direct != f.rank_mod(p) {
                    return Err(Error::Inconsistent(format!(
                        "∂_{i}: rank mod {p} is {direct}, invariant factors predict {}",
                        f.rank_mod(p)
                    )));
                }
            }
        }
        Ok(())
    }

    /// All reduced homology groups from degree -1 to the top, checked
    /// against the Euler characteristic.
    pub fn all_reduced_homology(&self) -> Result<Vec<HomologyGroup>> {
        if !self.complete {
            return Err(Error::InvalidInput("chain complex is truncated".into()));
        }
        let groups: Vec<HomologyGroup> = (-1..=self.top())
            .map(|p| self.reduced_homology(p))
            .collect::<Result<_>>()?;
        let chi_chains: i64 = (-1..=self.top())
            .map(|p| sign(p) * self.rank(p) as i64)
            .sum();
        let chi_homology: i64 = groups.iter().map(|g| sign(g.degree) * g.free_rank as i64).sum();
        if chi_chains != chi_homology {
            return Err(Error::Inconsistent(format!(
                "Euler characteristic {chi_chains} from chains vs {chi_homology} from homology"
            )));
        }
        Ok(groups)
    }
}

fn sign(p: i64) -> i64 {
    if p.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// One degree of reduced integral homology: `Z^free_rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn zero(degree: i64) -> Self {
        HomologyGroup {
            degree,
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.try_into().unwrap_or(u64::MAX)).collect()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn serialize_torsion<S: Serializer>(t: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for d in t {
        match u64::try_from(d) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}
