//! Smith normal form of sparse integer matrices.
//!
//! Pivots are chosen by smallest absolute value, ties broken by Markowitz
//! cost `(r-1)(c-1)` and then by position, so the reduction is deterministic.
//! Elimination is fraction-free: non-unit pivots are handled by Euclidean
//! remainder steps until the pivot divides its row and column. The diagonal
//! that falls out is then normalized into the divisibility chain.
//!
//! Arithmetic first runs in checked `i64`; on overflow the whole reduction is
//! redone over `BigInt`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::SparseMatrix;

/// Nonzero invariant factors `d_1 | d_2 | ...`; their count is the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors(pub Vec<BigUint>);

impl InvariantFactors {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Factors greater than one (the torsion they contribute).
    pub fn torsion(&self) -> Vec<BigUint> {
        self.0.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Number of factors not divisible by `p`, i.e. the rank mod `p`.
    pub fn rank_mod(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.0.iter().filter(|d| !(*d % &p).is_zero()).count()
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> InvariantFactors {
    let diag = match Reduction::<i64>::new(m).run() {
        Some(d) => d.into_iter().map(|v| BigUint::from(v.unsigned_abs())).collect(),
        None => Reduction::<BigInt>::new(m)
            .run()
            .expect("bigint reduction cannot overflow")
            .into_iter()
            .map(|v| v.magnitude().clone())
            .collect(),
    };
    InvariantFactors(normalize(diag))
}

/// Turns an arbitrary nonzero diagonal into the equivalent divisibility chain
/// via `(a, b) -> (gcd, lcm)`.
fn normalize(diag: Vec<BigUint>) -> Vec<BigUint> {
    let (ones, mut rest): (Vec<_>, Vec<_>) = diag.into_iter().partition(|d| d.is_one());
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if (&rest[j] % &rest[i]).is_zero() {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = ones;
    out.extend(rest.into_iter().filter(|d| !d.is_zero()));
    out.sort();
    out
}

trait Entry: Clone + Debug + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Truncating quotient, `None` on overflow.
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`, `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
}

struct Reduction<T: Entry> {
    rows: Vec<BTreeMap<u32, T>>,
    cols: Vec<BTreeSet<u32>>,
    live_rows: BTreeSet<u32>,
}

impl<T: Entry> Reduction<T> {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows: Vec<BTreeMap<u32, T>> = vec![BTreeMap::new(); m.nrows()];
        let mut cols: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); m.ncols()];
        let mut live_rows = BTreeSet::new();
        for (j, c) in m.columns().iter().enumerate() {
            for &(i, v) in c {
                rows[i as usize].insert(j as u32, T::from_i64(v));
                cols[j].insert(i);
                live_rows.insert(i);
            }
        }
        Reduction { rows, cols, live_rows }
    }

    fn pick_pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<(u32, u32, usize)> = None;
        for &i in &self.live_rows {
            let row = &self.rows[i as usize];
            let rc = row.len() - 1;
            for (&j, v) in row {
                let cost = rc * (self.cols[j as usize].len() - 1);
                let better = match best {
                    None => true,
                    Some((bi, bj, bcost)) => {
                        let bv = &self.rows[bi as usize][&bj];
                        v.abs_lt(bv) || (!bv.abs_lt(v) && cost < bcost)
                    }
                };
                if better {
                    best = Some((i, j, cost));
                    if cost == 0 && v.is_unit() {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// `row[target] -= q * row[src]`
    fn row_sub(&mut self, target: u32, src: u32, q: &T) -> Option<()> {
        let src_row: Vec<(u32, T)> = self.rows[src as usize]
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let tgt = &mut self.rows[target as usize];
        for (j, v) in src_row {
            let cur = tgt.get(&j).cloned().unwrap_or_else(|| T::from_i64(0));
            let nv = cur.sub_mul(q, &v)?;
            if nv.is_zero() {
                tgt.remove(&j);
                self.cols[j as usize].remove(&target);
            } else {
                tgt.insert(j, nv);
                self.cols[j as usize].insert(target);
            }
        }
        if tgt.is_empty() {
            self.live_rows.remove(&target);
        }
        Some(())
    }

    fn set(&mut self, i: u32, j: u32, v: T) {
        if v.is_zero() {
            self.rows[i as usize].remove(&j);
            self.cols[j as usize].remove(&i);
            if self.rows[i as usize].is_empty() {
                self.live_rows.remove(&i);
            }
        } else {
            self.rows[i as usize].insert(j, v);
            self.cols[j as usize].insert(i);
            self.live_rows.insert(i);
        }
    }

    fn run(mut self) -> Option<Vec<T>> {
        let mut diag = Vec::new();
        while let Some((pi, pj)) = self.pick_pivot() {
            let a = self.rows[pi as usize][&pj].clone();
            // Clear the pivot column with row operations.
            let others: Vec<u32> = self.cols[pj as usize].iter().copied().filter(|&i| i != pi).collect();
            for i in others {
                let b = self.rows[i as usize][&pj].clone();
                let q = b.quot(&a)?;
                self.row_sub(i, pi, &q)?;
            }
            if self.cols[pj as usize].len() > 1 {
                // Remainders smaller than the pivot are left; pick again.
                continue;
            }
            // The pivot column is now clean, so column operations only touch
            // the pivot row.
            let row: Vec<(u32, T)> = self.rows[pi as usize]
                .iter()
                .filter(|(j, _)| **j != pj)
                .map(|(j, v)| (*j, v.clone()))
                .collect();
            let mut clean = true;
            for (j, b) in row {
                let q = b.quot(&a)?;
                let r = b.sub_mul(&q, &a)?;
                if !r.is_zero() {
                    clean = false;
                }
                self.set(pi, j, r);
            }
            if clean {
                self.set(pi, pj, T::from_i64(0));
                diag.push(a);
            }
        }
        Some(diag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<u64> {
        smith_normal_form(&SparseMatrix::from_dense(rows))
            .0
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect()
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<u64>::new());
        assert_eq!(factors(&[vec![4, 6]]), vec![2]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 62;
        // det = big^2 - 9, gcd of entries 1
        let m = SparseMatrix::from_dense(&[vec![big, 3], vec![3, big]]);
        let snf = smith_normal_form(&m);
        let det = BigUint::from(1u8) << 124u32;
        assert!(snf.0[0].is_one());
        assert_eq!(snf.0[1], det - BigUint::from(9u8));
    }
}
