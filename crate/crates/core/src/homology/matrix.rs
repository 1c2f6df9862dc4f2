use std::collections::BTreeMap;

/// Column-major sparse integer matrix. Each column keeps its nonzero entries
/// sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Builds from columns of `(row, value)` pairs; zeros are dropped and
    /// repeated rows summed.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for (r, v) in c {
                    assert!((r as usize) < nrows, "row {r} out of range");
                    *acc.entry(r).or_insert(0) += v;
                }
                acc.into_iter().filter(|(_, v)| *v != 0).collect()
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i as u32, rows[i][j]))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                out[i as usize][j] = v;
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.cols
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                cols[i as usize].push((j as u32, v));
            }
        }
        SparseMatrix {
            nrows: self.ncols(),
            cols,
        }
    }

    /// `self * other`, with overflow checked. `None` on overflow.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch");
        let mut cols = Vec::with_capacity(other.ncols());
        for c in &other.cols {
            let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
            for &(k, b) in c {
                for &(i, a) in &self.cols[k as usize] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            cols.push(acc.into_iter().filter(|(_, v)| *v != 0).collect());
        }
        Some(SparseMatrix {
            nrows: self.nrows,
            cols,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// Rank over the prime field `F_p`, by sparse column reduction.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be at least 2");
    let norm = |v: i64| v.rem_euclid(p as i64) as u64;
    // pivot row -> reduced column with that lowest (largest) row
    let mut pivots: BTreeMap<u32, Vec<(u32, u64)>> = BTreeMap::new();
    for c in m.columns() {
        let mut col: Vec<(u32, u64)> = c
            .iter()
            .map(|&(r, v)| (r, norm(v)))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(low, lv)) = col.last() {
            let Some(pc) = pivots.get(&low) else {
                break;
            };
            let pv = pc.last().unwrap().1;
            // col -= (lv / pv) * pc
            let f = lv * inv_mod(pv, p) % p;
            col = axpy_mod(&col, pc, p - f, p);
        }
        if let Some(&(low, _)) = col.last() {
            pivots.insert(low, col);
        }
    }
    pivots.len()
}

fn axpy_mod(a: &[(u32, u64)], b: &[(u32, u64)], f: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (r, v) = match (a.get(i), b.get(j)) {
            (Some(&(ra, va)), Some(&(rb, vb))) if ra == rb => {
                i += 1;
                j += 1;
                (ra, (va + f * vb) % p)
            }
            (Some(&(ra, va)), Some(&(rb, _))) if ra < rb => {
                i += 1;
                (ra, va)
            }
            (_, Some(&(rb, vb))) => {
                j += 1;
                (rb, f * vb % p)
            }
            (Some(&(ra, va)), None) => {
                i += 1;
                (ra, va)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((r, v));
        }
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_round_trip_and_product() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, 3]]);
        assert_eq!(a.to_dense(), vec![vec![1, 2], vec![0, 3]]);
        let p = a.checked_mul(&a).unwrap();
        assert_eq!(p.to_dense(), vec![vec![1, 8], vec![0, 9]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 0], vec![2, 3]]);
    }

    #[test]
    fn ranks_mod_p() {
        let m = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
        let m = SparseMatrix::from_dense(&[vec![1, 1, 2], vec![1, 1, 2], vec![0, 1, 1]]);
        assert_eq!(rank_mod_p(&m, 7), 2);
    }
}
