//! Level-by-level enumeration of families of pairwise disjoint labels.
//!
//! Every construction of the form "vertices are sets, simplices are
//! collections of pairwise disjoint sets whose union satisfies a predicate"
//! goes through here: r-tuplings, matching complexes and the FI complexes.
//! Level `p+1` is produced from level `p` by extending each family only with
//! larger-ranked vertices, so each level comes out lexicographically sorted.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bitmask::BitMask;
use crate::simplex::Simplex;

pub(crate) struct Overflow {
    pub completed: Vec<Vec<Simplex>>,
}

pub(crate) fn disjoint_families<F>(
    labels: &[BitMask],
    accept: F,
    budget: usize,
) -> Result<Vec<Vec<Simplex>>, Overflow>
where
    F: Fn(&BitMask) -> bool + Sync,
{
    let count = AtomicUsize::new(0);
    let mut strata: Vec<Vec<Simplex>> = Vec::new();

    let mut level: Vec<(Simplex, BitMask)> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| accept(l))
        .map(|(i, l)| (Simplex::from_sorted_slice(&[i as u32]), l.clone()))
        .collect();

    while !level.is_empty() {
        if count.fetch_add(level.len(), Ordering::Relaxed) + level.len() > budget {
            return Err(Overflow { completed: strata });
        }
        let next: Option<Vec<Vec<(Simplex, BitMask)>>> = level
            .par_iter()
            .map(|(s, union)| {
                if count.load(Ordering::Relaxed) > budget {
                    return None;
                }
                let last = *s.vertices().last().unwrap() as usize;
                let mut out = Vec::new();
                for (v, l) in labels.iter().enumerate().skip(last + 1) {
                    if !l.is_disjoint(union) {
                        continue;
                    }
                    let u = union.union(l);
                    if accept(&u) {
                        let mut ids = s.vertices().to_vec();
                        ids.push(v as u32);
                        out.push((Simplex::from_sorted_slice(&ids), u));
                    }
                }
                count.fetch_add(out.len(), Ordering::Relaxed);
                Some(out)
            })
            .collect();
        let Some(next) = next else {
            strata.push(level.into_iter().map(|(s, _)| s).collect());
            return Err(Overflow { completed: strata });
        };
        // The counter above was only a guard for early exit; the real tally is
        // taken at the top of the loop.
        let produced: usize = next.iter().map(Vec::len).sum();
        count.fetch_sub(produced, Ordering::Relaxed);
        strata.push(level.into_iter().map(|(s, _)| s).collect());
        level = next.into_iter().flatten().collect();
    }
    Ok(strata)
}
