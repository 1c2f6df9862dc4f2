//! Best-effort triviality test for the fundamental group.
//!
//! The edge-path presentation is built on a BFS spanning tree: one generator
//! per non-tree edge, one relator per 2-simplex. Tietze moves then eliminate
//! generators that occur exactly once in some relator. Success means the
//! group is trivial; failure proves nothing on its own, so a nonzero `H_1` is
//! required before claiming the group is nontrivial.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::limits::Limits;

use super::connectivity_up_to;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pi1Status {
    TrivialCertified,
    NontrivialCertified,
    Inconclusive,
    NotAttempted,
}

/// A finite group presentation; letters are `±(generator + 1)`.
#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    /// Edge-path presentation of a connected complex.
    pub fn edge_path(x: &SimplicialComplex) -> Result<Self> {
        let two = x.skeleton(2)?;
        let strata = two.strata()?;
        let edges: &[crate::Simplex] = strata.get(1).map_or(&[], |v| v.as_slice());
        let triangles: &[crate::Simplex] = strata.get(2).map_or(&[], |v| v.as_slice());

        let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
        for e in edges {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut tree: std::collections::HashSet<(u32, u32)> = Default::default();
        let mut seen: std::collections::HashSet<u32> = Default::default();
        if let Some(&root) = x.vertices().first() {
            let mut queue = VecDeque::from([root]);
            seen.insert(root);
            while let Some(v) = queue.pop_front() {
                let mut nbrs = adj.get(&v).cloned().unwrap_or_default();
                nbrs.sort_unstable();
                for w in nbrs {
                    if seen.insert(w) {
                        tree.insert((v.min(w), v.max(w)));
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut gen_of: HashMap<(u32, u32), i32> = HashMap::new();
        for e in edges {
            let key = (e.vertices()[0], e.vertices()[1]);
            if !tree.contains(&key) {
                let g = gen_of.len() as i32 + 1;
                gen_of.insert(key, g);
            }
        }
        let letter = |a: u32, b: u32| -> Option<i32> {
            gen_of.get(&(a, b)).copied()
        };
        let relators = triangles
            .iter()
            .map(|t| {
                let (a, b, c) = (t.vertices()[0], t.vertices()[1], t.vertices()[2]);
                // a -> b -> c -> a
                let mut w = Vec::new();
                w.extend(letter(a, b));
                w.extend(letter(b, c));
                w.extend(letter(a, c).map(|g| -g));
                w
            })
            .collect();
        Ok(Presentation {
            generators: gen_of.len(),
            relators,
        })
    }

    /// Eliminates generators with bounded Tietze moves. Returns `true` when
    /// every generator was eliminated.
    pub fn simplify(&mut self, step_budget: usize) -> bool {
        let mut remaining = self.generators;
        let length_cap = 1_000_000usize;
        for _ in 0..step_budget {
            for r in &mut self.relators {
                reduce(r);
            }
            self.relators.retain(|r| !r.is_empty());
            self.relators.sort();
            self.relators.dedup();
            if remaining == 0 {
                return true;
            }
            // Shortest relator in which some generator occurs exactly once.
            let mut best: Option<(usize, usize, i32)> = None;
            for (ri, r) in self.relators.iter().enumerate() {
                if best.is_some_and(|(_, len, _)| len <= r.len()) {
                    continue;
                }
                let mut counts: HashMap<i32, usize> = HashMap::new();
                for &l in r {
                    *counts.entry(l.abs()).or_insert(0) += 1;
                }
                if let Some(g) = r.iter().map(|l| l.abs()).find(|g| counts[g] == 1) {
                    best = Some((ri, r.len(), g));
                }
            }
            let Some((ri, _, g)) = best else {
                return false;
            };
            let rel = self.relators.swap_remove(ri);
            let pos = rel.iter().position(|l| l.abs() == g).unwrap();
            let exp = rel[pos].signum();
            // rel = u g^exp v  =>  g^exp = u^-1 v^-1 (cyclically: v u = g^-exp)
            let mut rest: Vec<i32> = rel[pos + 1..].to_vec();
            rest.extend_from_slice(&rel[..pos]);
            // g^exp * rest = 1  =>  g^exp = rest^-1
            let inv_rest: Vec<i32> = rest.iter().rev().map(|l| -l).collect();
            let image = if exp > 0 { inv_rest } else { rest };
            let image_inv: Vec<i32> = image.iter().rev().map(|l| -l).collect();
            let mut total = 0usize;
            for r in &mut self.relators {
                if !r.iter().any(|l| l.abs() == g) {
                    total += r.len();
                    continue;
                }
                let mut out = Vec::with_capacity(r.len() + image.len());
                for &l in r.iter() {
                    if l == g {
                        out.extend_from_slice(&image);
                    } else if l == -g {
                        out.extend_from_slice(&image_inv);
                    } else {
                        out.push(l);
                    }
                }
                total += out.len();
                *r = out;
            }
            remaining -= 1;
            if total > length_cap {
                return false;
            }
        }
        remaining == 0
    }
}

/// Free and cyclic reduction in place.
fn reduce(w: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == -out[j - 1] {
        i += 1;
        j -= 1;
    }
    *w = out[i..j].to_vec();
}

/// Fundamental-group status of a complex. Requires a non-empty connected
/// complex; anything else is reported as not attempted.
pub fn pi1_triviality(x: &SimplicialComplex, limits: &Limits) -> Result<Pi1Status> {
    if x.is_empty() {
        return Ok(Pi1Status::NotAttempted);
    }
    let h0 = connectivity_up_to(x, 0, limits)?;
    if !h0.satisfies(0) {
        return Ok(Pi1Status::NotAttempted);
    }
    let mut pres = Presentation::edge_path(x)?;
    if pres.simplify(limits.tietze_steps) {
        return Ok(Pi1Status::TrivialCertified);
    }
    let h1 = connectivity_up_to(x, 1, limits)?;
    if !h1.satisfies(1) {
        return Ok(Pi1Status::NontrivialCertified);
    }
    Ok(Pi1Status::Inconclusive)
}
