//! Isomorphism of simplicial complexes by invariant-guided backtracking.
//!
//! Vertices are first colored by iterated refinement of their facet
//! incidences. The search then assigns vertices in a fixed order, only to
//! vertices of the same color, and prunes any partial map under which some
//! facet's mapped part no longer fits inside a facet of the same size on the
//! other side. A node budget bounds the search; running out gives
//! [`IsoOutcome::Inconclusive`], never a wrong answer.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};

use crate::bitmask::BitMask;
use crate::complex::SimplicialComplex;
use crate::simplex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// Vertex bijection from the first complex's ids to the second's.
    Isomorphic(BTreeMap<u32, u32>),
    NotIsomorphic,
    Inconclusive,
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Compacted complex plus the incidence data the search needs.
struct Prepared {
    n: usize,
    ids: Vec<u32>,
    facets: Vec<Simplex>,
    masks: Vec<BitMask>,
    /// facet indices through each vertex
    star: Vec<Vec<usize>>,
    colors: Vec<u64>,
}

impl Prepared {
    fn new(x: &SimplicialComplex) -> Self {
        let (c, table) = x.compact();
        let n = c.vertex_count();
        let facets = c.facets().to_vec();
        let masks = facets.iter().map(|f| f.mask(n)).collect();
        let mut star = vec![Vec::new(); n];
        for (i, f) in facets.iter().enumerate() {
            for &v in f.vertices() {
                star[v as usize].push(i);
            }
        }
        let colors = refine(n, &facets, &star);
        Prepared {
            n,
            ids: table.labels().to_vec(),
            facets,
            masks,
            star,
            colors,
        }
    }

    fn fits(&self, part: &BitMask, size: usize) -> bool {
        let Some(first) = part.first() else {
            return true;
        };
        self.star[first as usize]
            .iter()
            .any(|&i| self.facets[i].len() == size && part.is_subset(&self.masks[i]))
    }
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Color refinement on facet incidences, run until the number of classes
/// stops growing.
fn refine(n: usize, facets: &[Simplex], star: &[Vec<usize>]) -> Vec<u64> {
    let mut colors: Vec<u64> = (0..n)
        .map(|v| {
            let mut sizes: Vec<usize> = star[v].iter().map(|&i| facets[i].len()).collect();
            sizes.sort_unstable();
            hash_of(&sizes)
        })
        .collect();
    let mut classes = colors.iter().collect::<HashSet<_>>().len();
    for _ in 0..n {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut sig: Vec<(usize, Vec<u64>)> = star[v]
                    .iter()
                    .map(|&i| {
                        let mut cs: Vec<u64> = facets[i]
                            .vertices()
                            .iter()
                            .filter(|&&w| w as usize != v)
                            .map(|&w| colors[w as usize])
                            .collect();
                        cs.sort_unstable();
                        (facets[i].len(), cs)
                    })
                    .collect();
                sig.sort();
                hash_of(&(colors[v], sig))
            })
            .collect();
        let c = next.iter().collect::<HashSet<_>>().len();
        colors = next;
        if c == classes {
            break;
        }
        classes = c;
    }
    colors
}

/// An isomorphism-invariant fingerprint: equal for isomorphic complexes.
pub fn invariant_key(x: &SimplicialComplex) -> u64 {
    let p = Prepared::new(x);
    let mut sizes: Vec<usize> = p.facets.iter().map(Simplex::len).collect();
    sizes.sort_unstable();
    let mut cs = p.colors.clone();
    cs.sort_unstable();
    hash_of(&(p.n, sizes, cs))
}

pub fn is_isomorphic(x: &SimplicialComplex, y: &SimplicialComplex, node_budget: u64) -> IsoOutcome {
    let a = Prepared::new(x);
    let b = Prepared::new(y);
    if a.n != b.n || a.facets.len() != b.facets.len() {
        return IsoOutcome::NotIsomorphic;
    }
    let sizes = |p: &Prepared| {
        let mut s: Vec<usize> = p.facets.iter().map(Simplex::len).collect();
        s.sort_unstable();
        s
    };
    if sizes(&a) != sizes(&b) {
        return IsoOutcome::NotIsomorphic;
    }
    let hist = |p: &Prepared| {
        let mut c = p.colors.clone();
        c.sort_unstable();
        c
    };
    if hist(&a) != hist(&b) {
        return IsoOutcome::NotIsomorphic;
    }

    let order = search_order(&a);
    let mut search = Search {
        a: &a,
        b: &b,
        order,
        fwd: vec![u32::MAX; a.n],
        bwd: vec![u32::MAX; b.n],
        nodes: 0,
        budget: node_budget,
    };
    match search.extend(0) {
        Some(true) => {
            let map: Vec<u32> = search.fwd.clone();
            if !verify(&a, &b, &map) {
                return IsoOutcome::NotIsomorphic;
            }
            IsoOutcome::Isomorphic(
                (0..a.n)
                    .map(|v| (a.ids[v], b.ids[map[v] as usize]))
                    .collect(),
            )
        }
        Some(false) => IsoOutcome::NotIsomorphic,
        None => IsoOutcome::Inconclusive,
    }
}

/// Smallest color class first, then always the vertex sharing the most
/// facets with those already placed.
fn search_order(a: &Prepared) -> Vec<usize> {
    let mut class_size: BTreeMap<u64, usize> = BTreeMap::new();
    for c in &a.colors {
        *class_size.entry(*c).or_insert(0) += 1;
    }
    let mut placed = vec![false; a.n];
    let mut touch = vec![0usize; a.n];
    let mut order = Vec::with_capacity(a.n);
    for _ in 0..a.n {
        let v = (0..a.n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(touch[v]), class_size[&a.colors[v]], v))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &i in &a.star[v] {
            for &w in a.facets[i].vertices() {
                touch[w as usize] += 1;
            }
        }
    }
    order
}

struct Search<'a> {
    a: &'a Prepared,
    b: &'a Prepared,
    order: Vec<usize>,
    fwd: Vec<u32>,
    bwd: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `Some(found)`, or `None` when the budget ran out.
    fn extend(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let v = self.order[depth];
        for w in 0..self.b.n {
            if self.bwd[w] != u32::MAX || self.b.colors[w] != self.a.colors[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.fwd[v] = w as u32;
            self.bwd[w] = v as u32;
            if self.consistent(v, w) {
                match self.extend(depth + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.fwd[v] = u32::MAX;
            self.bwd[w] = u32::MAX;
        }
        Some(false)
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        let image = |f: &Simplex, map: &[u32], n: usize| {
            let mut m = BitMask::with_capacity(n);
            for &u in f.vertices() {
                let t = map[u as usize];
                if t != u32::MAX {
                    m.insert(t);
                }
            }
            m
        };
        self.a.star[v].iter().all(|&i| {
            let f = &self.a.facets[i];
            self.b.fits(&image(f, &self.fwd, self.b.n), f.len())
        }) && self.b.star[w].iter().all(|&i| {
            let g = &self.b.facets[i];
            self.a.fits(&image(g, &self.bwd, self.a.n), g.len())
        })
    }
}

fn verify(a: &Prepared, b: &Prepared, map: &[u32]) -> bool {
    let targets: HashSet<&Simplex> = b.facets.iter().collect();
    let mut seen: HashSet<Simplex> = HashSet::new();
    for f in &a.facets {
        let Ok(img) = f.map(|v| map[v as usize]) else {
            return false;
        };
        if !targets.contains(&img) || !seen.insert(img) {
            return false;
        }
    }
    seen.len() == b.facets.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflexive_with_identity() {
        let b = SimplicialComplex::boundary(3);
        match is_isomorphic(&b, &b, 10_000) {
            IsoOutcome::Isomorphic(m) => assert!(m.iter().all(|(a, b)| a == b)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn differing_f_vectors() {
        let e = SimplicialComplex::simplex(1);
        let pts = SimplicialComplex::boundary(1);
        assert_eq!(is_isomorphic(&e, &pts, 10_000), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn relabeled_cycle() {
        let c = SimplicialComplex::from_facets([[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
        let d = SimplicialComplex::from_facets([[10, 30], [30, 50], [50, 20], [20, 40], [40, 10]]).unwrap();
        assert!(is_isomorphic(&c, &d, 10_000).is_isomorphic());
        assert_eq!(invariant_key(&c), invariant_key(&d));
        // two triangles vs a hexagon: same degrees, not isomorphic
        let hex = SimplicialComplex::from_facets((0..6).map(|i| [i, (i + 1) % 6])).unwrap();
        let tri2 = SimplicialComplex::from_facets([[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        assert_eq!(is_isomorphic(&hex, &tri2, 10_000), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let hex = SimplicialComplex::from_facets((0..6).map(|i| [i, (i + 1) % 6])).unwrap();
        assert_eq!(is_isomorphic(&hex, &hex, 1), IsoOutcome::Inconclusive);
    }
}
