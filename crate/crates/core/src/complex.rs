//! Finite simplicial complexes stored facet-first.
//!
//! A complex keeps its inclusion-maximal simplices in lexicographic order plus
//! a bitset index for membership queries. The full face strata are only
//! materialized when someone asks for them, and that materialization is
//! bounded by the complex's simplex budget.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bitmask::BitMask;
use crate::error::{Error, Result};
use crate::limits::{Limits, DEFAULT_SIMPLEX_BUDGET};
use crate::simplex::{FVector, Simplex};
use crate::table::VertexTable;

pub struct SimplicialComplex {
    vertices: Vec<u32>,
    facets: Vec<Simplex>,
    bits: usize,
    masks: Vec<BitMask>,
    by_vertex: HashMap<u32, Vec<usize>>,
    simplex_budget: usize,
    strata: OnceLock<Vec<Vec<Simplex>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        let strata = OnceLock::new();
        if let Some(s) = self.strata.get() {
            let _ = strata.set(s.clone());
        }
        SimplicialComplex {
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            bits: self.bits,
            masks: self.masks.clone(),
            by_vertex: self.by_vertex.clone(),
            simplex_budget: self.simplex_budget,
            strata,
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertices.len())
            .field("facets", &self.facets)
            .finish()
    }
}

/// Which factor of a join a vertex came from, and its id there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JoinLabel(pub u8, pub u32);

impl SimplicialComplex {
    /// The complex whose only simplex is the empty one.
    pub fn empty() -> Self {
        Self::from_maximal(Vec::new(), DEFAULT_SIMPLEX_BUDGET)
    }

    /// Downward closure of the given vertex sets.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = u32>,
    {
        Self::from_facets_with(None, facets, &Limits::default())
    }

    /// Downward closure of `facets`. When `vertex_count` is given, every id in
    /// `0..vertex_count` is a vertex (isolated ones become singleton facets)
    /// and larger ids are rejected.
    pub fn from_facets_with<I, F>(
        vertex_count: Option<u32>,
        facets: I,
        limits: &Limits,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = u32>,
    {
        if let Some(n) = vertex_count {
            if n > limits.vertex_cap {
                return Err(Error::VertexCap {
                    id: n as u64,
                    cap: limits.vertex_cap,
                });
            }
        }
        let mut out: Vec<Simplex> = Vec::new();
        let mut has_empty = false;
        for f in facets {
            let s = Simplex::new(f)?;
            for &v in s.vertices() {
                if v >= limits.vertex_cap {
                    return Err(Error::VertexCap {
                        id: v as u64,
                        cap: limits.vertex_cap,
                    });
                }
                if let Some(n) = vertex_count {
                    if v >= n {
                        return Err(Error::UndeclaredVertex { id: v, count: n });
                    }
                }
            }
            if s.is_empty() {
                has_empty = true;
            } else {
                out.push(s);
            }
        }
        if let Some(n) = vertex_count {
            let seen: HashSet<u32> = out.iter().flat_map(|s| s.vertices().iter().copied()).collect();
            out.extend((0..n).filter(|v| !seen.contains(v)).map(|v| Simplex::from_sorted_slice(&[v])));
        }
        if has_empty && !out.is_empty() {
            return Err(Error::InvalidInput(
                "the empty set can only be a facet of a complex without vertices".into(),
            ));
        }
        Ok(Self::from_maximal(maximalize(out), limits.simplices))
    }

    pub(crate) fn from_simplices(simplices: Vec<Simplex>, budget: usize) -> Self {
        Self::from_maximal(maximalize(simplices), budget)
    }

    /// `facets` must already be pairwise incomparable.
    fn from_maximal(mut facets: Vec<Simplex>, simplex_budget: usize) -> Self {
        facets.retain(|f| !f.is_empty());
        facets.sort();
        facets.dedup();
        let mut vertices: Vec<u32> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let bits = vertices.last().map_or(0, |&v| v as usize + 1);
        let masks: Vec<BitMask> = facets.iter().map(|f| f.mask(bits)).collect();
        let mut by_vertex: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            for &v in f.vertices() {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        SimplicialComplex {
            vertices,
            facets,
            bits,
            masks,
            by_vertex,
            simplex_budget,
            strata: OnceLock::new(),
        }
    }

    /// Builds a complex from its complete strata (level `d` holds exactly the
    /// `d`-simplices, each level sorted). Facets are read off as the simplices
    /// that are not a face of the next level.
    pub(crate) fn from_strata(strata: Vec<Vec<Simplex>>, budget: usize) -> Self {
        let mut facets = Vec::new();
        for d in 0..strata.len() {
            let covered: HashSet<Simplex> = match strata.get(d + 1) {
                Some(up) => up
                    .iter()
                    .flat_map(|s| (0..s.len()).map(move |i| s.face(i)))
                    .collect(),
                None => HashSet::new(),
            };
            facets.extend(strata[d].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        let c = Self::from_maximal(facets, budget);
        let mut strata = strata;
        while strata.last().is_some_and(Vec::is_empty) {
            strata.pop();
        }
        let _ = c.strata.set(strata);
        c
    }

    /// The full simplex on vertices `0..=n`.
    pub fn simplex(n: u32) -> Self {
        Self::from_maximal(
            vec![Simplex::from_sorted((0..=n).collect())],
            DEFAULT_SIMPLEX_BUDGET,
        )
    }

    /// The boundary of the `n`-simplex: all proper faces of `{0..=n}`.
    pub fn boundary(n: u32) -> Self {
        let full = Simplex::from_sorted((0..=n).collect());
        let facets = if n == 0 {
            Vec::new()
        } else {
            (0..=n as usize).map(|i| full.face(i)).collect()
        };
        Self::from_maximal(facets, DEFAULT_SIMPLEX_BUDGET)
    }

    pub fn with_simplex_budget(mut self, budget: usize) -> Self {
        self.simplex_budget = budget;
        self
    }

    pub fn simplex_budget(&self) -> usize {
        self.simplex_budget
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// One past the largest vertex id.
    pub fn vertex_bound(&self) -> u32 {
        self.bits as u32
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// True when the complex has no vertices (only the empty simplex).
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    /// Membership of an arbitrary vertex set. The empty simplex belongs to
    /// every complex.
    pub fn contains(&self, s: &Simplex) -> bool {
        let Some(&first) = s.vertices().first() else {
            return true;
        };
        if *s.vertices().last().unwrap() as usize >= self.bits {
            return false;
        }
        self.contains_mask_from(first, &s.mask(self.bits))
    }

    /// Membership of a vertex set given as a bitmask over this complex's ids.
    pub fn contains_mask(&self, m: &BitMask) -> bool {
        match m.first() {
            None => true,
            Some(first) => self.contains_mask_from(first, m),
        }
    }

    fn contains_mask_from(&self, first: u32, m: &BitMask) -> bool {
        self.by_vertex
            .get(&first)
            .is_some_and(|fs| fs.iter().any(|&i| m.is_subset(&self.masks[i])))
    }

    /// Facets containing `s`.
    pub fn star_facets<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        let m = s.mask(self.bits.max(1));
        let cand: Box<dyn Iterator<Item = usize>> = match s.vertices().first() {
            None => Box::new(0..self.facets.len()),
            Some(v) => Box::new(self.by_vertex.get(v).into_iter().flatten().copied()),
        };
        cand.filter(move |&i| m.is_subset(&self.masks[i]))
            .map(move |i| &self.facets[i])
    }

    /// All simplices, grouped by dimension, each group sorted
    /// lexicographically. Materialized once and cached.
    pub fn strata(&self) -> Result<&[Vec<Simplex>]> {
        if let Some(s) = self.strata.get() {
            return Ok(s);
        }
        let s = self.materialize()?;
        let _ = self.strata.set(s);
        Ok(self.strata.get().unwrap())
    }

    fn materialize(&self) -> Result<Vec<Vec<Simplex>>> {
        let dim = self.dim();
        if dim < 0 {
            return Ok(Vec::new());
        }
        if self.facets.iter().any(|f| f.len() >= 40) {
            return Err(Error::budget("simplex", self.simplex_budget));
        }
        let mut levels: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim as usize + 1];
        let mut total = 0usize;
        for f in &self.facets {
            let mut over = false;
            f.for_each_nonempty_subset(|s| {
                if over {
                    return;
                }
                let d = s.len() - 1;
                if levels[d].insert(s) {
                    total += 1;
                    over = total > self.simplex_budget;
                }
            });
            if over {
                return Err(Error::budget("simplex", self.simplex_budget));
            }
        }
        Ok(levels
            .into_iter()
            .map(|l| {
                let mut v: Vec<Simplex> = l.into_iter().collect();
                v.sort();
                v
            })
            .collect())
    }

    /// The `p`-simplices. `p = -1` gives the empty simplex for a non-empty
    /// complex; dimensions beyond the top give nothing.
    pub fn faces(&self, p: i64) -> Result<Vec<Simplex>> {
        if p < -1 {
            return Err(Error::InvalidInput(format!("face dimension {p} < -1")));
        }
        if p == -1 {
            return Ok(if self.is_empty() { Vec::new() } else { vec![Simplex::empty()] });
        }
        Ok(self.strata()?.get(p as usize).cloned().unwrap_or_default())
    }

    pub fn f_vector(&self) -> Result<FVector> {
        Ok(FVector(self.strata()?.iter().map(Vec::len).collect()))
    }

    /// Total number of non-empty simplices.
    pub fn simplex_count(&self) -> Result<usize> {
        Ok(self.strata()?.iter().map(Vec::len).sum())
    }

    /// Simplices disjoint from `s` whose union with `s` is in the complex.
    /// Vertex ids are inherited.
    pub fn link(&self, s: &Simplex) -> Result<Self> {
        if s.is_empty() {
            return Ok(self.clone());
        }
        if !self.contains(s) {
            return Err(Error::NotASimplex(s.clone()));
        }
        let facets: Vec<Simplex> = self.star_facets(s).map(|f| f.difference(s)).collect();
        // Distinct facets through s stay distinct and incomparable once s is
        // removed.
        Ok(Self::from_maximal(facets, self.simplex_budget))
    }

    /// All simplices of dimension at most `d`.
    pub fn skeleton(&self, d: i64) -> Result<Self> {
        if d < 0 {
            return Err(Error::InvalidInput(format!("skeleton dimension {d} < 0")));
        }
        if d >= self.dim() {
            return Ok(self.clone());
        }
        let k = d as usize + 1;
        let mut out: HashSet<Simplex> = HashSet::new();
        for f in &self.facets {
            if f.len() <= k {
                out.insert(f.clone());
            } else {
                for_each_k_subset(f.vertices(), k, |s| {
                    out.insert(s);
                });
                if out.len() > self.simplex_budget {
                    return Err(Error::budget("simplex", self.simplex_budget));
                }
            }
        }
        Ok(Self::from_simplices(out.into_iter().collect(), self.simplex_budget))
    }

    /// Join with `other`. Both factors are compacted first: the result's
    /// vertex `i` is this complex's `i`-th vertex for `i < vertex_count()`,
    /// then the other factor's vertices in rank order.
    pub fn join(&self, other: &Self) -> Result<(Self, VertexTable<JoinLabel>)> {
        let (a, _) = self.compact();
        let (b, _) = other.compact();
        let shift = a.vertex_count() as u32;
        let mut labels: Vec<JoinLabel> = self.vertices.iter().map(|&v| JoinLabel(0, v)).collect();
        labels.extend(other.vertices.iter().map(|&v| JoinLabel(1, v)));
        let shifted: Vec<Simplex> = b
            .facets
            .iter()
            .map(|f| Simplex::from_sorted(f.vertices().iter().map(|v| v + shift).collect()))
            .collect();
        let budget = self.simplex_budget.min(other.simplex_budget);
        let facets: Vec<Simplex> = match (a.is_empty(), b.is_empty()) {
            (true, _) => shifted,
            (_, true) => a.facets.clone(),
            _ => {
                if a.facets.len().saturating_mul(shifted.len()) > budget {
                    return Err(Error::budget("simplex", budget));
                }
                a.facets
                    .iter()
                    .flat_map(|x| shifted.iter().map(move |y| x.union(y)))
                    .collect()
            }
        };
        Ok((Self::from_maximal(facets, budget), VertexTable::new(labels)))
    }

    /// Order complex of the simplices with at least `m` vertices, ordered by
    /// inclusion. Vertex `i` of the result is the `i`-th such simplex in
    /// lexicographic order.
    pub fn xm_complex(&self, m: usize) -> Result<(Self, VertexTable<Simplex>)> {
        if m < 1 {
            return Err(Error::InvalidInput("X_m needs m >= 1".into()));
        }
        let strata = self.strata()?;
        let elems: Vec<Simplex> = strata.iter().skip(m - 1).flatten().cloned().collect();
        let table = VertexTable::ranked(elems);
        let n = table.len();
        let labels = table.labels();

        // up[i]: ranks of strict supersets of element i.
        let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                if b.len() > a.len() && a.is_subset(b) {
                    up[i].push(j as u32);
                }
            }
        }

        // Chains grow upward; chain lists are rank-sorted before storing.
        let budget = self.simplex_budget;
        let mut levels: Vec<Vec<Simplex>> = Vec::new();
        let mut total = 0usize;
        let mut frontier: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
        while !frontier.is_empty() {
            total += frontier.len();
            if total > budget {
                return Err(Error::budget("simplex", budget));
            }
            let mut next = Vec::new();
            for chain in &frontier {
                let top = *chain.last().unwrap() as usize;
                for &j in &up[top] {
                    let mut c = chain.clone();
                    c.push(j);
                    next.push(c);
                }
            }
            let mut level: Vec<Simplex> = frontier
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    Simplex::from_sorted_slice(&c)
                })
                .collect();
            level.sort();
            levels.push(level);
            frontier = next;
        }
        Ok((Self::from_strata(levels, budget), table))
    }

    /// First barycentric subdivision.
    pub fn barycentric(&self) -> Result<(Self, VertexTable<Simplex>)> {
        self.xm_complex(1)
    }

    /// Relabels vertices to `0..vertex_count` by rank. The table maps new ids
    /// back to the original ones.
    pub fn compact(&self) -> (Self, VertexTable<u32>) {
        let rank: HashMap<u32, u32> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Simplex::from_sorted(f.vertices().iter().map(|v| rank[v]).collect()))
            .collect();
        (
            Self::from_maximal(facets, self.simplex_budget),
            VertexTable::new(self.vertices.clone()),
        )
    }

    /// True when the vertex ids are exactly `0..vertex_count`.
    pub fn is_compact(&self) -> bool {
        self.bits == self.vertices.len()
    }

    /// Relabels vertices through an injective map.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        let facets = self
            .facets
            .iter()
            .map(|s| s.map(&f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_maximal(facets, self.simplex_budget))
    }
}

/// Drops duplicates and every set contained in another one.
fn maximalize(mut sets: Vec<Simplex>) -> Vec<Simplex> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Simplex> = Vec::new();
    let mut by_vertex: HashMap<u32, Vec<usize>> = HashMap::new();
    for s in sets {
        if s.is_empty() {
            continue;
        }
        let first = s.vertices()[0];
        let covered = by_vertex
            .get(&first)
            .is_some_and(|ks| ks.iter().any(|&i| s.is_subset(&kept[i])));
        if !covered {
            for &v in s.vertices() {
                by_vertex.entry(v).or_default().push(kept.len());
            }
            kept.push(s);
        }
    }
    kept
}

pub(crate) fn for_each_k_subset(items: &[u32], k: usize, mut f: impl FnMut(Simplex)) {
    fn rec(items: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(Simplex)) {
        if cur.len() == k {
            f(Simplex::from_sorted_slice(cur));
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut f);
}
