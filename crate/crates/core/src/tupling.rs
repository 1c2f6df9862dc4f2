//! r-tuplings, matching complexes, and the identities relating them.
//!
//! The r-tupling `D^r(X)` has the (r-1)-simplices of `X` as vertices; a
//! collection of them is a simplex when their union has `(p+1)r` elements
//! and is itself a simplex of `X`. The cardinality clause forces pairwise
//! disjointness, so the enumeration only ever tests disjointness and one
//! membership query per candidate.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitmask::BitMask;
use crate::complex::{for_each_k_subset, SimplicialComplex};
use crate::enumerate::{disjoint_families, Overflow};
use crate::error::{Error, Result};
use crate::io::Graph;
use crate::iso::{is_isomorphic, IsoOutcome};
use crate::limits::Limits;
use crate::report::Verdict;
use crate::simplex::{FVector, Simplex};
use crate::table::VertexTable;

/// `D^r(source)` together with the labels of its vertices.
#[derive(Clone, Debug)]
pub struct TuplingComplex {
    pub complex: SimplicialComplex,
    pub source: SimplicialComplex,
    pub r: usize,
    /// vertex id of `complex` ↦ the (r-1)-simplex of `source` it stands for
    pub delta_table: VertexTable<Simplex>,
}

/// The r-tupling of `x`.
///
/// Vertex ids are lexicographic ranks of the label simplices. For `r = 1`
/// the result is `x` itself, compacted if its ids have gaps.
pub fn r_tuple(x: &SimplicialComplex, r: usize, limits: &Limits) -> Result<TuplingComplex> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    if r == 1 {
        let (complex, table) = x.compact();
        let labels = table
            .labels()
            .iter()
            .map(|&v| Simplex::from_sorted_slice(&[v]))
            .collect();
        return Ok(TuplingComplex {
            complex: complex.with_simplex_budget(limits.simplices),
            source: x.clone(),
            r,
            delta_table: VertexTable::new(labels),
        });
    }

    let table = VertexTable::ranked(faces_of_size(x, r));
    let bits = x.vertex_bound() as usize;
    let masks: Vec<BitMask> = table.labels().iter().map(|s| s.mask(bits)).collect();
    let budget = limits.simplices;
    let strata = disjoint_families(&masks, |u| x.contains_mask(u), budget).map_err(
        |Overflow { completed }| Error::TuplingBudget {
            limit: limits.simplices as u64,
            completed,
        },
    )?;
    Ok(TuplingComplex {
        complex: SimplicialComplex::from_strata(strata, budget),
        source: x.clone(),
        r,
        delta_table: table,
    })
}

/// All simplices of `x` with exactly `k` vertices, without materializing the
/// other strata.
pub(crate) fn faces_of_size(x: &SimplicialComplex, k: usize) -> Vec<Simplex> {
    let mut out = BTreeSet::new();
    for f in x.facets() {
        if f.len() >= k {
            for_each_k_subset(f.vertices(), k, |s| {
                out.insert(s);
            });
        }
    }
    out.into_iter().collect()
}

impl TuplingComplex {
    /// Union of the labels of `sigma`'s vertices: a simplex of the source
    /// with `r * |sigma|` vertices.
    pub fn delta(&self, sigma: &Simplex) -> Result<Simplex> {
        if !self.complex.contains(sigma) {
            return Err(Error::NotASimplex(sigma.clone()));
        }
        Ok(self.labels_of(sigma).fold(Simplex::empty(), |acc, l| acc.union(l)))
    }

    fn labels_of<'a>(&'a self, sigma: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        sigma
            .vertices()
            .iter()
            .map(|&v| self.delta_table.label(v).expect("vertex has a label"))
    }

    fn label_family(&self) -> Result<BTreeSet<Vec<Simplex>>> {
        label_family(&self.complex, &self.delta_table)
    }
}

/// Every simplex of `x`, rewritten as the sorted list of its vertex labels.
fn label_family(
    x: &SimplicialComplex,
    table: &VertexTable<Simplex>,
) -> Result<BTreeSet<Vec<Simplex>>> {
    let mut out = BTreeSet::new();
    for level in x.strata()? {
        for s in level {
            out.insert(s.vertices().iter().map(|&v| table.label(v).unwrap().clone()).collect());
        }
    }
    Ok(out)
}

/// Matching complex of a graph: vertices are the edges (ranked
/// lexicographically), simplices are sets of pairwise disjoint edges.
pub fn matching_complex(
    g: &Graph,
    limits: &Limits,
) -> Result<(SimplicialComplex, VertexTable<Simplex>)> {
    let labels = g
        .edges()
        .iter()
        .map(|&(a, b)| Simplex::from_sorted_slice(&[a, b]))
        .collect();
    disjoint_sets_complex(VertexTable::new(labels), g.vertex_count() as usize, limits)
}

/// The complete r-uniform hypergraph matching complex `M_n(r)`. Labels are
/// r-subsets of `{0, .., n-1}`.
pub fn hypergraph_matching(
    n: u32,
    r: u32,
    limits: &Limits,
) -> Result<(SimplicialComplex, VertexTable<Simplex>)> {
    if r == 0 || r > n {
        return Err(Error::InvalidInput(format!(
            "hypergraph matching needs n >= r >= 1, got n = {n}, r = {r}"
        )));
    }
    let ground: Vec<u32> = (0..n).collect();
    let mut labels = Vec::new();
    for_each_k_subset(&ground, r as usize, |s| labels.push(s));
    disjoint_sets_complex(VertexTable::new(labels), n as usize, limits)
}

/// Complex of pairwise disjoint families of the table's labels, enumerated
/// depth first. Deliberately separate from the r-tupling enumerator so the
/// two sides of the identifications are built independently.
fn disjoint_sets_complex(
    table: VertexTable<Simplex>,
    bits: usize,
    limits: &Limits,
) -> Result<(SimplicialComplex, VertexTable<Simplex>)> {
    let masks: Vec<BitMask> = table.labels().iter().map(|s| s.mask(bits.max(1))).collect();
    let budget = limits.simplices;
    let mut strata: Vec<Vec<Simplex>> = Vec::new();
    let mut count = 0usize;

    fn dfs(
        masks: &[BitMask],
        start: usize,
        union: &BitMask,
        cur: &mut Vec<u32>,
        strata: &mut Vec<Vec<Simplex>>,
        count: &mut usize,
        budget: usize,
    ) -> bool {
        for v in start..masks.len() {
            if !masks[v].is_disjoint(union) {
                continue;
            }
            *count += 1;
            if *count > budget {
                return false;
            }
            cur.push(v as u32);
            if strata.len() < cur.len() {
                strata.push(Vec::new());
            }
            strata[cur.len() - 1].push(Simplex::from_sorted_slice(cur));
            let ok = dfs(masks, v + 1, &union.union(&masks[v]), cur, strata, count, budget);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    let empty = BitMask::with_capacity(bits.max(1));
    if !dfs(&masks, 0, &empty, &mut Vec::new(), &mut strata, &mut count, budget) {
        return Err(Error::budget("simplex", budget));
    }
    Ok((SimplicialComplex::from_strata(strata, budget), table))
}

#[derive(Clone, Debug, Serialize)]
pub struct TuplingIsoReport {
    pub n: u32,
    pub r: u32,
    pub tupling_f_vector: FVector,
    pub matching_f_vector: FVector,
    /// The bijection matching equal label sets sends simplices to simplices
    /// in both directions.
    pub label_bijection_simplicial: bool,
    /// Outcome of the generic isomorphism search, for comparison.
    pub search: &'static str,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Builds `D^r(Δ^n)` and `M_{n+1}(r)` independently and checks that the
/// bijection identifying equal label sets is an isomorphism.
pub fn verify_tupling_matching_iso(n: u32, r: u32, limits: &Limits) -> Result<TuplingIsoReport> {
    if r == 0 || n + 1 < r {
        return Err(Error::InvalidInput(format!(
            "need n + 1 >= r >= 1, got n = {n}, r = {r}"
        )));
    }
    let t = r_tuple(&SimplicialComplex::simplex(n), r as usize, limits)?;
    let (m, mt) = hypergraph_matching(n + 1, r, limits)?;
    let tf = t.complex.f_vector()?;
    let mf = m.f_vector()?;

    let mut simplicial = t.delta_table.labels() == mt.labels();
    if simplicial {
        let forward = t.complex.facets().iter().all(|f| {
            let img = f.map(|v| mt.id(t.delta_table.label(v).unwrap()).unwrap());
            img.is_ok_and(|s| m.contains(&s))
        });
        let backward = m.facets().iter().all(|f| {
            let pre = f.map(|v| t.delta_table.id(mt.label(v).unwrap()).unwrap());
            pre.is_ok_and(|s| t.complex.contains(&s))
        });
        simplicial = forward && backward;
    }
    let search = match is_isomorphic(&t.complex, &m, limits.iso_nodes) {
        IsoOutcome::Isomorphic(_) => "isomorphic",
        IsoOutcome::NotIsomorphic => "not-isomorphic",
        IsoOutcome::Inconclusive => "inconclusive",
    };
    let mut notes = Vec::new();
    if n == 3 && r == 2 {
        notes.push(
            "D(Δ³) has 6 vertices and 3 edges, one edge per perfect matching of K₄; \
             each single edge involves the 4 vertices of Δ³"
                .to_string(),
        );
    }
    Ok(TuplingIsoReport {
        n,
        r,
        verdict: Verdict::from_bool(simplicial && tf == mf && search != "not-isomorphic"),
        tupling_f_vector: tf,
        matching_f_vector: mf,
        label_bijection_simplicial: simplicial,
        search,
        notes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkLemmaReport {
    pub r: usize,
    pub source_f_vector: FVector,
    pub tupling_f_vector: FVector,
    /// Number of simplices τ checked, the empty simplex included.
    pub simplices_checked: usize,
    pub counterexample: Option<Simplex>,
    pub verdict: Verdict,
}

/// Checks `Link_{D^r(X)}(τ) = D^r(Link_X(δτ))` for every simplex τ of
/// `D^r(X)` as literal equality of families of label sets.
pub fn verify_link_lemma(x: &SimplicialComplex, r: usize, limits: &Limits) -> Result<LinkLemmaReport> {
    let t = r_tuple(x, r, limits)?;
    let mut taus = vec![Simplex::empty()];
    for level in t.complex.strata()? {
        taus.extend(level.iter().cloned());
    }

    let check = |tau: &Simplex| -> Result<bool> {
        let lhs = label_family(&t.complex.link(tau)?, &t.delta_table)?;
        let rhs = r_tuple(&x.link(&t.delta(tau)?)?, r, limits)?;
        Ok(lhs == rhs.label_family()?)
    };
    let results: Vec<Result<bool>> = taus.par_iter().map(check).collect();
    let mut counterexample = None;
    for (tau, res) in taus.iter().zip(results) {
        if !res? && counterexample.is_none() {
            counterexample = Some(tau.clone());
        }
    }
    Ok(LinkLemmaReport {
        r,
        source_f_vector: x.f_vector()?,
        tupling_f_vector: t.complex.f_vector()?,
        simplices_checked: taus.len(),
        verdict: Verdict::from_bool(counterexample.is_none()),
        counterexample,
    })
}
