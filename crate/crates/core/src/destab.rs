//! Destabilization complexes for the symmetric groups (the FI category).
//!
//! `W_n(∅,[r])` has as p-simplices the injections `[r(p+1)] ↪ [nr]`, read as
//! `p+1` ordered blocks of length `r`; for `r = 1` these are the injective
//! words on `n` letters. `S_n(∅,[r])` is the simplicial complex whose
//! vertices are the injections `[r] ↪ [nr]`, with a simplex for every family
//! whose images are pairwise disjoint. Letters are `1..=n` throughout, as in
//! the usual notation for words; the simplex `Δ^{m-1}` uses vertices
//! `0..m`, so letter `a` corresponds to vertex `a - 1`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitmask::BitMask;
use crate::complex::SimplicialComplex;
use crate::enumerate::{disjoint_families, Overflow};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, SparseMatrix};
use crate::limits::Limits;
use crate::report::{floor_div, Verdict};
use crate::simplex::{FVector, Simplex};
use crate::table::VertexTable;
use crate::tupling::r_tuple;
use crate::wcm::{check_wcm, tupling_wcm_dimension, WcmReport};

/// Graded sets with face maps and no degeneracies.
///
/// Every simplex carries a word (its ordered vertex labels); face `d_i`
/// deletes the letter at position `i`.
#[derive(Clone, Debug, Serialize)]
pub struct SemiSimplicialSet {
    degrees: Vec<Degree>,
}

#[derive(Clone, Debug, Serialize)]
struct Degree {
    simplices: Vec<Vec<u32>>,
    /// `faces[j][i]` is the index of `d_i` of simplex `j` one degree down.
    faces: Vec<Vec<u32>>,
}

impl SemiSimplicialSet {
    /// Builds the set from its words, degree by degree (degree `p` holds
    /// words of length `p + 1`). Every deletion of a letter must land on a
    /// word of the previous degree, and the simplicial identities are
    /// checked.
    pub fn from_words(levels: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let mut degrees: Vec<Degree> = Vec::with_capacity(levels.len());
        let mut prev: HashMap<Vec<u32>, u32> = HashMap::new();
        for (p, words) in levels.into_iter().enumerate() {
            let mut faces = Vec::with_capacity(words.len());
            for w in &words {
                if w.len() != p + 1 {
                    return Err(Error::Inconsistent(format!("word of length {} in degree {p}", w.len())));
                }
                let mut fs = Vec::new();
                if p > 0 {
                    for i in 0..w.len() {
                        let mut f = w.clone();
                        f.remove(i);
                        let idx = prev.get(&f).ok_or_else(|| {
                            Error::Inconsistent(format!("face {f:?} of {w:?} is missing"))
                        })?;
                        fs.push(*idx);
                    }
                }
                faces.push(fs);
            }
            prev = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
            if prev.len() != words.len() {
                return Err(Error::Inconsistent(format!("repeated word in degree {p}")));
            }
            degrees.push(Degree { simplices: words, faces });
        }
        while degrees.last().is_some_and(|d| d.simplices.is_empty()) {
            degrees.pop();
        }
        let s = SemiSimplicialSet { degrees };
        s.check_identities()?;
        Ok(s)
    }

    /// `d_i d_j = d_{j-1} d_i` for `i < j`, on every simplex of degree ≥ 2.
    pub fn check_identities(&self) -> Result<()> {
        for p in 2..self.degrees.len() {
            let down = &self.degrees[p - 1].faces;
            for (k, fs) in self.degrees[p].faces.iter().enumerate() {
                for j in 1..=p {
                    for i in 0..j {
                        let a = down[fs[j] as usize][i];
                        let b = down[fs[i] as usize][j - 1];
                        if a != b {
                            return Err(Error::Inconsistent(format!(
                                "face identity d_{i} d_{j} fails on simplex {k} of degree {p}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn top_degree(&self) -> i64 {
        self.degrees.len() as i64 - 1
    }

    pub fn count(&self, p: usize) -> usize {
        self.degrees.get(p).map_or(0, |d| d.simplices.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.simplices.len()).collect()
    }

    pub fn simplices(&self, p: usize) -> &[Vec<u32>] {
        self.degrees.get(p).map_or(&[], |d| &d.simplices)
    }

    pub fn face(&self, p: usize, j: usize, i: usize) -> u32 {
        self.degrees[p].faces[j][i]
    }

    /// Simplicial complex of the letter sets of the words.
    pub fn underlying(&self, limits: &Limits) -> Result<SimplicialComplex> {
        let facets = self
            .degrees
            .iter()
            .flat_map(|d| d.simplices.iter())
            .cloned();
        SimplicialComplex::from_facets_with(None, facets, limits)
    }
}

fn check_budget(total: usize, limits: &Limits) -> Result<()> {
    if total > limits.simplices {
        return Err(Error::budget("simplex", limits.simplices));
    }
    Ok(())
}

/// Injective words on the letters `1..=n`.
pub fn injective_words(n: u32, limits: &Limits) -> Result<SemiSimplicialSet> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let mut total = 0usize;
    let mut level: Vec<Vec<u32>> = (1..=n).map(|a| vec![a]).collect();
    let mut levels = Vec::new();
    while !level.is_empty() {
        total += level.len();
        check_budget(total, limits)?;
        let next = level
            .iter()
            .flat_map(|w| {
                (1..=n).filter(|a| !w.contains(a)).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        levels.push(level);
        level = next;
    }
    SemiSimplicialSet::from_words(levels)
}

/// The semi-simplicial set with one p-simplex per p-simplex of `x` and
/// ordering of its vertices.
pub fn ordered_complex(x: &SimplicialComplex, limits: &Limits) -> Result<SemiSimplicialSet> {
    let strata = x.strata()?;
    let mut total = 0usize;
    let mut levels = Vec::with_capacity(strata.len());
    for (p, level) in strata.iter().enumerate() {
        total = total.saturating_add(level.len().saturating_mul(factorial(p + 1)));
        check_budget(total, limits)?;
        let mut words = Vec::new();
        for s in level {
            permutations(s.vertices(), &mut |w| words.push(w.to_vec()));
        }
        words.sort();
        levels.push(words);
    }
    SemiSimplicialSet::from_words(levels)
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// All orderings of `items`, in lexicographic order when `items` is sorted.
fn permutations(items: &[u32], f: &mut dyn FnMut(&[u32])) {
    fn rec(rest: &mut Vec<u32>, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if rest.is_empty() {
            f(cur);
            return;
        }
        for i in 0..rest.len() {
            let a = rest.remove(i);
            cur.push(a);
            rec(rest, cur, f);
            cur.pop();
            rest.insert(i, a);
        }
    }
    rec(&mut items.to_vec(), &mut Vec::new(), f);
}

/// Augmented chain complex: `C_p` is free on the p-simplices and
/// `∂σ = Σ (-1)^i d_i σ`.
pub fn chain_complex_of(s: &SemiSimplicialSet) -> Result<ChainComplex> {
    let mut ranks = vec![1usize];
    let mut boundaries = Vec::new();
    for (p, d) in s.degrees.iter().enumerate() {
        ranks.push(d.simplices.len());
        let cols = if p == 0 {
            d.simplices.iter().map(|_| vec![(0, 1)]).collect()
        } else {
            d.faces
                .iter()
                .map(|fs| {
                    fs.iter()
                        .enumerate()
                        .map(|(i, &f)| (f, if i % 2 == 0 { 1 } else { -1 }))
                        .collect()
                })
                .collect()
        };
        let nrows = ranks[p];
        boundaries.push(SparseMatrix::from_columns(nrows, cols));
    }
    ChainComplex::new(ranks, boundaries, true)
}

/// Labelled vertices of `S_n(∅,[r])`: injections `[r] ↪ [nr]` written as
/// their image tuples, ranked lexicographically.
pub fn s_complex_fi(n: u32, r: u32, limits: &Limits) -> Result<(SimplicialComplex, VertexTable<Vec<u32>>)> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidInput("n and r must be at least 1".into()));
    }
    let m = n * r;
    let mut labels = Vec::new();
    fn rec(m: u32, r: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, budget: usize) -> bool {
        if cur.len() == r {
            out.push(cur.clone());
            return out.len() <= budget;
        }
        for a in 1..=m {
            if !cur.contains(&a) {
                cur.push(a);
                let ok = rec(m, r, cur, out, budget);
                cur.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    if !rec(m, r as usize, &mut Vec::new(), &mut labels, limits.simplices) {
        return Err(Error::budget("simplex", limits.simplices));
    }
    let table = VertexTable::new(labels);
    let masks: Vec<BitMask> = table
        .labels()
        .iter()
        .map(|w| BitMask::from_ids(m as usize + 1, w.iter().copied()))
        .collect();
    let strata = disjoint_families(&masks, |_| true, limits.simplices)
        .map_err(|Overflow { .. }| Error::budget("simplex", limits.simplices))?;
    Ok((SimplicialComplex::from_strata(strata, limits.simplices), table))
}

/// A vertex map between complexes that sends every simplex onto a simplex
/// of the same size.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    assignment: BTreeMap<u32, u32>,
}

impl ComplexMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        assignment: BTreeMap<u32, u32>,
    ) -> Result<Self> {
        for &v in source.vertices() {
            let w = assignment
                .get(&v)
                .ok_or_else(|| Error::InvalidInput(format!("vertex {v} has no image")))?;
            if !target.vertices().contains(w) {
                return Err(Error::InvalidInput(format!("image {w} of {v} is not a target vertex")));
            }
        }
        let map = ComplexMap {
            source,
            target,
            assignment,
        };
        for f in map.source.facets() {
            let img = map.image(f);
            if img.len() != f.len() || !map.target.contains(&img) {
                return Err(Error::InvalidInput(format!("facet {f} is not mapped onto a simplex")));
            }
        }
        Ok(map)
    }

    pub fn identity(x: &SimplicialComplex) -> Self {
        let assignment = x.vertices().iter().map(|&v| (v, v)).collect();
        ComplexMap::new(x.clone(), x.clone(), assignment).expect("identity is simplicial")
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.assignment[&v]
    }

    /// Image vertex set; may be smaller than `s` if two vertices collide.
    pub fn image(&self, s: &Simplex) -> Simplex {
        let mut v: Vec<u32> = s.vertices().iter().map(|&x| self.assignment[&x]).collect();
        v.sort_unstable();
        v.dedup();
        Simplex::new(v).expect("deduplicated")
    }

    /// Preimage of each target vertex, each fiber sorted.
    pub fn fibers(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut out: BTreeMap<u32, Vec<u32>> =
            self.target.vertices().iter().map(|&w| (w, Vec::new())).collect();
        for &v in self.source.vertices() {
            out.get_mut(&self.assignment[&v]).unwrap().push(v);
        }
        out
    }
}

/// The map `S_n(∅,[r]) → D^r(Δ^{nr-1})` sending an injection to its image
/// set (shifted to vertices `0..nr`).
pub fn projection_to_tupling(n: u32, r: u32, limits: &Limits) -> Result<ComplexMap> {
    let (s, table) = s_complex_fi(n, r, limits)?;
    let t = r_tuple(&SimplicialComplex::simplex(n * r - 1), r as usize, limits)?;
    let mut assignment = BTreeMap::new();
    for (id, w) in table.labels().iter().enumerate() {
        let img = Simplex::new(w.iter().map(|a| a - 1))?;
        let target = t
            .delta_table
            .id(&img)
            .ok_or_else(|| Error::Inconsistent(format!("no tupling vertex for {img}")))?;
        assignment.insert(id as u32, target);
    }
    ComplexMap::new(s, t.complex, assignment)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompleteJoinReport {
    pub vertex_surjective: bool,
    pub fiber_sizes: Vec<usize>,
    /// Simplices of the source checked to map onto simplices of the same
    /// size.
    pub forward_checked: usize,
    /// Tuples, one vertex from each fiber over a target simplex, checked to
    /// be simplices of the source.
    pub backward_checked: usize,
    pub counterexample: Option<Counterexample>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub direction: &'static str,
    pub vertices: Simplex,
}

/// Checks that `π` is a complete join: a tuple of source vertices is a
/// simplex exactly when its images are distinct and form a simplex.
pub fn is_complete_join(pi: &ComplexMap, limits: &Limits) -> Result<CompleteJoinReport> {
    let fibers = pi.fibers();
    let vertex_surjective = fibers.values().all(|f| !f.is_empty());
    let mut sizes: Vec<usize> = fibers.values().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();

    let mut counterexample = None;
    let mut forward_checked = 0;
    for level in pi.source.strata()? {
        for s in level {
            forward_checked += 1;
            let img = pi.image(s);
            if counterexample.is_none() && (img.len() != s.len() || !pi.target.contains(&img)) {
                counterexample = Some(Counterexample {
                    direction: "forward",
                    vertices: s.clone(),
                });
            }
        }
    }

    let targets: Vec<&Simplex> = pi.target.strata()?.iter().flatten().collect();
    let total: usize = targets
        .iter()
        .map(|t| t.vertices().iter().map(|w| fibers[w].len().max(1)).product::<usize>())
        .sum();
    if total > limits.simplices {
        return Err(Error::budget("fiber product", limits.simplices));
    }
    let backward: Vec<(usize, Option<Simplex>)> = targets
        .par_iter()
        .map(|t| {
            let fs: Vec<&[u32]> = t.vertices().iter().map(|w| fibers[w].as_slice()).collect();
            let mut checked = 0;
            let mut bad = None;
            if fs.iter().any(|f| f.is_empty()) {
                return (0, Some((*t).clone()));
            }
            let mut idx = vec![0usize; fs.len()];
            loop {
                let pick = Simplex::new(fs.iter().zip(&idx).map(|(f, &i)| f[i])).expect("fibers are disjoint");
                checked += 1;
                if bad.is_none() && !pi.source.contains(&pick) {
                    bad = Some(pick);
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < fs[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
            (checked, bad)
        })
        .collect();
    let mut backward_checked = 0;
    for (c, bad) in backward {
        backward_checked += c;
        if counterexample.is_none() {
            if let Some(b) = bad {
                counterexample = Some(Counterexample {
                    direction: "backward",
                    vertices: b,
                });
            }
        }
    }
    let ok = vertex_surjective && counterexample.is_none();
    Ok(CompleteJoinReport {
        vertex_surjective,
        fiber_sizes: sizes,
        forward_checked,
        backward_checked,
        counterexample,
        verdict: Verdict::from_bool(ok),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop44Report {
    pub n: u32,
    pub r: u32,
    pub source_f_vector: FVector,
    pub target_f_vector: FVector,
    /// `S_{nr}(∅,[1])` equals `Δ^{nr-1}` under letter `a` ↦ vertex `a-1`.
    pub base_is_simplex: bool,
    pub complete_join: CompleteJoinReport,
    /// FI is symmetric monoidal, so `W = S^ord` holds on the nose.
    pub situation: &'static str,
    pub verdict: Verdict,
}

/// `S_n(∅,[r])` is a complete join complex over `D^r(S_{nr}(∅,[1]))`.
pub fn verify_prop44(n: u32, r: u32, limits: &Limits) -> Result<Prop44Report> {
    let pi = projection_to_tupling(n, r, limits)?;
    let (base, table) = s_complex_fi(n * r, 1, limits)?;
    let base = base.relabel(|v| table.label(v).unwrap()[0] - 1)?;
    let base_is_simplex = base == SimplicialComplex::simplex(n * r - 1);
    let cj = is_complete_join(&pi, limits)?;
    Ok(Prop44Report {
        n,
        r,
        source_f_vector: pi.source.f_vector()?,
        target_f_vector: pi.target.f_vector()?,
        base_is_simplex,
        verdict: if base_is_simplex { cj.verdict } else { Verdict::Fail },
        complete_join: cj,
        situation: "A",
    })
}

/// `⌊r(n-1)/(r+1)⌋`: the transfer formula `(nr + k(2-r) - a)/(k(r+1))` with
/// the FI constants `k = 1`, `a = 2`.
pub fn prop45_fi_dimension(n: i64, r: i64) -> i64 {
    let (k, a) = (1, 2);
    floor_div(n * r + k * (2 - r) - a, k * (r + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop45Report {
    pub n: u32,
    pub r: u32,
    pub k: i64,
    pub a: i64,
    pub target_dimension: i64,
    /// Dimension predicted by the tupling bound for `D^r(Δ^{nr-1})`.
    pub tupling_dimension: i64,
    pub dimensions_agree: bool,
    pub wcm: WcmReport,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// `S_n(∅,[r])` should be wCM of dimension `⌊r(n-1)/(r+1)⌋`.
pub fn verify_prop45_fi(n: u32, r: u32, limits: &Limits) -> Result<Prop45Report> {
    let (s, _) = s_complex_fi(n, r, limits)?;
    let (ni, ri) = (n as i64, r as i64);
    let target = prop45_fi_dimension(ni, ri);
    let tupling_dimension = tupling_wcm_dimension(ni * ri - 1, ri);
    let wcm = check_wcm(&s, target, limits)?;
    let agree = target == tupling_dimension;
    Ok(Prop45Report {
        n,
        r,
        k: 1,
        a: 2,
        target_dimension: target,
        tupling_dimension,
        dimensions_agree: agree,
        verdict: if agree { wcm.verdict } else { Verdict::Fail },
        wcm,
        notes: vec![
            "k = 1 and a = 2 are inferred from S_n(∅,[1]) = Δ^{n-1} being wCM of dimension n-1 = (n+k-a)/k".into(),
            "only the S-level statement is computed; the corresponding statement for W_n is not machine-checked".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    fn derangements(n: u64) -> u64 {
        match n {
            0 => 1,
            1 => 0,
            _ => (n - 1) * (derangements(n - 1) + derangements(n - 2)),
        }
    }

    #[test]
    fn injective_word_counts() {
        assert_eq!(injective_words(3, &l()).unwrap().counts(), vec![3, 6, 6]);
        assert_eq!(injective_words(1, &l()).unwrap().counts(), vec![1]);
        let w = injective_words(4, &l()).unwrap();
        let u = w.underlying(&l()).unwrap();
        assert_eq!(u.compact().0, SimplicialComplex::simplex(3));
    }

    #[test]
    fn injective_word_homology() {
        for n in 1..=4u32 {
            let cc = chain_complex_of(&injective_words(n, &l()).unwrap()).unwrap();
            let groups = cc.all_reduced_homology().unwrap();
            for g in &groups {
                if g.degree < n as i64 - 1 {
                    assert!(g.is_zero(), "n = {n}, degree {}", g.degree);
                }
            }
            let top = groups.iter().find(|g| g.degree == n as i64 - 1).unwrap();
            assert_eq!(top.free_rank as u64, derangements(n as u64));
            assert!(top.torsion.is_empty());
        }
    }

    #[test]
    fn ordered_simplex_is_injective_words() {
        for n in 1..=4u32 {
            let o = ordered_complex(&SimplicialComplex::simplex(n - 1), &l()).unwrap();
            let w = injective_words(n, &l()).unwrap();
            assert_eq!(o.counts(), w.counts());
            for p in 0..w.counts().len() {
                let shifted: Vec<Vec<u32>> = w.simplices(p).iter().map(|x| x.iter().map(|a| a - 1).collect()).collect();
                assert_eq!(o.simplices(p), shifted.as_slice());
            }
        }
    }

    #[test]
    fn face_identity_violation_is_caught() {
        let mut s = injective_words(3, &l()).unwrap();
        s.degrees[2].faces[0].swap(0, 1);
        assert!(s.check_identities().is_err());
    }

    #[test]
    fn s_complex_examples() {
        let (s, _) = s_complex_fi(4, 1, &l()).unwrap();
        assert_eq!(s, SimplicialComplex::simplex(3));
        let (s, t) = s_complex_fi(2, 2, &l()).unwrap();
        assert_eq!(t.len(), 12);
        // each injection has 2 disjoint partners among the 12
        assert_eq!(s.f_vector().unwrap().0, vec![12, 12]);
        let (s, _) = s_complex_fi(1, 2, &l()).unwrap();
        assert_eq!(s.f_vector().unwrap().0, vec![2]);
    }

    #[test]
    fn projection_fibers() {
        for (n, r) in [(2, 2), (2, 3), (3, 1)] {
            let pi = projection_to_tupling(n, r, &l()).unwrap();
            let fact = factorial(r as usize);
            assert!(pi.fibers().values().all(|f| f.len() == fact));
        }
        let pi = projection_to_tupling(2, 2, &l()).unwrap();
        assert_eq!(pi.target().vertex_count(), 6);
    }

    #[test]
    fn complete_join_examples() {
        let x = SimplicialComplex::boundary(3);
        assert_eq!(is_complete_join(&ComplexMap::identity(&x), &l()).unwrap().verdict, Verdict::PassCertified);
        let two = SimplicialComplex::from_facets([[0], [1]]).unwrap();
        let edge = SimplicialComplex::from_facets([[0, 1]]).unwrap();
        let pi = ComplexMap::new(two, edge, [(0, 0), (1, 1)].into_iter().collect()).unwrap();
        let rep = is_complete_join(&pi, &l()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.counterexample.unwrap().direction, "backward");
        for (n, r) in [(2, 2), (3, 1)] {
            assert_eq!(verify_prop44(n, r, &l()).unwrap().verdict, Verdict::PassCertified);
        }
    }

    #[test]
    fn fi_dimension_examples() {
        for (n, r) in [(3, 1), (2, 2), (3, 2)] {
            let rep = verify_prop45_fi(n, r, &l()).unwrap();
            assert!(rep.verdict.is_pass(), "{n} {r}");
        }
        // the transfer bound at r = 1 is weaker than the actual dimension n - 1
        assert_eq!(prop45_fi_dimension(3, 1), 1);
        assert_eq!(prop45_fi_dimension(2, 2), 0);
        assert_eq!(prop45_fi_dimension(3, 2), 1);
    }
}
