//! JSON interchange formats.
//!
//! Complexes: `{"vertices": <int>, "facets": [[int, ...], ...]}`. Every id
//! below `vertices` is a vertex; facets are written in lexicographic order.
//! Graphs: `{"vertices": <int>, "edges": [[a, b], ...]}`.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: u32,
    pub facets: Vec<Vec<u32>>,
}

impl ComplexJson {
    /// Serializable form of a complex. Ids are compacted first when the
    /// vertex set has gaps, since the format declares `0..vertices`.
    pub fn from_complex(x: &SimplicialComplex) -> Self {
        let c;
        let x = if x.is_compact() {
            x
        } else {
            c = x.compact().0;
            &c
        };
        ComplexJson {
            vertices: x.vertex_bound(),
            facets: x.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }

    pub fn into_complex(self, limits: &Limits) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets_with(Some(self.vertices), self.facets, limits)
    }
}

pub fn parse_complex(text: &str, limits: &Limits) -> Result<SimplicialComplex> {
    let j: ComplexJson = serde_json::from_str(text)?;
    j.into_complex(limits)
}

pub fn complex_to_json(x: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexJson::from_complex(x)).expect("complex serializes")
}

/// A simple graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: u32,
    edges: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: u32,
    edges: Vec<[u32; 2]>,
}

impl Graph {
    /// Rejects loops, repeated edges and out-of-range endpoints. Edges are
    /// stored as `(min, max)` in lexicographic order.
    pub fn new(vertex_count: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut es: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::UndeclaredVertex {
                    id: a.max(b),
                    count: vertex_count,
                });
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        if es.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated edge".into()));
        }
        Ok(Graph {
            vertex_count,
            edges: es,
        })
    }

    pub fn complete(n: u32) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::new(n, edges).unwrap()
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(text)?;
        Graph::new(g.vertices, g.edges.into_iter().map(|[a, b]| (a, b)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        })
        .expect("graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip_is_byte_stable() {
        let text = r#"{"vertices":5,"facets":[[2,1,0],[3,4],[1,0]]}"#;
        let x = parse_complex(text, &Limits::default()).unwrap();
        let out = complex_to_json(&x);
        assert_eq!(out, r#"{"vertices":5,"facets":[[0,1,2],[3,4]]}"#);
        let again = complex_to_json(&parse_complex(&out, &Limits::default()).unwrap());
        assert_eq!(out, again);
    }

    #[test]
    fn isolated_and_undeclared_vertices() {
        let x = parse_complex(r#"{"vertices":3,"facets":[[0,1]]}"#, &Limits::default()).unwrap();
        assert_eq!(complex_to_json(&x), r#"{"vertices":3,"facets":[[0,1],[2]]}"#);
        let err = parse_complex(r#"{"vertices":2,"facets":[[0,2]]}"#, &Limits::default()).unwrap_err();
        assert_eq!(err.code(), "undeclared-vertex");
        let err = parse_complex(r#"{"vertices":2,"facets":[[0,"#, &Limits::default()).unwrap_err();
        assert_eq!(err.code(), "malformed-json");
    }

    #[test]
    fn gapped_complexes_are_compacted_on_output() {
        let x = SimplicialComplex::from_facets([[3, 7]]).unwrap();
        assert_eq!(complex_to_json(&x), r#"{"vertices":2,"facets":[[0,1]]}"#);
    }

    #[test]
    fn graphs() {
        let g = Graph::from_json(r#"{"vertices":3,"edges":[[1,0],[2,1]]}"#).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
        assert_eq!(Graph::complete(4).edges().len(), 6);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
}
