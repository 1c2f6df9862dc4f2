use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Bijection between the vertex ids `0..n` of a derived complex and the
/// objects that label them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexTable<L: Ord> {
    labels: Vec<L>,
    ids: BTreeMap<L, u32>,
}

impl<L: Ord + Clone> VertexTable<L> {
    /// Assigns ids by position. Panics on a repeated label, which would break
    /// injectivity.
    pub fn new(labels: Vec<L>) -> Self {
        let mut ids = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            let prev = ids.insert(l.clone(), i as u32);
            assert!(prev.is_none(), "vertex table labels must be distinct");
        }
        VertexTable { labels, ids }
    }

    /// Sorts the labels and assigns ids by lexicographic rank.
    pub fn ranked(mut labels: Vec<L>) -> Self {
        labels.sort();
        labels.dedup();
        Self::new(labels)
    }

    pub fn label(&self, id: u32) -> Option<&L> {
        self.labels.get(id as usize)
    }

    pub fn id(&self, label: &L) -> Option<u32> {
        self.ids.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }
}

impl<L: Ord + Serialize> Serialize for VertexTable<L> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Labels<'a, L>(&'a [L]);
        impl<L: Serialize> Serialize for Labels<'_, L> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (i, l) in self.0.iter().enumerate() {
                    m.serialize_entry(&i.to_string(), l)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("labels", &Labels(&self.labels))?;
        m.end()
    }
}
