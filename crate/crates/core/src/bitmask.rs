//! Vertex sets as bitsets.
//!
//! Sets over at most 128 vertex ids live inline; wider ones spill to the heap.
//! Disjointness and union tests dominate the tupling enumerations, so every
//! hot operation here is a word-wise loop.

use smallvec::{smallvec, SmallVec};

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord)]
pub struct BitMask {
    words: SmallVec<[u64; 2]>,
}

impl BitMask {
    pub fn with_capacity(bits: usize) -> Self {
        BitMask {
            words: smallvec![0; bits.div_ceil(64).max(1)],
        }
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(bits: usize, ids: I) -> Self {
        let mut m = Self::with_capacity(bits);
        for id in ids {
            m.insert(id);
        }
        m
    }

    #[inline]
    pub fn insert(&mut self, id: u32) {
        let (w, b) = (id as usize / 64, id % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    #[inline]
    pub fn contains(&self, id: u32) -> bool {
        let (w, b) = (id as usize / 64, id % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &BitMask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &BitMask) -> bool {
        self.words.iter().enumerate().all(|(i, a)| {
            let b = other.words.get(i).copied().unwrap_or(0);
            a & !b == 0
        })
    }

    pub fn union_with(&mut self, other: &BitMask) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &BitMask) -> BitMask {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<u32> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = BitMask::from_ids(10, [1, 3, 5]);
        let b = BitMask::from_ids(10, [2, 4]);
        let c = BitMask::from_ids(200, [1, 150]);
        assert!(a.is_disjoint(&b));
        assert!(!a.is_disjoint(&c));
        assert!(BitMask::from_ids(10, [1, 5]).is_subset(&a));
        assert!(!c.is_subset(&a));
        assert_eq!(a.union(&c).iter().collect::<Vec<_>>(), vec![1, 3, 5, 150]);
        assert_eq!(c.first(), Some(1));
        assert_eq!(a.union(&b).count(), 5);
        assert!(BitMask::with_capacity(0).is_empty());
    }
}
