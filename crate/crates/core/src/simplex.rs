use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::bitmask::BitMask;
use crate::error::{Error, Result};

/// A finite set of vertex ids kept in canonical (strictly increasing) order.
///
/// The empty simplex has dimension -1 and is representable, although
/// complexes never store it in their strata.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Simplex(SmallVec<[u32; 8]>);

impl Simplex {
    pub fn empty() -> Self {
        Simplex(SmallVec::new())
    }

    /// Builds a simplex from arbitrary ids, sorting them. Repeated ids are an
    /// error since a simplex is a set.
    pub fn new<I: IntoIterator<Item = u32>>(ids: I) -> Result<Self> {
        let mut v: SmallVec<[u32; 8]> = ids.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "repeated vertex in simplex {v:?}"
            )));
        }
        Ok(Simplex(v))
    }

    /// Caller guarantees the ids are strictly increasing.
    pub(crate) fn from_sorted(v: SmallVec<[u32; 8]>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub(crate) fn from_sorted_slice(v: &[u32]) -> Self {
        Self::from_sorted(SmallVec::from_slice(v))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|a| it.by_ref().any(|b| b == a))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: SmallVec<[u32; 8]> = SmallVec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            v.push(next);
        }
        Simplex(v)
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// The codimension-one face omitting the vertex at `pos`.
    pub fn face(&self, pos: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(pos);
        Simplex(v)
    }

    pub fn mask(&self, bits: usize) -> BitMask {
        BitMask::from_ids(bits, self.0.iter().copied())
    }

    /// All non-empty subsets, in no particular order.
    pub(crate) fn for_each_nonempty_subset(&self, mut f: impl FnMut(Simplex)) {
        let n = self.0.len();
        assert!(n < 64, "simplex too large to enumerate its faces");
        for bits in 1u64..(1u64 << n) {
            let v: SmallVec<[u32; 8]> = (0..n)
                .filter(|i| bits & (1 << i) != 0)
                .map(|i| self.0[i])
                .collect();
            f(Simplex(v));
        }
    }

    pub fn map(&self, f: impl Fn(u32) -> u32) -> Result<Simplex> {
        Simplex::new(self.0.iter().map(|&v| f(v)))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Simplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Simplex::new(v).map_err(serde::de::Error::custom)
    }
}

/// Number of simplices per dimension, from 0 up to the dimension of the
/// complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn get(&self, d: usize) -> usize {
        self.0.get(d).copied().unwrap_or(0)
    }

    /// Euler characteristic of the unreduced complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}
