//! Doubling and r-tupling of finite simplicial complexes.
//!
//! The crate builds simplicial complexes, their r-tuplings and the matching
//! complexes they are identified with, computes exact reduced integral
//! homology by Smith normal form, and checks weakly Cohen-Macaulay
//! connectivity statements on concrete inputs.

pub mod bitmask;
pub mod complex;
pub mod destab;
mod enumerate;
pub mod error;
pub mod homology;
pub mod io;
pub mod iso;
pub mod limits;
pub mod simplex;
pub mod report;
pub mod table;
pub mod tupling;
pub mod wcm;

pub use complex::{JoinLabel, SimplicialComplex};
pub use error::{Error, Result};
pub use io::Graph;
pub use limits::Limits;
pub use report::Verdict;
pub use simplex::{FVector, Simplex};
pub use table::VertexTable;
pub use tupling::{r_tuple, TuplingComplex};
