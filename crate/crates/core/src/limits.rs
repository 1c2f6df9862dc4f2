use serde::Serialize;

pub const DEFAULT_SIMPLEX_BUDGET: usize = 5_000_000;
pub const DEFAULT_MATRIX_ENTRY_BUDGET: usize = 50_000_000;
pub const DEFAULT_ISO_NODE_BUDGET: u64 = 1_000_000;
pub const DEFAULT_TIETZE_STEP_BUDGET: usize = 200_000;
pub const DEFAULT_VERTEX_CAP: u32 = 1 << 24;

/// Resource guards for the combinatorial constructions and reductions.
///
/// Exceeding any of these is reported as [`crate::Error::BudgetExceeded`],
/// never as a truncated result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximum number of simplices a single complex may hold.
    pub simplices: usize,
    /// Maximum number of nonzero entries across the boundary matrices of one
    /// chain complex.
    pub matrix_entries: usize,
    /// Search-tree nodes for one isomorphism query.
    pub iso_nodes: u64,
    /// Rewriting steps for the fundamental-group simplification.
    pub tietze_steps: usize,
    /// Largest admissible vertex identifier (exclusive).
    pub vertex_cap: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            simplices: DEFAULT_SIMPLEX_BUDGET,
            matrix_entries: DEFAULT_MATRIX_ENTRY_BUDGET,
            iso_nodes: DEFAULT_ISO_NODE_BUDGET,
            tietze_steps: DEFAULT_TIETZE_STEP_BUDGET,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}
