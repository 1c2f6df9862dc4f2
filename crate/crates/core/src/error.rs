use thiserror::Error;

use crate::simplex::Simplex;

/// Errors raised by constructions, homology and verification harnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex id {id} exceeds the configured cap {cap}")]
    VertexCap { id: u64, cap: u32 },

    #[error("vertex id {id} is not below the declared vertex count {count}")]
    UndeclaredVertex { id: u32, count: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("simplex {0} is not a member of the complex")]
    NotASimplex(Simplex),

    #[error("{what} budget exceeded (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },

    /// The r-tupling enumeration ran out of budget; the strata that were
    /// fully enumerated before the limit was hit are kept.
    #[error("r-tupling budget exceeded (limit {limit}) after {} complete strata", completed.len())]
    TuplingBudget {
        limit: u64,
        completed: Vec<Vec<Simplex>>,
    },

    #[error("chain complex is inconsistent: {0}")]
    Inconsistent(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VertexCap { .. } => "vertex-cap",
            Error::UndeclaredVertex { .. } => "undeclared-vertex",
            Error::InvalidInput(_) => "invalid-input",
            Error::NotASimplex(_) => "not-a-simplex",
            Error::BudgetExceeded { .. } | Error::TuplingBudget { .. } => "budget-exceeded",
            Error::Inconsistent(_) => "inconsistent",
            Error::Json(_) => "malformed-json",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TuplingBudget { .. })
    }

    pub(crate) fn budget(what: &'static str, limit: impl TryInto<u64>) -> Self {
        Error::BudgetExceeded {
            what,
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
