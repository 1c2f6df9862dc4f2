use serde::Serialize;

/// Outcome vocabulary shared by every verification.
///
/// `PassCertified` means the claim holds outright (exact combinatorics, or
/// homology plus a trivial fundamental group wherever simple connectivity
/// mattered). `PassHomological` means it holds with "k-connected" read as
/// "homologically k-connected" only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PassCertified,
    PassHomological,
    Fail,
    Inconclusive,
    BudgetExceeded,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::PassCertified | Verdict::PassHomological)
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::PassCertified
        } else {
            Verdict::Fail
        }
    }

    /// Weakest of two verdicts: any failure wins, then budget, then
    /// inconclusive, then homological-only.
    pub fn meet(self, other: Verdict) -> Verdict {
        use Verdict::*;
        let rank = |v: Verdict| match v {
            Fail => 0,
            BudgetExceeded => 1,
            Inconclusive => 2,
            PassHomological => 3,
            PassCertified => 4,
        };
        if rank(self) <= rank(other) {
            self
        } else {
            other
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::PassCertified => "pass-certified",
            Verdict::PassHomological => "pass-homological",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::BudgetExceeded => "budget-exceeded",
        };
        f.write_str(s)
    }
}

/// Floor division that rounds toward negative infinity.
pub fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}
