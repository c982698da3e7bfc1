//! Brute-force ground truth over prime fields.
//!
//! Matrices are enumerated lexicographically over their row-major entries.
//! Counting reduces over disjoint index ranges, so the totals do not depend
//! on how the range is split across threads.

mod count;
mod jordan;
mod lemmas;
mod linalg;
mod matrix;

pub use count::{count_nilpotent_annihilators, count_nilpotent_by_type, count_nilpotent_pairs, count_pairs};
pub use jordan::{jordan_zero_data, JordanZeroData};
pub use lemmas::{verify_lemma2, verify_lemma3};
pub use linalg::{annihilator_basis, annihilator_dimension, rank};
pub use matrix::PrimeFieldMatrix;

pub(crate) use matrix::check_prime;

use crate::par::Execution;

/// Default cap on the number of outer matrices, `2^26`.
pub const DEFAULT_OUTER_BUDGET: u128 = 1 << 26;
/// Default cap on the total annihilator candidates walked, `2^30`.
pub const DEFAULT_INNER_BUDGET: u128 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub outer_budget: u128,
    pub inner_budget: u128,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            outer_budget: DEFAULT_OUTER_BUDGET,
            inner_budget: DEFAULT_INNER_BUDGET,
            execution: Execution::default(),
        }
    }
}

impl OracleConfig {
    /// Applies a single cap to both budgets.
    pub fn with_budget(mut self, budget: u128) -> Self {
        self.outer_budget = budget;
        self.inner_budget = budget;
        self
    }
}
