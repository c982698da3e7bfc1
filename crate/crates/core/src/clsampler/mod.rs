//! Cohen-Lenstra partition sampler.
//!
//! The chain starts in state `inf` and moves `a -> b` with probability
//! `K(a, b)`; the visited states are the column sizes `lambda'_1, lambda'_2, ...`
//! of a partition distributed as `P_u(lambda) = (u/q)_inf u^{|lambda|} / |Aut(lambda)|`.
//!
//! Kernel entries are exact rationals. The only approximation is the value of
//! `(u/q)_inf` (a truncated product, see [`cl_normalizer`]) and the `2^{-60}`
//! tail of the initial row, which is folded into its last entry.

mod compare;
mod kernel;
mod sampler;

pub use compare::{
    compare_tally, empirical_vs_corollary, min_judged_probability, Bucket, SamplerComparison, DIRECT_MAX_SIZE,
    Z_SQUARED_LIMIT,
};
pub use kernel::{
    corollary_part1, corollary_part2, kernel_entry, kernel_row, kernel_row_infinite, kernel_row_infinite_with,
    KernelRow, RowSource,
};
pub use sampler::{sample_partition, ClSampler, SamplerConfig, Tally, TRIALS_PER_STREAM};

use crate::error::Result;
use crate::exactq::{pochhammer_infinite_value, Rational, TruncatedProduct};

/// Mass left unassigned by the initial row is below `2^{-TAIL_BITS}`.
pub const TAIL_BITS: u32 = 60;

/// The product `(u/q)_inf` stops once a factor changes it by less than `2^{-NORMALIZER_BITS}`.
pub const NORMALIZER_BITS: u32 = 80;

/// `(u/q)_inf = prod_{k>=1} (1 - u/q^k)` as a number. Truncation makes this an
/// upper bound; the relative error is below `2^{-79}`.
pub fn cl_normalizer(q: &Rational, u: &Rational) -> Result<TruncatedProduct> {
    kernel::validate(q, u)?;
    pochhammer_infinite_value(&(u / q), q, NORMALIZER_BITS)
}
