//! Exact rational arithmetic and truncated q-series.
//!
//! Everything here is exact: [`Rational`] wraps an arbitrary-precision
//! fraction and [`PowerSeries`] stores the first `N+1` coefficients of a
//! series in `u`. The parameter `q` is any rational; it only needs to be a
//! prime power when the result is compared against a matrix count.

mod counting;
mod pochhammer;
mod rational;
mod series;

pub use counting::{gl_order, irreducible_count, is_prime, mobius};
pub use pochhammer::{
    euler_expansion_u_over_q, pochhammer_finite, pochhammer_infinite_u_over_q, pochhammer_infinite_value,
    pochhammer_inv_q, pochhammer_scalar, pochhammer_u_over_q, sum_wellknown_identity_lhs, u_over_q, TruncatedProduct,
};
pub use rational::Rational;
pub use series::PowerSeries;

pub(crate) use pochhammer::require_q_gt_one;
