//! Exact verification of generating functions for mutually annihilating
//! matrices over finite fields.
//!
//! Three independent routes are compared coefficient by coefficient:
//!
//! - [`fforacle`]: brute-force enumeration of matrix pairs over `F_p`;
//! - [`partitions`]: sums over integer partitions weighted by `1/|Aut(lambda)|`;
//! - [`verifier`]: the closed-form q-series.
//!
//! [`clsampler`] draws partitions from the Cohen-Lenstra measure `P_u` via a
//! Markov chain on conjugate column sizes and compares the empirical law with
//! the exact one. All arithmetic in the identity checks is exact ([`Rational`]).

pub mod clsampler;
pub mod error;
pub mod exactq;
pub mod fforacle;
pub mod par;
pub mod partitions;
pub mod report;
pub mod verifier;

pub use error::{Error, Result};
pub use exactq::{PowerSeries, Rational};
pub use par::Execution;
pub use partitions::Partition;
pub use report::{Anchor, CheckKind, Mismatch, Status, VerificationReport};
