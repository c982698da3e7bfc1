//! Closed-form sides of the identities, individual checks, and the suite
//! runner behind the CLI.

mod checks;
mod identities;
mod suite;

pub use checks::{Eq1Triple, Eq2Triple, EqTriple, Fault, Verifier};
pub use identities::{eq1_rhs_series, eq2_rhs_series, parts_and_ones_series, parts_count_series};
pub use suite::{run_all, run_suite, Suite, SuiteConfig};
