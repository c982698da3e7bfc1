//! Integer partitions, automorphism orders of abelian p-groups, and the
//! Cohen-Lenstra partition sums.

mod enumerate;
mod partition;
mod sums;
mod weights;

pub use enumerate::{enumerate_partitions, partitions_up_to, Partitions};
pub use partition::Partition;
pub use sums::{
    cl_weight_series, eq1_middle_series, eq1_middle_series_with, eq2_middle_series, eq2_middle_series_with,
    product_over_irreducibles_series, AutFn,
};
pub use weights::{aut_order, aut_order_qpower, cl_weight};

pub(crate) use weights::{aut_order_with_exponent, require_unit_interval};
