//! Partition-sum forms of the generating functions, truncated by size.
//!
//! A partition of size `s` only touches the `u^s` coefficient, so summing
//! over `|lambda| <= N` is exact to order `N`.

use num_traits::ToPrimitive;

use super::{aut_order, aut_order_qpower, partitions_up_to, Partition};
use crate::error::{usage, Result};
use crate::exactq::{irreducible_count, require_q_gt_one, PowerSeries, Rational};

/// Source of `|Aut(lambda)|` values. The verifier swaps this out to inject faults.
pub type AutFn<'a> = &'a (dyn Fn(&Partition, &Rational) -> Result<Rational> + Sync);

fn weighted_sum(
    q: &Rational,
    order: usize,
    aut: AutFn<'_>,
    extra_q_exponent: impl Fn(&Partition) -> i64,
) -> Result<PowerSeries> {
    require_q_gt_one(q)?;
    let mut coeffs = vec![Rational::zero(); order + 1];
    for lambda in partitions_up_to(order) {
        let term = q.pow(extra_q_exponent(&lambda))? / aut(&lambda, q)?;
        coeffs[lambda.size()] += term;
    }
    Ok(PowerSeries::from_coeffs(coeffs, order))
}

/// `sum_lambda u^{|lambda|} / |Aut(lambda)|`, the normalizer of `P_u`.
pub fn cl_weight_series(q: &Rational, order: usize) -> Result<PowerSeries> {
    weighted_sum(q, order, &aut_order, |_| 0)
}

/// `1/(1-u) * sum_lambda q^{(lambda'_1)^2} u^{|lambda|} / |Aut(lambda)|`.
pub fn eq1_middle_series(q: &Rational, order: usize) -> Result<PowerSeries> {
    eq1_middle_series_with(q, order, &aut_order)
}

pub fn eq1_middle_series_with(q: &Rational, order: usize, aut: AutFn<'_>) -> Result<PowerSeries> {
    let s = weighted_sum(q, order, aut, |l| (l.len() * l.len()) as i64)?;
    PowerSeries::geometric(order).mul(&s)
}

/// `sum_lambda q^{(lambda'_1)^2 - m_1(lambda)} u^{|lambda|} / |Aut(lambda)|`.
pub fn eq2_middle_series(q: &Rational, order: usize) -> Result<PowerSeries> {
    eq2_middle_series_with(q, order, &aut_order)
}

pub fn eq2_middle_series_with(q: &Rational, order: usize, aut: AutFn<'_>) -> Result<PowerSeries> {
    weighted_sum(q, order, aut, |l| (l.len() * l.len()) as i64 - l.multiplicity(1) as i64)
}

/// `prod_{phi != z} sum_lambda u^{d(phi)|lambda|} / |Aut(lambda)|_{q -> q^{d(phi)}}`
/// over monic irreducible `phi` over `F_q`.
///
/// The inner factor depends only on `d = deg(phi)`, so it is raised to the
/// number of irreducibles of degree `d`, less one at `d = 1` for `phi = z`.
pub fn product_over_irreducibles_series(q: u64, order: usize) -> Result<PowerSeries> {
    if q < 2 {
        return Err(usage(format!("q must be an integer >= 2, got {q}")));
    }
    let qr = Rational::from(q as i64);
    let mut acc = PowerSeries::one(order);
    for d in 1..=order {
        let mut exponent = irreducible_count(d as u64, q)?;
        if d == 1 {
            exponent -= 1;
        }
        let exponent = exponent
            .to_u64()
            .ok_or_else(|| usage("irreducible count does not fit in u64"))?;
        if exponent == 0 {
            continue;
        }
        let inner_order = order / d;
        let mut coeffs = vec![Rational::zero(); inner_order + 1];
        for lambda in partitions_up_to(inner_order) {
            coeffs[lambda.size()] += aut_order_qpower(&lambda, &qr, d as u32)?.recip()?;
        }
        let inner = PowerSeries::from_coeffs(coeffs, inner_order);
        // lift back to order N with u -> u^d
        let lifted =
            PowerSeries::from_coeffs(inner.coeffs().iter().cloned(), order).substitute_monomial(&Rational::one(), d);
        acc = acc.mul(&lifted.pow(exponent))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq1_middle_low_coefficients() {
        let s = eq1_middle_series(&Rational::from(2), 4).unwrap();
        assert_eq!(s.coeff(0), &Rational::one());
        assert_eq!(s.coeff(1), &Rational::from(3));
        assert_eq!(s.coeff(2), &Rational::frac(20, 3));
    }

    #[test]
    fn eq2_middle_low_coefficients() {
        let s = eq2_middle_series(&Rational::from(2), 4).unwrap();
        assert_eq!(s.coeff(0), &Rational::one());
        assert_eq!(s.coeff(1), &Rational::one());
        assert_eq!(s.coeff(2), &Rational::frac(5, 3));
    }

    #[test]
    fn product_over_irreducibles_is_geometric() {
        for q in [2, 3] {
            let s = product_over_irreducibles_series(q, 6).unwrap();
            assert_eq!(s, PowerSeries::geometric(6), "q={q}");
        }
        assert_eq!(product_over_irreducibles_series(5, 0).unwrap(), PowerSeries::one(0));
        assert!(product_over_irreducibles_series(1, 3).is_err());
    }
}
