//! Closed-form q-series sides of the two generating functions.

use crate::error::Result;
use crate::exactq::{
    pochhammer_infinite_u_over_q, pochhammer_inv_q, pochhammer_u_over_q, require_q_gt_one, PowerSeries, Rational,
};

/// `1/(1-u) * sum_{a>=0} u^a / ((1/q)_a (u/q)_a)` truncated at `order`.
pub fn eq1_rhs_series(q: &Rational, order: usize) -> Result<PowerSeries> {
    require_q_gt_one(q)?;
    let mut sum = PowerSeries::zero(order);
    for a in 0..=order {
        let lead = pochhammer_inv_q(a, q)?.recip()?;
        let term = PowerSeries::monomial(lead, a, order).div(&pochhammer_u_over_q(a, q, order)?)?;
        sum = sum.add(&term)?;
    }
    PowerSeries::geometric(order).mul(&sum)
}

/// `1/(u/q)_inf * sum_{c>=0} u^{2c} / (q^{c^2} (1/q)_c (u/q)_c)` truncated at `order`.
pub fn eq2_rhs_series(q: &Rational, order: usize) -> Result<PowerSeries> {
    require_q_gt_one(q)?;
    let mut sum = PowerSeries::zero(order);
    for c in (0..).take_while(|c| 2 * c <= order) {
        let lead = (q.powu((c * c) as u32) * pochhammer_inv_q(c, q)?).recip()?;
        let term = PowerSeries::monomial(lead, 2 * c, order).div(&pochhammer_u_over_q(c, q, order)?)?;
        sum = sum.add(&term)?;
    }
    sum.div(&pochhammer_infinite_u_over_q(q, order)?)
}

/// `u^a / (q^{a^2} (1/q)_a (u/q)_a)`: generating function of
/// `u^{|lambda|}/|Aut(lambda)|` over partitions with exactly `a` parts.
pub fn parts_count_series(a: usize, q: &Rational, order: usize) -> Result<PowerSeries> {
    require_q_gt_one(q)?;
    let lead = (q.powu((a * a) as u32) * pochhammer_inv_q(a, q)?).recip()?;
    PowerSeries::monomial(lead, a, order).div(&pochhammer_u_over_q(a, q, order)?)
}

/// `u^{2a-b} / (q^{a^2+(a-b)^2} (1/q)_b (1/q)_{a-b} (u/q)_{a-b})`: the same sum
/// restricted further to `m_1(lambda) = b`.
pub fn parts_and_ones_series(a: usize, b: usize, q: &Rational, order: usize) -> Result<PowerSeries> {
    require_q_gt_one(q)?;
    if b > a {
        return Ok(PowerSeries::zero(order));
    }
    let c = a - b;
    let lead = (q.powu((a * a + c * c) as u32) * pochhammer_inv_q(b, q)? * pochhammer_inv_q(c, q)?).recip()?;
    PowerSeries::monomial(lead, 2 * a - b, order).div(&pochhammer_u_over_q(c, q, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq1_rhs_low_coefficients() {
        let s = eq1_rhs_series(&Rational::from(2), 8).unwrap();
        assert_eq!(s.coeff(0), &Rational::one());
        assert_eq!(s.coeff(1), &Rational::from(3));
        assert_eq!(s.coeff(2), &Rational::frac(20, 3));
    }

    #[test]
    fn eq2_rhs_low_coefficients() {
        let s = eq2_rhs_series(&Rational::from(2), 8).unwrap();
        assert_eq!(s.coeff(0), &Rational::one());
        assert_eq!(s.coeff(1), &Rational::one());
        assert_eq!(s.coeff(2), &Rational::frac(5, 3));
        let s3 = eq2_rhs_series(&Rational::from(3), 4).unwrap();
        assert_eq!(s3.coeff(2), &Rational::frac(33, 48));
    }

    #[test]
    fn order_zero() {
        assert_eq!(eq1_rhs_series(&Rational::from(3), 0).unwrap(), PowerSeries::one(0));
        assert_eq!(eq2_rhs_series(&Rational::from(3), 0).unwrap(), PowerSeries::one(0));
    }

    #[test]
    fn q_domain() {
        assert!(eq1_rhs_series(&Rational::one(), 3).is_err());
        assert!(eq2_rhs_series(&Rational::frac(1, 2), 3).is_err());
    }
}
