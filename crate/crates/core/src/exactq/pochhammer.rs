//! Descending q-Pochhammer symbols `(x)_i = (1-x)(1-x/q)...(1-x/q^{i-1})`
//! and the infinite product `(u/q)_inf` as truncated series.

use super::{PowerSeries, Rational};
use crate::error::{usage, Error, Result};

pub(crate) fn require_q_gt_one(q: &Rational) -> Result<()> {
    if q <= &Rational::one() {
        return Err(usage(format!("q must be greater than 1, got {q}")));
    }
    Ok(())
}

fn require_abs_q_gt_one(q: &Rational) -> Result<()> {
    if q.abs() <= Rational::one() {
        return Err(Error::Divergence { q: q.to_string() });
    }
    Ok(())
}

/// `prod_{k=0}^{i-1} (1 - x/q^k)` for a series argument `x`.
pub fn pochhammer_finite(x: &PowerSeries, i: usize, q: &Rational) -> Result<PowerSeries> {
    if q.is_zero() {
        return Err(usage("q must be nonzero"));
    }
    let n = x.order();
    let one = PowerSeries::one(n);
    let mut acc = PowerSeries::one(n);
    let mut qk_inv = Rational::one();
    for _ in 0..i {
        let factor = one.sub(&x.scale(&qk_inv))?;
        acc = acc.mul(&factor)?;
        qk_inv = qk_inv / q;
    }
    Ok(acc)
}

/// Scalar version of [`pochhammer_finite`].
pub fn pochhammer_scalar(x: &Rational, i: usize, q: &Rational) -> Result<Rational> {
    if q.is_zero() {
        return Err(usage("q must be nonzero"));
    }
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..i {
        acc *= &(Rational::one() - &term);
        term = term / q;
    }
    Ok(acc)
}

/// The series `u/q` at the given order.
pub fn u_over_q(q: &Rational, order: usize) -> Result<PowerSeries> {
    Ok(PowerSeries::monomial(q.recip()?, 1, order))
}

/// `(u/q)_a` as a truncated series.
pub fn pochhammer_u_over_q(a: usize, q: &Rational, order: usize) -> Result<PowerSeries> {
    pochhammer_finite(&u_over_q(q, order)?, a, q)
}

/// `(1/q)_a`, the scalar that appears throughout the automorphism formulas.
pub fn pochhammer_inv_q(a: usize, q: &Rational) -> Result<Rational> {
    pochhammer_scalar(&q.recip()?, a, q)
}

/// `sum_{b>=0} u^b / (q^b (1/q)_b)` truncated at `order`.
///
/// Terms with `b > order` vanish below `u^{order+1}`, so the partial sum over
/// `b = 0..=order` is exact at this truncation.
pub fn sum_wellknown_identity_lhs(q: &Rational, order: usize) -> Result<PowerSeries> {
    require_abs_q_gt_one(q)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for b in 0..=order {
        let denom = q.pow(b as i64)? * pochhammer_inv_q(b, q)?;
        coeffs.push(denom.recip()?);
    }
    Ok(PowerSeries::from_coeffs(coeffs, order))
}

/// Euler's alternating expansion
/// `(u/q)_inf = sum_j (-1)^j q^{-j(j+1)/2} u^j / (1/q)_j`.
pub fn euler_expansion_u_over_q(q: &Rational, order: usize) -> Result<PowerSeries> {
    require_abs_q_gt_one(q)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let tri = (j * (j + 1) / 2) as i64;
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = sign * q.pow(-tri)? / pochhammer_inv_q(j, q)?;
        coeffs.push(c);
    }
    Ok(PowerSeries::from_coeffs(coeffs, order))
}

/// `(u/q)_inf = prod_{k>=1} (1 - u/q^k)` truncated at `order`.
///
/// Every factor touches every coefficient, so no finite product is exact.
/// The series is computed as the inverse of [`sum_wellknown_identity_lhs`]
/// and checked against [`euler_expansion_u_over_q`].
pub fn pochhammer_infinite_u_over_q(q: &Rational, order: usize) -> Result<PowerSeries> {
    require_abs_q_gt_one(q)?;
    let via_inverse = sum_wellknown_identity_lhs(q, order)?.inverse()?;
    let via_euler = euler_expansion_u_over_q(q, order)?;
    if let Some(k) = via_inverse.first_mismatch(&via_euler) {
        return Err(Error::CrossCheck(format!(
            "(u/q)_inf at q={q}: coefficient u^{k} is {} by inversion but {} by Euler",
            via_inverse.coeff(k),
            via_euler.coeff(k)
        )));
    }
    Ok(via_inverse)
}

/// A numeric infinite product truncated once the factors are negligible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedProduct {
    pub value: Rational,
    /// Number of factors multiplied in.
    pub factors: usize,
}

/// `(x)_inf = prod_{k>=0} (1 - x/q^k)` for a numeric `x`, stopping once
/// `|x/q^k| < 2^{-bits}`. For `0 < x < 1` and `q > 1` the result is an upper
/// bound on the true product.
pub fn pochhammer_infinite_value(x: &Rational, q: &Rational, bits: u32) -> Result<TruncatedProduct> {
    require_abs_q_gt_one(q)?;
    let eps = Rational::from_int(1).checked_div(&Rational::from(2).powu(bits))?;
    let mut acc = Rational::one();
    let mut term = x.clone();
    let mut factors = 0;
    while term.abs() >= eps {
        acc *= &(Rational::one() - &term);
        term = term / q;
        factors += 1;
    }
    Ok(TruncatedProduct { value: acc, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn finite_examples() {
        let q = Rational::from(2);
        let x = PowerSeries::from_coeffs([r(7, 3), r(1, 5)], 4);
        assert_eq!(pochhammer_finite(&x, 0, &q).unwrap(), PowerSeries::one(4));
        let inv_q = PowerSeries::constant(r(1, 2), 3);
        assert_eq!(
            pochhammer_finite(&inv_q, 2, &q).unwrap(),
            PowerSeries::constant(r(3, 8), 3)
        );
        assert_eq!(pochhammer_inv_q(2, &q).unwrap(), r(3, 8));
        let expected = PowerSeries::from_coeffs([r(1, 1), r(-1, 2)], 3);
        assert_eq!(pochhammer_u_over_q(1, &q, 3).unwrap(), expected);
    }

    #[test]
    fn finite_recurrence() {
        for q in [r(2, 1), r(3, 1), r(5, 2), r(-7, 3)] {
            let x = PowerSeries::from_coeffs([r(1, 3), r(2, 1), r(-1, 4)], 5);
            for i in 0..6 {
                let lhs = pochhammer_finite(&x, i + 1, &q).unwrap();
                let factor = PowerSeries::one(5).sub(&x.scale(&q.pow(-(i as i64)).unwrap())).unwrap();
                let rhs = pochhammer_finite(&x, i, &q).unwrap().mul(&factor).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn zero_q_rejected() {
        assert!(pochhammer_scalar(&Rational::one(), 2, &Rational::zero()).is_err());
    }

    #[test]
    fn infinite_at_q2() {
        let q = Rational::from(2);
        let inf = pochhammer_infinite_u_over_q(&q, 8).unwrap();
        assert_eq!(inf.constant_term(), &Rational::one());
        let inv = inf.inverse().unwrap();
        // coefficients of sum_b u^b / (2^b (1/2)_b), b = 0..3, by hand:
        // 1, 1/(2*1/2) = 1, 1/(4*3/8) = 2/3, 1/(8*21/64) = 8/21
        assert_eq!(&inv.coeffs()[..4], &[r(1, 1), r(1, 1), r(2, 3), r(8, 21)]);
        assert_eq!(inf.mul(&inv).unwrap(), PowerSeries::one(8));
    }

    #[test]
    fn wellknown_identity_holds() {
        for q in [r(2, 1), r(3, 1), r(5, 2), r(10, 1)] {
            let lhs = sum_wellknown_identity_lhs(&q, 8).unwrap();
            let inf = pochhammer_infinite_u_over_q(&q, 8).unwrap();
            assert_eq!(lhs.mul(&inf).unwrap(), PowerSeries::one(8));
            assert_eq!(lhs.coeff(0), &Rational::one());
        }
        assert_eq!(
            sum_wellknown_identity_lhs(&r(2, 1), 3).unwrap().coeff(1),
            &Rational::one()
        );
    }

    #[test]
    fn divergent_q_rejected() {
        for q in [r(1, 1), r(1, 2), r(-1, 1), r(0, 1)] {
            assert!(matches!(
                pochhammer_infinite_u_over_q(&q, 4),
                Err(Error::Divergence { .. })
            ));
        }
    }

    #[test]
    fn infinite_value_is_upper_bound_and_close() {
        let q = Rational::from(2);
        let x = r(1, 4);
        let p80 = pochhammer_infinite_value(&x, &q, 80).unwrap();
        let p40 = pochhammer_infinite_value(&x, &q, 40).unwrap();
        assert!(p80.value <= p40.value);
        assert!(p80.factors > p40.factors);
        // agrees with the series (u/q)_inf evaluated at u = 1/2 to many digits
        let series = pochhammer_infinite_u_over_q(&q, 30).unwrap();
        let mut approx = Rational::zero();
        let mut upow = Rational::one();
        for c in series.coeffs() {
            approx += c * &upow;
            upow = upow * r(1, 2);
        }
        assert!((approx - &p80.value).abs() < r(1, 1_000_000_000));
    }
}
