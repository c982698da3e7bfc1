use std::fmt;

use super::TAIL_BITS;
use crate::error::{Error, Result};
use crate::exactq::{pochhammer_inv_q, pochhammer_scalar, require_q_gt_one, Rational};
use crate::partitions::require_unit_interval;

/// Where a row of the chain starts: a finite column size or the initial `inf` state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSource {
    Finite(usize),
    Infinity,
}

impl fmt::Display for RowSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowSource::Finite(a) => write!(f, "{a}"),
            RowSource::Infinity => write!(f, "inf"),
        }
    }
}

/// Transition probabilities `K(a, b)` out of one state, indexed by `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRow {
    pub source: RowSource,
    pub probabilities: Vec<Rational>,
    /// Mass beyond the last computed `b`; zero for finite rows.
    pub truncated_mass: Rational,
}

impl KernelRow {
    pub fn total(&self) -> Rational {
        self.probabilities.iter().sum()
    }

    /// Cumulative sums, with the truncated mass folded into the last entry.
    pub fn cdf(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        let mut out: Vec<Rational> = self
            .probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc.clone()
            })
            .collect();
        if let Some(last) = out.last_mut() {
            *last += &self.truncated_mass;
        }
        out
    }
}

pub(crate) fn validate(q: &Rational, u: &Rational) -> Result<()> {
    require_q_gt_one(q)?;
    require_unit_interval(u)
}

/// `(u/q)_a` evaluated at a numeric `u`.
fn u_over_q_poch(a: usize, q: &Rational, u: &Rational) -> Result<Rational> {
    pochhammer_scalar(&(u / q), a, q)
}

fn nonnegative(a: RowSource, b: usize, value: Rational) -> Result<Rational> {
    if value.is_negative() {
        return Err(Error::NegativeProbability {
            a: a.to_string(),
            b,
            value: value.to_string(),
        });
    }
    Ok(value)
}

/// `K(a,b) = u^b (1/q)_a (u/q)_a / (q^{b^2} (1/q)_{a-b} (1/q)_b (u/q)_b)` for `b <= a`.
pub fn kernel_entry(a: usize, b: usize, q: &Rational, u: &Rational) -> Result<Rational> {
    validate(q, u)?;
    if b > a {
        return Ok(Rational::zero());
    }
    let num = u.powu(b as u32) * pochhammer_inv_q(a, q)? * u_over_q_poch(a, q, u)?;
    let den = q.powu((b * b) as u32) * pochhammer_inv_q(a - b, q)? * pochhammer_inv_q(b, q)? * u_over_q_poch(b, q, u)?;
    nonnegative(RowSource::Finite(a), b, num.checked_div(&den)?)
}

/// The finite row `K(a, 0..=a)`; sums to exactly 1.
pub fn kernel_row(a: usize, q: &Rational, u: &Rational) -> Result<KernelRow> {
    validate(q, u)?;
    let probabilities = (0..=a).map(|b| kernel_entry(a, b, q, u)).collect::<Result<Vec<_>>>()?;
    Ok(KernelRow {
        source: RowSource::Finite(a),
        probabilities,
        truncated_mass: Rational::zero(),
    })
}

/// Law of `lambda'_1` under `P_u`, given the value `z` used for `(u/q)_inf`:
/// `z / (u/q)_a * u^a / (q^{a^2} (1/q)_a)`.
pub fn corollary_part1(a: usize, q: &Rational, u: &Rational, z: &Rational) -> Result<Rational> {
    validate(q, u)?;
    let den = u_over_q_poch(a, q, u)? * q.powu((a * a) as u32) * pochhammer_inv_q(a, q)?;
    nonnegative(RowSource::Infinity, a, (z * u.powu(a as u32)).checked_div(&den)?)
}

/// Joint law of `(lambda'_1, m_1) = (a, b)` under `P_u`:
/// `u^{2a-b} z / (q^{a^2 + (a-b)^2} (1/q)_b (1/q)_{a-b} (u/q)_{a-b})`.
pub fn corollary_part2(a: usize, b: usize, q: &Rational, u: &Rational, z: &Rational) -> Result<Rational> {
    validate(q, u)?;
    if b > a {
        return Ok(Rational::zero());
    }
    let c = a - b;
    let num = u.powu((2 * a - b) as u32) * z;
    let den =
        q.powu((a * a + c * c) as u32) * pochhammer_inv_q(b, q)? * pochhammer_inv_q(c, q)? * u_over_q_poch(c, q, u)?;
    num.checked_div(&den)
}

/// The initial row `K(inf, b)`, computed from the closed form of the law of
/// `lambda'_1` until the remaining mass drops below `2^{-60}`.
///
/// `z` is the numeric value of `(u/q)_inf` to use.
pub fn kernel_row_infinite_with(q: &Rational, u: &Rational, z: &Rational) -> Result<KernelRow> {
    validate(q, u)?;
    let tail = Rational::one() / Rational::from(2).powu(TAIL_BITS);
    let mut probabilities = Vec::new();
    let mut remaining = Rational::one();
    loop {
        let b = probabilities.len();
        let k = corollary_part1(b, q, u, z)?;
        remaining -= &k;
        probabilities.push(k);
        if remaining < tail {
            break;
        }
    }
    if remaining.is_negative() {
        return Err(Error::CrossCheck(format!(
            "initial kernel row overshoots 1 by {} at q={q}, u={u}",
            -remaining
        )));
    }
    Ok(KernelRow {
        source: RowSource::Infinity,
        probabilities,
        truncated_mass: remaining,
    })
}

/// [`kernel_row_infinite_with`] using [`super::cl_normalizer`] for `(u/q)_inf`.
pub fn kernel_row_infinite(q: &Rational, u: &Rational) -> Result<KernelRow> {
    let z = super::cl_normalizer(q, u)?;
    kernel_row_infinite_with(q, u, &z.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn row_zero_is_point_mass() {
        let row = kernel_row(0, &r(3, 1), &r(1, 3)).unwrap();
        assert_eq!(row.probabilities, vec![Rational::one()]);
    }

    #[test]
    fn row_one_by_hand() {
        // K(1,0) = (1/2)(3/4) / (1/2) = 3/4, K(1,1) = (1/2)(1/2)(3/4) / (2 (1/2)(3/4)) = 1/4
        let row = kernel_row(1, &r(2, 1), &r(1, 2)).unwrap();
        assert_eq!(row.probabilities, vec![r(3, 4), r(1, 4)]);
        assert_eq!(row.total(), Rational::one());
    }

    #[test]
    fn out_of_support_is_zero() {
        assert_eq!(kernel_entry(2, 3, &r(2, 1), &r(1, 2)).unwrap(), Rational::zero());
    }

    #[test]
    fn rows_are_stochastic() {
        for q in [r(2, 1), r(3, 1)] {
            for u in [r(1, 2), r(1, 3), r(9, 10)] {
                for a in 0..=12 {
                    let row = kernel_row(a, &q, &u).unwrap();
                    assert_eq!(row.total(), Rational::one(), "a={a} q={q} u={u}");
                    assert!(row.probabilities.iter().all(|p| !p.is_negative()));
                }
            }
        }
    }

    #[test]
    fn parameter_domain() {
        assert!(kernel_row(2, &r(1, 1), &r(1, 2)).is_err());
        assert!(kernel_row(2, &r(2, 1), &r(1, 1)).is_err());
        assert!(kernel_row(2, &r(2, 1), &r(0, 1)).is_err());
        assert!(kernel_row_infinite(&r(2, 1), &r(3, 2)).is_err());
    }

    #[test]
    fn part2_sums_to_part1() {
        let (q, u, z) = (r(2, 1), r(1, 2), r(7, 11));
        for a in 0..=10 {
            let s: Rational = (0..=a).map(|b| corollary_part2(a, b, &q, &u, &z).unwrap()).sum();
            assert_eq!(s, corollary_part1(a, &q, &u, &z).unwrap());
        }
        assert_eq!(corollary_part2(0, 0, &q, &u, &z).unwrap(), z);
    }

    #[test]
    fn infinite_row_properties() {
        let (q, u) = (r(2, 1), r(1, 2));
        let z = super::super::cl_normalizer(&q, &u).unwrap().value;
        let row = kernel_row_infinite(&q, &u).unwrap();
        assert_eq!(row.probabilities[0], z);
        assert!(row.truncated_mass < Rational::one() / Rational::from(2).powu(60));
        assert!(!row.truncated_mass.is_negative());
        assert_eq!(row.total() + &row.truncated_mass, Rational::one());
        let cdf = row.cdf();
        assert!(cdf.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(cdf.last().unwrap(), &Rational::one());
    }

    #[test]
    fn infinite_row_decay_ratio() {
        // K(inf,b+1)/K(inf,b) = u / (q^{2b+1} (1 - u/q^{b+1}) (1 - 1/q^{b+1})) <= 4u/q^{2b+1}
        let (q, u) = (r(2, 1), r(1, 2));
        let row = kernel_row_infinite(&q, &u).unwrap();
        for b in 0..row.probabilities.len() - 1 {
            let ratio = &row.probabilities[b + 1] / &row.probabilities[b];
            let qb1 = q.powu(b as u32 + 1);
            let expected = &u
                / (q.powu(2 * b as u32 + 1)
                    * (Rational::one() - &u / &qb1)
                    * (Rational::one() - Rational::one() / &qb1));
            assert_eq!(ratio, expected);
            assert!(ratio <= Rational::from(4) * &u / q.powu(2 * b as u32 + 1));
        }
    }
}
