//! Truncated formal power series in `u` with exact rational coefficients.

use std::fmt;

use serde::Serialize;

use super::Rational;
use crate::error::{Error, Result};

/// A power series truncated at order `N`: coefficients of `u^0 ..= u^N`.
///
/// Every operation discards terms of degree above `N`, and binary operations
/// require both operands to share the same order.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * u^k`, or zero if `k` exceeds the order.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from leading coefficients, zero-padding or truncating to `order`.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Rational>, order: usize) -> Self {
        let mut c: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, Rational::zero());
        PowerSeries { coeffs: c }
    }

    /// Sum of `1 + u + u^2 + ...`, the expansion of `1/(1-u)`.
    pub fn geometric(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::one(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    fn check_order(&self, other: &PowerSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn scale(&self, c: &Rational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse by the standard recurrence
    /// `b_0 = 1/a_0`, `b_k = -(a_1 b_{k-1} + ... + a_k b_0) / a_0`.
    pub fn inverse(&self) -> Result<PowerSeries> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::SingularSeries);
        }
        let inv_a0 = a0.recip()?;
        let n = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(inv_a0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let aj = &self.coeffs[j];
                if !aj.is_zero() {
                    acc += aj * &b[k - j];
                }
            }
            b.push(-(acc * &inv_a0));
        }
        Ok(PowerSeries { coeffs: b })
    }

    /// `self / other`, i.e. `self * other^{-1}`.
    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.mul(&other.inverse()?)
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> PowerSeries {
        let mut base = self.clone();
        let mut acc = PowerSeries::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Substitutes `u -> c * u^k`, truncating at the same order.
    pub fn substitute_monomial(&self, c: &Rational, k: usize) -> PowerSeries {
        assert!(k >= 1, "substitution degree must be positive");
        let n = self.order();
        let mut out = PowerSeries::zero(n);
        let mut cpow = Rational::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k > n {
                break;
            }
            out.coeffs[i * k] = a * &cpow;
            cpow *= c;
        }
        out
    }

    /// First index where `self` and `other` differ, if any.
    pub fn first_mismatch(&self, other: &PowerSeries) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        (0..len).find(|&k| self.coeffs.get(k).unwrap_or(&zero) != other.coeffs.get(k).unwrap_or(&zero))
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(u^{})]", self.order() + 1)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})u")?,
                _ => write!(f, "({c})u^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.order() + 1)
    }
}
