//! Group orders and polynomial counts over finite fields.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Rational;
use crate::error::{usage, Result};

/// `|GL(n,q)| = prod_{i=0}^{n-1} (q^n - q^i)`, evaluated at any rational `q`.
pub fn gl_order(n: usize, q: &Rational) -> Rational {
    let qn = q.powu(n as u32);
    (0..n).map(|i| &qn - q.powu(i as u32)).product()
}

/// Moebius function by trial division.
pub fn mobius(mut n: u64) -> i32 {
    assert!(n >= 1, "mobius is defined for positive integers");
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`:
/// `(1/d) sum_{e | d} mu(e) q^{d/e}`.
pub fn irreducible_count(d: u64, q: u64) -> Result<BigInt> {
    if d == 0 {
        return Err(usage("degree must be at least 1"));
    }
    if q < 2 {
        return Err(usage(format!("field size must be at least 2, got {q}")));
    }
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mu = mobius(e);
        if mu != 0 {
            let term = num_traits::Pow::pow(&qb, (d / e) as u32);
            total += BigInt::from(mu) * term;
        }
    }
    debug_assert!((&total % BigInt::from(d)).is_zero());
    Ok(total / BigInt::from(d))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}
