use super::Partition;
use crate::error::{usage, Result};
use crate::exactq::{pochhammer_inv_q, require_q_gt_one, Rational};

/// Order of the automorphism group of an abelian `q`-group of type `lambda`:
/// `q^{sum_i (lambda'_i)^2} prod_i (1/q)_{m_i(lambda)}`.
pub fn aut_order(p: &Partition, q: &Rational) -> Result<Rational> {
    require_q_gt_one(q)?;
    let exponent: usize = p.conjugate().parts().iter().map(|c| c * c).sum();
    aut_order_with_exponent(p, q, exponent as i64)
}

/// The same formula with the `q`-exponent supplied by the caller.
pub(crate) fn aut_order_with_exponent(p: &Partition, q: &Rational, exponent: i64) -> Result<Rational> {
    let mut acc = q.pow(exponent)?;
    for (_, m) in p.multiplicities() {
        acc *= &pochhammer_inv_q(m, q)?;
    }
    Ok(acc)
}

/// [`aut_order`] with `q` replaced by `q^d`.
pub fn aut_order_qpower(p: &Partition, q: &Rational, d: u32) -> Result<Rational> {
    if d == 0 {
        return Err(usage("degree must be at least 1"));
    }
    aut_order(p, &q.powu(d))
}

/// Unnormalized Cohen-Lenstra weight `u^{|lambda|} / |Aut(lambda)|`.
/// Multiplying by `(u/q)_inf` gives the probability `P_u(lambda)`.
pub fn cl_weight(p: &Partition, u: &Rational, q: &Rational) -> Result<Rational> {
    require_unit_interval(u)?;
    let aut = aut_order(p, q)?;
    Ok(u.powu(p.size() as u32) / aut)
}

pub(crate) fn require_unit_interval(u: &Rational) -> Result<()> {
    if !u.is_positive() || u >= &Rational::one() {
        return Err(usage(format!("u must lie strictly between 0 and 1, got {u}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn aut_examples() {
        let two = Rational::from(2);
        assert_eq!(aut_order(&Partition::empty(), &two).unwrap(), Rational::one());
        assert_eq!(
            aut_order(&Partition::empty(), &Rational::frac(5, 2)).unwrap(),
            Rational::one()
        );
        assert_eq!(aut_order(&p(&[1, 1]), &two).unwrap(), Rational::from(6));
        assert_eq!(aut_order(&p(&[2]), &two).unwrap(), Rational::from(2));
        assert!(aut_order(&p(&[1]), &Rational::one()).is_err());
    }

    #[test]
    fn aut_qpower_examples() {
        let two = Rational::from(2);
        for l in [p(&[1]), p(&[2, 1]), p(&[3, 3, 1])] {
            assert_eq!(aut_order_qpower(&l, &two, 1).unwrap(), aut_order(&l, &two).unwrap());
        }
        assert_eq!(aut_order_qpower(&p(&[1]), &two, 2).unwrap(), Rational::from(3));
        assert_eq!(aut_order_qpower(&p(&[1, 1]), &two, 2).unwrap(), Rational::from(180));
        assert!(aut_order_qpower(&p(&[1]), &two, 0).is_err());
    }

    #[test]
    fn cl_weight_examples() {
        let two = Rational::from(2);
        let half = Rational::frac(1, 2);
        assert_eq!(cl_weight(&Partition::empty(), &half, &two).unwrap(), Rational::one());
        assert_eq!(cl_weight(&p(&[1]), &half, &two).unwrap(), Rational::frac(1, 2));
        assert_eq!(cl_weight(&p(&[1, 1]), &half, &two).unwrap(), Rational::frac(1, 24));
        assert!(cl_weight(&p(&[1]), &Rational::one(), &two).is_err());
        assert!(cl_weight(&p(&[1]), &Rational::zero(), &two).is_err());
    }
}
