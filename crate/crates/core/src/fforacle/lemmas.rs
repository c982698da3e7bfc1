//! Exhaustive checks of the annihilator counting lemmas.

use super::count::{check_inner, nilpotent_matrices, outer_size};
use super::{
    annihilator_dimension, count_nilpotent_annihilators, jordan_zero_data, rank, OracleConfig, PrimeFieldMatrix,
};
use crate::error::Result;
use crate::par::{map_chunks, map_slice};
use crate::report::{Anchor, Mismatch, VerificationReport};

/// Checks `dim {B : AB = BA = 0} = (n - rank A)^2` for every `A` in `Mat_n(F_p)`.
pub fn verify_lemma2(n: usize, p: u32, cfg: &OracleConfig) -> Result<VerificationReport> {
    let total = outer_size(n, p, cfg)?;
    let firsts = map_chunks(total, 1 << 12, cfg.execution, |range| {
        range.map(|idx| PrimeFieldMatrix::from_index(n, p, idx)).find_map(|a| {
            let dim = annihilator_dimension(&a);
            let m = n - rank(&a);
            (dim != m * m).then(|| {
                Mismatch::new(format!("A = {a}"))
                    .value("annihilator_dimension", dim)
                    .value("m_squared", m * m)
            })
        })
    });
    Ok(VerificationReport::new(format!("lemma2 n={n} p={p}"), Anchor::Lemma2)
        .param("n", n)
        .param("p", p)
        .param("matrices", total)
        .with_outcome(firsts.into_iter().flatten().next()))
}

/// Checks that every nilpotent `A` has exactly `p^{m^2 - d}` nilpotent annihilators `B`.
pub fn verify_lemma3(n: usize, p: u32, cfg: &OracleConfig) -> Result<VerificationReport> {
    let mats = nilpotent_matrices(n, p, cfg)?;
    check_inner(p, &mats, cfg)?;
    let results = map_slice(&mats, cfg.execution, |(a, _)| {
        let j = jordan_zero_data(a);
        let expected = (p as u64).pow((j.m * j.m - j.d) as u32);
        let got = count_nilpotent_annihilators(a);
        (got != expected).then(|| {
            Mismatch::new(format!("A = {a}"))
                .value("nilpotent_annihilators", got)
                .value("p^(m^2-d)", expected)
                .value("m", j.m)
                .value("d", j.d)
        })
    });
    Ok(VerificationReport::new(format!("lemma3 n={n} p={p}"), Anchor::Lemma3)
        .param("n", n)
        .param("p", p)
        .param("nilpotent_matrices", mats.len())
        .with_outcome(results.into_iter().flatten().next()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma2_small() {
        for (n, p) in [(0, 2), (1, 2), (2, 2), (2, 3)] {
            let r = verify_lemma2(n, p, &OracleConfig::default()).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn lemma3_small() {
        for (n, p) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let r = verify_lemma3(n, p, &OracleConfig::default()).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
