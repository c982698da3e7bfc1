//! Exhaustive counts over `Mat_n(F_p)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{annihilator_basis, annihilator_dimension, check_prime, jordan_zero_data, OracleConfig, PrimeFieldMatrix};
use crate::error::{Error, Result};
use crate::par::{map_chunks, map_slice};
use crate::partitions::Partition;

const CHUNK: u64 = 1 << 12;

/// `p^{n^2}`, the number of matrices to enumerate, checked against the outer budget.
pub(crate) fn outer_size(n: usize, p: u32, cfg: &OracleConfig) -> Result<u64> {
    check_prime(p)?;
    let total = (p as u128).checked_pow((n * n) as u32);
    match total {
        Some(t) if t <= cfg.outer_budget => Ok(t as u64),
        _ => Err(Error::BudgetExceeded {
            what: "outer matrices",
            needed: match total {
                Some(t) => t.to_string(),
                None => format!("{p}^{}", n * n),
            },
            budget: cfg.outer_budget.to_string(),
        }),
    }
}

fn pow_big(p: u32, k: usize) -> BigUint {
    num_traits::Pow::pow(BigUint::from(p), k as u32)
}

/// `|{(A,B) : AB = BA = 0}|`, computed as `sum_A p^{dim ann(A)}`.
pub fn count_pairs(n: usize, p: u32, cfg: &OracleConfig) -> Result<BigUint> {
    let total = outer_size(n, p, cfg)?;
    let nn = n * n;
    let histograms = map_chunks(total, CHUNK, cfg.execution, |range| {
        let mut hist = vec![0u64; nn + 1];
        for idx in range {
            hist[annihilator_dimension(&PrimeFieldMatrix::from_index(n, p, idx))] += 1;
        }
        hist
    });
    let mut hist = vec![0u64; nn + 1];
    for h in histograms {
        for (acc, x) in hist.iter_mut().zip(h) {
            *acc += x;
        }
    }
    Ok(hist
        .iter()
        .enumerate()
        .map(|(dim, &count)| BigUint::from(count) * pow_big(p, dim))
        .sum())
}

/// Every nilpotent matrix in enumeration order, with its annihilator dimension.
pub(crate) fn nilpotent_matrices(n: usize, p: u32, cfg: &OracleConfig) -> Result<Vec<(PrimeFieldMatrix, usize)>> {
    let total = outer_size(n, p, cfg)?;
    let chunks = map_chunks(total, CHUNK, cfg.execution, |range| {
        range
            .map(|idx| PrimeFieldMatrix::from_index(n, p, idx))
            .filter(PrimeFieldMatrix::is_nilpotent)
            .map(|a| {
                let dim = annihilator_dimension(&a);
                (a, dim)
            })
            .collect::<Vec<_>>()
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Refuses when `sum p^{dim}` over the given matrices exceeds the inner budget.
pub(crate) fn check_inner(p: u32, mats: &[(PrimeFieldMatrix, usize)], cfg: &OracleConfig) -> Result<()> {
    let needed: BigUint = mats.iter().map(|(_, dim)| pow_big(p, *dim)).sum();
    if needed > BigUint::from(cfg.inner_budget) {
        return Err(Error::BudgetExceeded {
            what: "inner annihilator candidates",
            needed: needed.to_string(),
            budget: cfg.inner_budget.to_string(),
        });
    }
    Ok(())
}

/// Number of nilpotent `B` with `AB = BA = 0`, by walking every element of the
/// solution space spanned by the annihilator basis.
pub fn count_nilpotent_annihilators(a: &PrimeFieldMatrix) -> u64 {
    let (n, p) = (a.n(), a.p());
    let basis = annihilator_basis(a);
    let k = basis.len();
    let mut digits = vec![0u32; k];
    let mut count = 0u64;
    loop {
        let mut entries = vec![0u32; n * n];
        for (c, b) in digits.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            for (e, &x) in entries.iter_mut().zip(b.entries()) {
                *e = (*e + c * x) % p;
            }
        }
        if PrimeFieldMatrix::from_raw(n, p, entries).is_nilpotent() {
            count += 1;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == k {
                return count;
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// `|{(A,B) nilpotent : AB = BA = 0}|`.
pub fn count_nilpotent_pairs(n: usize, p: u32, cfg: &OracleConfig) -> Result<BigUint> {
    let mats = nilpotent_matrices(n, p, cfg)?;
    check_inner(p, &mats, cfg)?;
    let counts = map_slice(&mats, cfg.execution, |(a, _)| count_nilpotent_annihilators(a));
    Ok(counts.into_iter().map(BigUint::from).sum())
}

/// Number of nilpotent matrices of each Jordan type `lambda |- n`.
pub fn count_nilpotent_by_type(n: usize, p: u32, cfg: &OracleConfig) -> Result<BTreeMap<Partition, BigUint>> {
    let total = outer_size(n, p, cfg)?;
    let chunks = map_chunks(total, CHUNK, cfg.execution, |range| {
        let mut local: BTreeMap<Partition, u64> = BTreeMap::new();
        for idx in range {
            let a = PrimeFieldMatrix::from_index(n, p, idx);
            if let Some(t) = jordan_zero_data(&a).nilpotent_type {
                *local.entry(t).or_default() += 1;
            }
        }
        local
    });
    let mut out: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for local in chunks {
        for (t, c) in local {
            *out.entry(t).or_insert_with(BigUint::zero) += BigUint::from(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn count_pairs_small() {
        assert_eq!(count_pairs(0, 2, &cfg()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_pairs(0, 5, &cfg()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_pairs(1, 2, &cfg()).unwrap(), BigUint::from(3u32));
        assert_eq!(count_pairs(2, 2, &cfg()).unwrap(), BigUint::from(40u32));
    }

    #[test]
    fn count_nilpotent_pairs_small() {
        assert_eq!(count_nilpotent_pairs(1, 2, &cfg()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_nilpotent_pairs(1, 5, &cfg()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_nilpotent_pairs(2, 2, &cfg()).unwrap(), BigUint::from(10u32));
        assert_eq!(count_nilpotent_pairs(2, 3, &cfg()).unwrap(), BigUint::from(33u32));
    }

    #[test]
    fn by_type_n2_p2() {
        let got = count_nilpotent_by_type(2, 2, &cfg()).unwrap();
        let two = Partition::new(vec![2]).unwrap();
        let ones = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[&two], BigUint::from(3u32));
        assert_eq!(got[&ones], BigUint::from(1u32));
    }

    #[test]
    fn budget_refusal() {
        let tight = OracleConfig {
            outer_budget: 15,
            ..OracleConfig::default()
        };
        assert!(matches!(count_pairs(2, 2, &tight), Err(Error::BudgetExceeded { .. })));
        let tight_inner = OracleConfig {
            inner_budget: 10,
            ..OracleConfig::default()
        };
        assert!(matches!(
            count_nilpotent_pairs(2, 2, &tight_inner),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(count_pairs(2, 4, &cfg()).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let seq = OracleConfig {
            execution: crate::Execution::Sequential,
            ..OracleConfig::default()
        };
        let par = OracleConfig {
            execution: crate::Execution::Parallel,
            ..OracleConfig::default()
        };
        assert_eq!(count_pairs(3, 2, &seq).unwrap(), count_pairs(3, 2, &par).unwrap());
        assert_eq!(
            count_nilpotent_pairs(3, 2, &seq).unwrap(),
            count_nilpotent_pairs(3, 2, &par).unwrap()
        );
    }
}
