//! Empirical frequencies from the sampler against the exact laws of
//! `lambda'_1` and `(lambda'_1, m_1)`, plus `P_u` itself on small partitions.

use serde::Serialize;

use super::{corollary_part1, corollary_part2, ClSampler, SamplerConfig, Tally};
use crate::error::Result;
use crate::exactq::Rational;
use crate::par::Execution;
use crate::partitions::{cl_weight, partitions_up_to};

/// Buckets with exact probability below this are reported but not judged.
pub fn min_judged_probability() -> Rational {
    Rational::frac(1, 1000)
}

/// Largest accepted `z^2`, i.e. `|z| <= 4`.
pub const Z_SQUARED_LIMIT: i64 = 16;

/// Largest partition size in the direct `P_u(lambda)` comparison.
pub const DIRECT_MAX_SIZE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bucket {
    pub label: String,
    pub observed: u64,
    pub empirical: Rational,
    pub exact: Rational,
    /// `trials * (empirical - exact)^2 / (exact (1 - exact))`, exact.
    pub z_squared: Rational,
    /// Whether this bucket counts toward pass/fail.
    pub judged: bool,
}

impl Bucket {
    fn new(label: String, observed: u64, trials: u64, exact: Rational, judge_all: bool) -> Self {
        let t = Rational::from(trials as i64);
        let empirical = Rational::from(observed as i64) / &t;
        let diff = &empirical - &exact;
        let var = &exact * (Rational::one() - &exact);
        let z_squared = if var.is_zero() {
            Rational::zero()
        } else {
            t * &diff * &diff / var
        };
        let judged = judge_all || exact >= min_judged_probability();
        Bucket {
            label,
            observed,
            empirical,
            exact,
            z_squared,
            judged,
        }
    }

    /// Signed z-score as a float, for display only.
    pub fn z(&self) -> f64 {
        let z = self.z_squared.to_f64().sqrt();
        if self.empirical < self.exact {
            -z
        } else {
            z
        }
    }

    pub fn within_limit(&self) -> bool {
        self.z_squared <= Rational::from(Z_SQUARED_LIMIT)
    }
}

/// Outcome of [`empirical_vs_corollary`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SamplerComparison {
    pub q: u64,
    pub u: Rational,
    pub seed: u64,
    pub trials: u64,
    /// Truncated upper bound used for `(u/q)_inf`.
    pub normalizer: Rational,
    pub normalizer_factors: usize,
    pub initial_row_truncated_mass: Rational,
    /// Law of `lambda'_1 = a`.
    pub marginal: Vec<Bucket>,
    /// Joint law of `(lambda'_1, m_1) = (a, b)`.
    pub joint: Vec<Bucket>,
    /// `P_u(lambda)` for every `|lambda| <= 4`.
    pub direct: Vec<Bucket>,
}

impl SamplerComparison {
    pub fn judged(&self) -> impl Iterator<Item = &Bucket> {
        self.marginal
            .iter()
            .chain(&self.joint)
            .chain(&self.direct)
            .filter(|b| b.judged)
    }

    pub fn passed(&self) -> bool {
        self.judged().all(Bucket::within_limit)
    }

    pub fn worst(&self) -> Option<&Bucket> {
        self.judged().max_by(|a, b| a.z_squared.cmp(&b.z_squared))
    }
}

/// Samples `cfg.trials` partitions and compares against the exact laws.
pub fn empirical_vs_corollary(cfg: &SamplerConfig, exec: Execution) -> Result<SamplerComparison> {
    let sampler = ClSampler::new(cfg.clone())?;
    let tally = sampler.run(exec);
    compare_tally(&sampler, &tally)
}

pub fn compare_tally(sampler: &ClSampler, tally: &Tally) -> Result<SamplerComparison> {
    let cfg = sampler.config();
    let q = cfg.q_rational();
    let u = &cfg.u;
    let z = &sampler.normalizer().value;
    let max_a = (sampler.initial_row().probabilities.len() - 1).max(tally.max_columns());

    let mut marginal = Vec::new();
    let mut joint = Vec::new();
    for a in 0..=max_a {
        let observed = tally.count_where(|p| p.len() == a);
        marginal.push(Bucket::new(
            format!("a={a}"),
            observed,
            tally.trials,
            corollary_part1(a, &q, u, z)?,
            false,
        ));
        for b in 0..=a {
            let observed = tally.count_where(|p| p.len() == a && p.multiplicity(1) == b);
            joint.push(Bucket::new(
                format!("a={a},b={b}"),
                observed,
                tally.trials,
                corollary_part2(a, b, &q, u, z)?,
                false,
            ));
        }
    }

    let direct = partitions_up_to(DIRECT_MAX_SIZE)
        .map(|lambda| {
            let exact = z * cl_weight(&lambda, u, &q)?;
            let observed = tally.counts.get(&lambda).copied().unwrap_or(0);
            Ok(Bucket::new(
                format!("lambda={lambda}"),
                observed,
                tally.trials,
                exact,
                true,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SamplerComparison {
        q: cfg.q,
        u: u.clone(),
        seed: cfg.seed,
        trials: cfg.trials,
        normalizer: z.clone(),
        normalizer_factors: sampler.normalizer().factors,
        initial_row_truncated_mass: sampler.initial_row().truncated_mass.clone(),
        marginal,
        joint,
        direct,
    })
}
