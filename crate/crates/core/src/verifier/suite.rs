use std::fmt;
use std::str::FromStr;

use super::{Fault, Verifier};
use crate::clsampler::SamplerConfig;
use crate::error::{usage, Error, Result};
use crate::exactq::Rational;
use crate::fforacle::OracleConfig;
use crate::par::map_slice;
use crate::report::VerificationReport;

/// A named group of checks, selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Mutually annihilating pairs, plus the product over irreducibles.
    Eq1,
    /// Nilpotent pairs, plus the identity for `1/(u/q)_inf`.
    Eq2,
    /// Annihilator dimensions, nilpotent annihilator counts and nilpotent Jordan type counts.
    Lemmas,
    /// Kernel rows, the laws of `lambda'_1` and `(lambda'_1, m_1)`, and Monte Carlo.
    Sampler,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq1" => Ok(Suite::Eq1),
            "eq2" => Ok(Suite::Eq2),
            "lemmas" => Ok(Suite::Lemmas),
            "sampler" => Ok(Suite::Sampler),
            "all" => Ok(Suite::All),
            _ => Err(usage(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Eq1 => "eq1",
            Suite::Eq2 => "eq2",
            Suite::Lemmas => "lemmas",
            Suite::Sampler => "sampler",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Primes used by the matrix oracle.
    pub primes: Vec<u32>,
    /// Values of `q` for the series-level identities.
    pub rational_qs: Vec<Rational>,
    pub u: Rational,
    pub order: usize,
    pub n_max: usize,
    /// Extra `(n, p)` pairs for the Jordan type counts.
    pub by_type_extra: Vec<(usize, u32)>,
    /// Also run the nilpotent-pairs oracle at `n = 4, q = 2`.
    pub eq2_extended: bool,
    pub sampler_q: u64,
    pub trials: u64,
    pub seed: u64,
    pub kernel_rows: usize,
    pub kernel_us: Vec<Rational>,
    pub corollary_rows: usize,
    pub oracle: OracleConfig,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            primes: vec![2, 3],
            rational_qs: vec![
                Rational::from(2),
                Rational::from(3),
                Rational::frac(5, 2),
                Rational::from(10),
            ],
            u: Rational::frac(1, 2),
            order: 8,
            n_max: 3,
            by_type_extra: vec![(4, 2)],
            eq2_extended: false,
            sampler_q: 2,
            trials: 100_000,
            seed: 1,
            kernel_rows: 12,
            kernel_us: vec![Rational::frac(1, 2), Rational::frac(1, 3), Rational::frac(9, 10)],
            corollary_rows: 10,
            oracle: OracleConfig::default(),
            fault: None,
        }
    }
}

enum Job {
    Eq1(Rational, Option<usize>),
    Eq2(Rational, Option<usize>),
    Lemma2(usize, u32),
    Lemma3(usize, u32),
    ByType(usize, u32),
    Irreducible(u64),
    Wellknown(Rational),
    KernelRows(Rational, Rational),
    Cor1Part1(Rational),
    Cor1Part2(Rational),
    Sampler,
}

impl SuiteConfig {
    /// `q` values for the identity checks: every prime (with the oracle), then
    /// each remaining rational `q` (series only).
    fn eq_targets(&self) -> Vec<(Rational, Option<usize>)> {
        let mut out: Vec<(Rational, Option<usize>)> = self
            .primes
            .iter()
            .map(|&p| (Rational::from(p as i64), Some(self.n_max)))
            .collect();
        for q in &self.rational_qs {
            if !out.iter().any(|(r, _)| r == q) {
                out.push((q.clone(), None));
            }
        }
        out
    }

    fn jobs(&self, suite: Suite) -> Vec<Job> {
        let mut jobs = Vec::new();
        if suite.includes(Suite::Eq1) {
            for (q, n) in self.eq_targets() {
                jobs.push(Job::Eq1(q, n));
            }
            for &p in &self.primes {
                jobs.push(Job::Irreducible(p as u64));
            }
        }
        if suite.includes(Suite::Eq2) {
            for (q, n) in self.eq_targets() {
                jobs.push(Job::Eq2(q, n));
            }
            if self.eq2_extended {
                jobs.push(Job::Eq2(Rational::from(2), Some(4)));
            }
            for q in &self.rational_qs {
                jobs.push(Job::Wellknown(q.clone()));
            }
        }
        if suite.includes(Suite::Lemmas) {
            let mut by_type = Vec::new();
            for n in 1..=self.n_max {
                for &p in &self.primes {
                    jobs.push(Job::Lemma2(n, p));
                    jobs.push(Job::Lemma3(n, p));
                    by_type.push((n, p));
                }
            }
            for &np in &self.by_type_extra {
                if !by_type.contains(&np) {
                    by_type.push(np);
                }
            }
            jobs.extend(by_type.into_iter().map(|(n, p)| Job::ByType(n, p)));
        }
        if suite.includes(Suite::Sampler) {
            for &p in &self.primes {
                for u in &self.kernel_us {
                    jobs.push(Job::KernelRows(Rational::from(p as i64), u.clone()));
                }
            }
            for q in &self.rational_qs {
                jobs.push(Job::Cor1Part1(q.clone()));
                jobs.push(Job::Cor1Part2(q.clone()));
            }
            jobs.push(Job::Sampler);
        }
        jobs
    }
}

fn run_job(v: &Verifier, cfg: &SuiteConfig, job: &Job) -> Result<VerificationReport> {
    match job {
        Job::Eq1(q, n) => v.run_eq1_check(q, *n, cfg.order).map(|r| r.0),
        Job::Eq2(q, n) => v.run_eq2_check(q, *n, cfg.order).map(|r| r.0),
        Job::Lemma2(n, p) => v.lemma2(*n, *p),
        Job::Lemma3(n, p) => v.lemma3(*n, *p),
        Job::ByType(n, p) => v.counter_nilpotent(*n, *p),
        Job::Irreducible(q) => v.irreducible_product(*q, 6),
        Job::Wellknown(q) => v.wellknown_identity(q, cfg.order),
        Job::KernelRows(q, u) => v.thm1_rows(q, u, cfg.kernel_rows),
        Job::Cor1Part1(q) => v.cor1_part1(q, cfg.order),
        Job::Cor1Part2(q) => v.cor1_part2(q, &cfg.u, cfg.corollary_rows, cfg.order),
        Job::Sampler => {
            let sc = SamplerConfig::new(cfg.sampler_q, cfg.u.clone(), cfg.seed, cfg.trials)?;
            v.sampler(&sc).map(|r| r.0)
        }
    }
}

/// Runs one suite. Reports are sorted by check name, so the output does not
/// depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Result<Vec<VerificationReport>> {
    let v = Verifier::new(cfg.oracle, cfg.fault);
    let jobs = cfg.jobs(suite);
    let mut reports = map_slice(&jobs, cfg.oracle.execution, |job| run_job(&v, cfg, job))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    Ok(reports)
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    run_suite(cfg, Suite::All)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn quick() -> SuiteConfig {
        SuiteConfig {
            n_max: 2,
            order: 5,
            trials: 20_000,
            by_type_extra: vec![],
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn quick_suite_passes_and_is_sorted() {
        let reports = run_all(&quick()).unwrap();
        assert!(reports.iter().all(VerificationReport::passed), "{reports:#?}");
        assert!(reports.windows(2).all(|w| w[0].check_name < w[1].check_name));
        assert!(reports.iter().any(|r| r.check_name == "eq1 q=5/2"));
        assert!(reports.iter().any(|r| r.check_name == "eq2 q=3 n_max=2"));
    }

    #[test]
    fn fault_is_caught() {
        let cfg = SuiteConfig {
            fault: Some(Fault::PerturbAutExponent),
            ..quick()
        };
        let reports = run_suite(&cfg, Suite::Eq1).unwrap();
        assert!(reports.iter().any(|r| r.status == Status::Fail));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Eq1, Suite::Eq2, Suite::Lemmas, Suite::Sampler, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
