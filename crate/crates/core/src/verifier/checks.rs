use num_bigint::BigUint;
use serde::Serialize;

use super::{eq1_rhs_series, eq2_rhs_series, parts_and_ones_series, parts_count_series};
use crate::clsampler::{
    cl_normalizer, corollary_part1, corollary_part2, empirical_vs_corollary, kernel_row, kernel_row_infinite,
    SamplerComparison, SamplerConfig, TAIL_BITS, Z_SQUARED_LIMIT,
};
use crate::error::{usage, Error, Result};
use crate::exactq::{
    gl_order, is_prime, pochhammer_infinite_u_over_q, sum_wellknown_identity_lhs, PowerSeries, Rational,
};
use crate::fforacle::{
    count_nilpotent_by_type, count_nilpotent_pairs, count_pairs, verify_lemma2, verify_lemma3, OracleConfig,
};
use crate::partitions::{
    aut_order, aut_order_with_exponent, enumerate_partitions, eq1_middle_series_with, eq2_middle_series_with,
    partitions_up_to, product_over_irreducibles_series, Partition,
};
use crate::report::{Anchor, Mismatch, VerificationReport};

/// The three coefficient sequences compared by an identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqTriple {
    pub q: Rational,
    /// `count / |GL(n,q)|` for `n = 0..=n_max`; absent when `q` is not prime.
    pub lhs_coeffs: Option<Vec<Rational>>,
    pub middle_coeffs: PowerSeries,
    pub rhs_coeffs: PowerSeries,
}

pub type Eq1Triple = EqTriple;
pub type Eq2Triple = EqTriple;

/// Deliberate corruptions used to test that the harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to the `q`-exponent of `|Aut((1,1))|` wherever the verifier uses it.
    PerturbAutExponent,
}

type AutBox = Box<dyn Fn(&Partition, &Rational) -> Result<Rational> + Send + Sync>;

/// Runs individual checks. Holds the oracle budget and the `|Aut|` source.
pub struct Verifier {
    oracle: OracleConfig,
    aut: AutBox,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new(OracleConfig::default(), None)
    }
}

fn oracle_prime(q: &Rational) -> Option<u32> {
    q.to_u64().filter(|&p| is_prime(p)).and_then(|p| u32::try_from(p).ok())
}

fn series_mismatch(names: [&str; 2], a: &PowerSeries, b: &PowerSeries) -> Option<Mismatch> {
    a.first_mismatch(b).map(|k| {
        Mismatch::new(format!("u^{k}"))
            .value(names[0], a.coeff(k))
            .value(names[1], b.coeff(k))
    })
}

/// Folds oracle errors into the report: budget problems refuse, internal
/// cross-check failures fail, usage errors propagate.
fn settle(report: VerificationReport, err: Error) -> Result<VerificationReport> {
    match err {
        Error::BudgetExceeded { .. } => Ok(report.refuse(err)),
        Error::CrossCheck(_) | Error::NegativeProbability { .. } => {
            Ok(report.fail(Mismatch::new("internal").value("error", err)))
        }
        other => Err(other),
    }
}

impl Verifier {
    pub fn new(oracle: OracleConfig, fault: Option<Fault>) -> Self {
        let aut: AutBox = match fault {
            None => Box::new(aut_order),
            Some(Fault::PerturbAutExponent) => Box::new(|l: &Partition, q: &Rational| {
                if l.parts() == [1, 1] {
                    let exponent: usize = l.conjugate().parts().iter().map(|c| c * c).sum();
                    crate::exactq::require_q_gt_one(q)?;
                    aut_order_with_exponent(l, q, exponent as i64 + 1)
                } else {
                    aut_order(l, q)
                }
            }),
        };
        Verifier { oracle, aut }
    }

    pub fn oracle(&self) -> &OracleConfig {
        &self.oracle
    }

    fn aut(&self, l: &Partition, q: &Rational) -> Result<Rational> {
        (self.aut)(l, q)
    }

    fn eq_check(
        &self,
        anchor: Anchor,
        q: &Rational,
        n_max: Option<usize>,
        order: usize,
    ) -> Result<(VerificationReport, EqTriple)> {
        let name = match n_max {
            Some(n) => format!("{anchor} q={q} n_max={n}"),
            None => format!("{anchor} q={q}"),
        };
        let mut report = VerificationReport::new(&name, anchor)
            .param("q", q)
            .param("order", order);
        let (middle, rhs) = match anchor {
            Anchor::Eq1 => (eq1_middle_series_with(q, order, &*self.aut)?, eq1_rhs_series(q, order)?),
            _ => (eq2_middle_series_with(q, order, &*self.aut)?, eq2_rhs_series(q, order)?),
        };
        let mut lhs = None;
        if let Some(n_max) = n_max {
            let p = oracle_prime(q).ok_or_else(|| usage(format!("matrix oracle needs a prime q, got {q}")))?;
            if n_max > order {
                return Err(usage(format!("n_max {n_max} exceeds series order {order}")));
            }
            report = report.param("n_max", n_max);
            let mut coeffs = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let count = match anchor {
                    Anchor::Eq1 => count_pairs(n, p, &self.oracle),
                    _ => count_nilpotent_pairs(n, p, &self.oracle),
                };
                match count {
                    Ok(c) => coeffs.push(Rational::from(c) / gl_order(n, q)),
                    Err(e) => {
                        let triple = EqTriple {
                            q: q.clone(),
                            lhs_coeffs: Some(coeffs),
                            middle_coeffs: middle,
                            rhs_coeffs: rhs,
                        };
                        return Ok((settle(report, e)?, triple));
                    }
                }
            }
            lhs = Some(coeffs);
        }
        if let Some(lhs) = &lhs {
            if let Some(n) = (0..lhs.len()).find(|&n| lhs[n] != *rhs.coeff(n) || lhs[n] != *middle.coeff(n)) {
                report = report.fail(
                    Mismatch::new(format!("u^{n}"))
                        .value("oracle", &lhs[n])
                        .value("middle", middle.coeff(n))
                        .value("rhs", rhs.coeff(n)),
                );
            }
        }
        report = report.with_outcome(series_mismatch(["middle", "rhs"], &middle, &rhs));
        let triple = EqTriple {
            q: q.clone(),
            lhs_coeffs: lhs,
            middle_coeffs: middle,
            rhs_coeffs: rhs,
        };
        Ok((report, triple))
    }

    /// Compares oracle (if `n_max` is given and `q` is prime), partition-sum and
    /// closed-form coefficients of the mutually-annihilating-pairs series.
    pub fn run_eq1_check(
        &self,
        q: &Rational,
        n_max: Option<usize>,
        order: usize,
    ) -> Result<(VerificationReport, Eq1Triple)> {
        self.eq_check(Anchor::Eq1, q, n_max, order)
    }

    /// Same as [`Verifier::run_eq1_check`] for nilpotent pairs.
    pub fn run_eq2_check(
        &self,
        q: &Rational,
        n_max: Option<usize>,
        order: usize,
    ) -> Result<(VerificationReport, Eq2Triple)> {
        self.eq_check(Anchor::Eq2, q, n_max, order)
    }

    pub fn lemma2(&self, n: usize, p: u32) -> Result<VerificationReport> {
        let base = VerificationReport::new(format!("lemma2 n={n} p={p}"), Anchor::Lemma2)
            .param("n", n)
            .param("p", p);
        verify_lemma2(n, p, &self.oracle).or_else(|e| settle(base, e))
    }

    pub fn lemma3(&self, n: usize, p: u32) -> Result<VerificationReport> {
        let base = VerificationReport::new(format!("lemma3 n={n} p={p}"), Anchor::Lemma3)
            .param("n", n)
            .param("p", p);
        verify_lemma3(n, p, &self.oracle).or_else(|e| settle(base, e))
    }

    /// Nilpotent matrices of type `lambda` number `|GL(n,p)|/|Aut(lambda)|`, and
    /// `p^{n^2-n}` in total.
    pub fn counter_nilpotent(&self, n: usize, p: u32) -> Result<VerificationReport> {
        let report = VerificationReport::new(format!("counter-nilpotent n={n} p={p}"), Anchor::CounterNilpotent)
            .param("n", n)
            .param("p", p);
        let by_type = match count_nilpotent_by_type(n, p, &self.oracle) {
            Ok(m) => m,
            Err(e) => return settle(report, e),
        };
        let q = Rational::from(p as i64);
        let gl = gl_order(n, &q);
        let mut report = report;
        for lambda in enumerate_partitions(n) {
            let expected = &gl / self.aut(&lambda, &q)?;
            let got = Rational::from(by_type.get(&lambda).cloned().unwrap_or_default());
            if got != expected {
                report = report.fail(
                    Mismatch::new(format!("lambda={lambda}"))
                        .value("enumerated", &got)
                        .value("gl/aut", &expected),
                );
            }
        }
        if let Some(stray) = by_type.keys().find(|l| l.size() != n) {
            report = report.fail(Mismatch::new(format!("lambda={stray}")).value("error", "type of wrong size"));
        }
        let total: BigUint = by_type.values().sum();
        let expected_total = num_traits::Pow::pow(BigUint::from(p), (n * n - n) as u32);
        if total != expected_total {
            report = report.fail(
                Mismatch::new("total")
                    .value("enumerated", &total)
                    .value("p^(n^2-n)", &expected_total),
            );
        }
        Ok(report)
    }

    pub fn irreducible_product(&self, q: u64, order: usize) -> Result<VerificationReport> {
        let s = product_over_irreducibles_series(q, order)?;
        Ok(
            VerificationReport::new(format!("irreducible-product q={q}"), Anchor::IrreducibleProduct)
                .param("q", q)
                .param("order", order)
                .with_outcome(series_mismatch(
                    ["product", "geometric"],
                    &s,
                    &PowerSeries::geometric(order),
                )),
        )
    }

    /// `sum_b u^b/(q^b (1/q)_b)` times `(u/q)_inf` is exactly 1.
    pub fn wellknown_identity(&self, q: &Rational, order: usize) -> Result<VerificationReport> {
        let report = VerificationReport::new(format!("wellknown-identity q={q}"), Anchor::WellknownIdentity)
            .param("q", q)
            .param("order", order);
        let inf = match pochhammer_infinite_u_over_q(q, order) {
            Ok(s) => s,
            Err(e) => return settle(report, e),
        };
        let prod = sum_wellknown_identity_lhs(q, order)?.mul(&inf)?;
        Ok(report.with_outcome(series_mismatch(["product", "one"], &prod, &PowerSeries::one(order))))
    }

    /// Finite kernel rows sum to exactly 1; the initial row leaves less than `2^{-60}`.
    pub fn thm1_rows(&self, q: &Rational, u: &Rational, a_max: usize) -> Result<VerificationReport> {
        let report = VerificationReport::new(format!("thm1-rows q={q} u={u}"), Anchor::Thm1Rows)
            .param("q", q)
            .param("u", u)
            .param("a_max", a_max);
        let body = || -> Result<Option<Mismatch>> {
            for a in 0..=a_max {
                let total = kernel_row(a, q, u)?.total();
                if !total.is_one() {
                    return Ok(Some(Mismatch::new(format!("row a={a}")).value("sum", total)));
                }
            }
            let inf = kernel_row_infinite(q, u)?;
            let tail = Rational::one() / Rational::from(2).powu(TAIL_BITS);
            if inf.truncated_mass.is_negative() || inf.truncated_mass >= tail {
                return Ok(Some(
                    Mismatch::new("row a=inf").value("truncated_mass", &inf.truncated_mass),
                ));
            }
            Ok(None)
        };
        match body() {
            Ok(m) => Ok(report.with_outcome(m)),
            Err(e) => settle(report, e),
        }
    }

    /// Exact series identity for partitions with `a` parts, the normalization
    /// of `P_u`, and the initial kernel row summing to 1.
    pub fn cor1_part1(&self, q: &Rational, order: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new(format!("cor1-part1 q={q}"), Anchor::Cor1Part1)
            .param("q", q)
            .param("order", order);
        let mut by_len = vec![vec![Rational::zero(); order + 1]; order + 1];
        for lambda in partitions_up_to(order) {
            by_len[lambda.len()][lambda.size()] += self.aut(&lambda, q)?.recip()?;
        }
        let mut total = PowerSeries::zero(order);
        for (a, coeffs) in by_len.into_iter().enumerate() {
            let summed = PowerSeries::from_coeffs(coeffs, order);
            let closed = parts_count_series(a, q, order)?;
            total = total.add(&closed)?;
            if let Some(m) = series_mismatch(["partition_sum", "closed_form"], &summed, &closed) {
                report = report
                    .fail(Mismatch::new(format!("a={a}, {}", m.location)).value("values", format!("{:?}", m.values)));
            }
        }
        let normalizer = pochhammer_infinite_u_over_q(q, order)?.inverse()?;
        report = report.with_outcome(series_mismatch(["sum_over_a", "1/(u/q)_inf"], &total, &normalizer));
        Ok(report)
    }

    /// Exact series identity for partitions with `a` parts and `b` ones, and
    /// `sum_b P(a, b) = P(a)` numerically for `a <= a_max`.
    pub fn cor1_part2(&self, q: &Rational, u: &Rational, a_max: usize, order: usize) -> Result<VerificationReport> {
        let mut report = VerificationReport::new(format!("cor1-part2 q={q} u={u}"), Anchor::Cor1Part2)
            .param("q", q)
            .param("u", u)
            .param("a_max", a_max)
            .param("order", order);
        let mut cells = vec![vec![vec![Rational::zero(); order + 1]; order + 1]; order + 1];
        for lambda in partitions_up_to(order) {
            cells[lambda.len()][lambda.multiplicity(1)][lambda.size()] += self.aut(&lambda, q)?.recip()?;
        }
        for (a, row) in cells.into_iter().enumerate() {
            for (b, coeffs) in row.into_iter().enumerate().take(a + 1) {
                let summed = PowerSeries::from_coeffs(coeffs, order);
                let closed = parts_and_ones_series(a, b, q, order)?;
                if let Some(m) = series_mismatch(["partition_sum", "closed_form"], &summed, &closed) {
                    report = report.fail(
                        Mismatch::new(format!("a={a}, b={b}, {}", m.location))
                            .value("values", format!("{:?}", m.values)),
                    );
                }
            }
        }
        let z = match cl_normalizer(q, u) {
            Ok(z) => z.value,
            Err(e) => return settle(report, e),
        };
        for a in 0..=a_max {
            let joint: Rational = (0..=a)
                .map(|b| corollary_part2(a, b, q, u, &z))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .sum();
            let marginal = corollary_part1(a, q, u, &z)?;
            if joint != marginal {
                report = report.fail(
                    Mismatch::new(format!("a={a}"))
                        .value("sum_b_part2", &joint)
                        .value("part1", &marginal),
                );
            }
        }
        Ok(report)
    }

    /// Monte Carlo comparison of the sampler with the exact laws.
    pub fn sampler(&self, cfg: &SamplerConfig) -> Result<(VerificationReport, SamplerComparison)> {
        let cmp = empirical_vs_corollary(cfg, self.oracle.execution)?;
        let judged = cmp.judged().count();
        let mut report = VerificationReport::new(
            format!("sampler q={} u={} seed={} trials={}", cfg.q, cfg.u, cfg.seed, cfg.trials),
            Anchor::Cor1Part2,
        )
        .statistical()
        .param("q", cfg.q)
        .param("u", &cfg.u)
        .param("seed", cfg.seed)
        .param("trials", cfg.trials)
        .note(format!(
            "{judged} buckets judged at |z| <= 4 each; no Bonferroni correction, so the family-wise false alarm rate is at most {judged} * 6.3e-5"
        ))
        .note(format!(
            "(u/q)_inf is a truncated product over {} factors, an upper bound with relative error < 2^-79",
            cmp.normalizer_factors
        ));
        if let Some(w) = cmp.judged().find(|b| !b.within_limit()) {
            report = report.fail(
                Mismatch::new(&w.label)
                    .value("observed", w.observed)
                    .value("empirical", &w.empirical)
                    .value("exact", &w.exact)
                    .value("z_squared", &w.z_squared)
                    .value("z_squared_limit", Z_SQUARED_LIMIT),
            );
        }
        Ok((report, cmp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq_checks_pass_small() {
        let v = Verifier::default();
        let (r, t) = v.run_eq1_check(&Rational::from(2), Some(2), 4).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(
            t.lhs_coeffs.unwrap(),
            vec![Rational::one(), Rational::from(3), Rational::frac(20, 3)]
        );
        let (r, _) = v.run_eq2_check(&Rational::frac(5, 2), None, 6).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn oracle_needs_prime_q() {
        let v = Verifier::default();
        assert!(v.run_eq1_check(&Rational::from(4), Some(1), 4).is_err());
        assert!(v.run_eq1_check(&Rational::from(2), Some(5), 4).is_err());
    }

    #[test]
    fn fault_breaks_eq1() {
        let v = Verifier::new(OracleConfig::default(), Some(Fault::PerturbAutExponent));
        let (r, _) = v.run_eq1_check(&Rational::from(2), Some(2), 4).unwrap();
        assert!(!r.passed());
        assert_eq!(r.detail.unwrap().location, "u^2");
    }

    #[test]
    fn budget_refusal_is_reported() {
        let v = Verifier::new(OracleConfig::default().with_budget(10), None);
        let r = v.lemma2(2, 2).unwrap();
        assert_eq!(r.status, crate::report::Status::Refused);
    }

    #[test]
    fn corollary_checks() {
        let v = Verifier::default();
        for q in [Rational::from(2), Rational::frac(5, 2)] {
            assert!(v.cor1_part1(&q, 6).unwrap().passed());
            assert!(v.cor1_part2(&q, &Rational::frac(1, 3), 6, 6).unwrap().passed());
        }
    }
}
