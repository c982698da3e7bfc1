use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cl_normalizer, kernel_row, kernel_row_infinite_with, KernelRow};
use crate::error::{usage, Error, Result};
use crate::exactq::{Rational, TruncatedProduct};
use crate::par::{map_chunks, Execution};
use crate::partitions::{require_unit_interval, Partition};

/// Trials per RNG stream; stream `s` covers trials `s*TRIALS_PER_STREAM..(s+1)*TRIALS_PER_STREAM`.
pub const TRIALS_PER_STREAM: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplerConfig {
    pub q: u64,
    pub u: Rational,
    pub seed: u64,
    pub trials: u64,
}

impl SamplerConfig {
    pub fn new(q: u64, u: Rational, seed: u64, trials: u64) -> Result<Self> {
        let cfg = SamplerConfig { q, u, seed, trials };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(usage(format!("sampler needs an integer q >= 2, got {}", self.q)));
        }
        if self.trials == 0 {
            return Err(usage("trials must be positive"));
        }
        require_unit_interval(&self.u)
    }

    pub fn q_rational(&self) -> Rational {
        Rational::from(self.q as i64)
    }
}

/// Inverse-CDF table: draw `b` is the least index with `x < threshold[b]`,
/// where `x` is a uniform 64-bit word and `threshold[b] = ceil(2^64 * CDF(b))`.
/// This is exact comparison of `x / 2^64` against the rational CDF.
#[derive(Debug, Clone)]
struct CdfTable {
    thresholds: Vec<u128>,
}

impl CdfTable {
    fn from_row(row: &KernelRow) -> Result<Self> {
        let cdf = row.cdf();
        if cdf.last() != Some(&Rational::one()) {
            return Err(Error::CrossCheck(format!(
                "kernel row {} does not sum to 1: {:?}",
                row.source,
                cdf.last()
            )));
        }
        let thresholds = cdf
            .iter()
            .map(|c| c.ceil_scaled(64).and_then(|t| t.to_u128()).expect("CDF lies in [0,1]"))
            .collect();
        Ok(CdfTable { thresholds })
    }

    fn draw(&self, x: u64) -> usize {
        let x = x as u128;
        self.thresholds.partition_point(|&t| t <= x)
    }
}

/// Samples partitions from `P_u` by drawing conjugate column sizes
/// `lambda'_1 >= lambda'_2 >= ...` from the transition kernel until a zero.
///
/// Randomness is ChaCha8 seeded with `seed_from_u64(seed)`; stream `s` of
/// that generator feeds trial block `s`, so results do not depend on how the
/// blocks are scheduled.
#[derive(Debug, Clone)]
pub struct ClSampler {
    config: SamplerConfig,
    normalizer: TruncatedProduct,
    initial: KernelRow,
    rows: Vec<KernelRow>,
    initial_table: CdfTable,
    row_tables: Vec<CdfTable>,
}

impl ClSampler {
    pub fn new(config: SamplerConfig) -> Result<Self> {
        config.validate()?;
        let q = config.q_rational();
        let normalizer = cl_normalizer(&q, &config.u)?;
        let initial = kernel_row_infinite_with(&q, &config.u, &normalizer.value)?;
        let max_a = initial.probabilities.len() - 1;
        let rows = (0..=max_a)
            .map(|a| kernel_row(a, &q, &config.u))
            .collect::<Result<Vec<_>>>()?;
        let initial_table = CdfTable::from_row(&initial)?;
        let row_tables = rows.iter().map(CdfTable::from_row).collect::<Result<Vec<_>>>()?;
        Ok(ClSampler {
            config,
            normalizer,
            initial,
            rows,
            initial_table,
            row_tables,
        })
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.config
    }

    /// The truncated value of `(u/q)_inf` used throughout.
    pub fn normalizer(&self) -> &TruncatedProduct {
        &self.normalizer
    }

    pub fn initial_row(&self) -> &KernelRow {
        &self.initial
    }

    pub fn rows(&self) -> &[KernelRow] {
        &self.rows
    }

    /// Draws the conjugate column sizes (without the terminating zero).
    pub fn sample_columns<R: RngCore + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let mut cols = Vec::new();
        let mut a = self.initial_table.draw(rng.next_u64());
        while a > 0 {
            cols.push(a);
            a = self.row_tables[a].draw(rng.next_u64());
        }
        cols
    }

    pub fn sample_partition<R: RngCore + ?Sized>(&self, rng: &mut R) -> Partition {
        Partition::from_conjugate(self.sample_columns(rng)).expect("kernel support keeps columns decreasing")
    }

    /// The generator for trial block `stream`.
    pub fn stream_rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(stream);
        rng
    }

    /// Runs `config.trials` draws and tallies each partition.
    pub fn run(&self, exec: Execution) -> Tally {
        let blocks = map_chunks(self.config.trials, TRIALS_PER_STREAM, exec, |range| {
            let mut rng = self.stream_rng(range.start / TRIALS_PER_STREAM);
            let mut local: BTreeMap<Partition, u64> = BTreeMap::new();
            for _ in range {
                *local.entry(self.sample_partition(&mut rng)).or_default() += 1;
            }
            local
        });
        let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
        for local in blocks {
            for (p, c) in local {
                *counts.entry(p).or_default() += c;
            }
        }
        Tally {
            trials: self.config.trials,
            counts,
        }
    }
}

/// Draws one partition for `cfg` using `rng`. Builds the kernel tables on
/// every call; use [`ClSampler`] for repeated draws.
pub fn sample_partition<R: RngCore + ?Sized>(cfg: &SamplerConfig, rng: &mut R) -> Result<Partition> {
    Ok(ClSampler::new(cfg.clone())?.sample_partition(rng))
}

/// Observed partition counts from a sampling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub trials: u64,
    pub counts: BTreeMap<Partition, u64>,
}

impl Tally {
    pub fn count_where(&self, pred: impl Fn(&Partition) -> bool) -> u64 {
        self.counts.iter().filter(|(p, _)| pred(p)).map(|(_, c)| c).sum()
    }

    pub fn max_columns(&self) -> usize {
        self.counts.keys().map(Partition::len).max().unwrap_or(0)
    }
}
