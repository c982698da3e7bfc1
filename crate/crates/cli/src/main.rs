use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clpart::clsampler::{empirical_vs_corollary, SamplerConfig};
use clpart::exactq::{gl_order, is_prime};
use clpart::fforacle::{count_nilpotent_by_type, count_nilpotent_pairs, count_pairs, OracleConfig};
use clpart::partitions::{eq1_middle_series, eq2_middle_series};
use clpart::verifier::{eq1_rhs_series, eq2_rhs_series, run_suite, Fault, Suite, SuiteConfig};
use clpart::{Error, Execution, Rational, Status, VerificationReport};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "clpart",
    version,
    about = "Exact checks for generating functions of mutually annihilating matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print a truncated power series.
    Series(SeriesArgs),
    /// Brute-force counts over a prime field.
    Oracle(OracleArgs),
    /// Draw partitions from P_u and compare with the exact laws.
    Sample(SampleArgs),
}

#[derive(Args)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Eq1,
    Eq2,
    Lemmas,
    Sampler,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Eq1 => Suite::Eq1,
            SuiteArg::Eq2 => Suite::Eq2,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Sampler => Suite::Sampler,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    #[command(flatten)]
    common: Common,
    /// Enumeration cap, applied to both the outer matrix count and the inner candidate count.
    #[arg(long, value_parser = parse_budget)]
    budget: Option<u128>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    /// Values of q to use (repeatable). Primes also get the matrix oracle.
    #[arg(long = "q", value_parser = parse_rational)]
    qs: Vec<Rational>,
    #[arg(long, value_parser = parse_rational)]
    u: Option<Rational>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// Add the nilpotent-pairs oracle at n = 4, q = 2.
    #[arg(long)]
    extended: bool,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Eq1Rhs,
    Eq2Rhs,
    Eq1Middle,
    Eq2Middle,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(value_enum)]
    kind: SeriesKind,
    #[arg(long, value_parser = parse_rational)]
    q: Rational,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    CountPairs,
    CountNilpotentPairs,
    ByType,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u32,
    #[arg(long, value_parser = parse_budget)]
    budget: Option<u128>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, value_parser = parse_rational, default_value = "1/2")]
    u: Rational,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[command(flatten)]
    common: Common,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_budget(s: &str) -> Result<u128, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("cannot parse {s:?} as a nonnegative integer"))
}

fn oracle_config(budget: Option<u128>, exec: Execution) -> OracleConfig {
    let cfg = OracleConfig {
        execution: exec,
        ..OracleConfig::default()
    };
    match budget {
        Some(b) => cfg.with_budget(b),
        None => cfg,
    }
}

fn print_json<T: serde::Serialize + ?Sized>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report values serialize")
    );
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let mut cfg = SuiteConfig {
        oracle: oracle_config(args.budget, args.common.execution()),
        eq2_extended: args.extended,
        fault: args.inject_fault.then_some(Fault::PerturbAutExponent),
        ..SuiteConfig::default()
    };
    if !args.qs.is_empty() {
        cfg.primes = args
            .qs
            .iter()
            .filter_map(|q| q.to_u64())
            .filter(|&p| is_prime(p))
            .filter_map(|p| u32::try_from(p).ok())
            .collect();
        cfg.rational_qs = args.qs.clone();
    }
    if let Some(n) = args.n_max {
        cfg.n_max = n;
    }
    if let Some(o) = args.order {
        cfg.order = o;
    }
    if let Some(u) = args.u {
        cfg.u = u;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    let reports = run_suite(&cfg, args.suite.into())?;
    if args.common.json {
        print_json(&reports);
    } else {
        for r in &reports {
            println!("{r}");
        }
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        println!(
            "{} checks: {} passed, {} failed, {} refused",
            reports.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Refused)
        );
    }
    Ok(exit_for(&reports))
}

fn exit_for(reports: &[VerificationReport]) -> ExitCode {
    if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(EXIT_FAIL)
    } else if reports.iter().any(|r| r.status == Status::Refused) {
        ExitCode::from(EXIT_REFUSED)
    } else {
        ExitCode::SUCCESS
    }
}

fn series(args: SeriesArgs) -> Result<ExitCode, Error> {
    let s = match args.kind {
        SeriesKind::Eq1Rhs => eq1_rhs_series(&args.q, args.order)?,
        SeriesKind::Eq2Rhs => eq2_rhs_series(&args.q, args.order)?,
        SeriesKind::Eq1Middle => eq1_middle_series(&args.q, args.order)?,
        SeriesKind::Eq2Middle => eq2_middle_series(&args.q, args.order)?,
    };
    if args.json {
        print_json(&s);
    } else {
        println!("{s}");
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(args: OracleArgs) -> Result<ExitCode, Error> {
    let cfg = oracle_config(args.budget, args.common.execution());
    let (n, p) = (args.n, args.p);
    match args.kind {
        OracleKind::CountPairs | OracleKind::CountNilpotentPairs => {
            let count = match args.kind {
                OracleKind::CountPairs => count_pairs(n, p, &cfg)?,
                _ => count_nilpotent_pairs(n, p, &cfg)?,
            };
            let normalized = Rational::from(count.clone()) / gl_order(n, &Rational::from(p as i64));
            if args.common.json {
                let out = BTreeMap::from([
                    ("count", count.to_string()),
                    ("n", n.to_string()),
                    ("p", p.to_string()),
                    ("per_gl", normalized.to_string()),
                ]);
                print_json(&out);
            } else {
                println!("{count} (divided by |GL({n},{p})|: {normalized})");
            }
        }
        OracleKind::ByType => {
            let by_type = count_nilpotent_by_type(n, p, &cfg)?;
            if args.common.json {
                let out: BTreeMap<String, String> =
                    by_type.iter().map(|(l, c)| (l.to_string(), c.to_string())).collect();
                print_json(&out);
            } else {
                for (l, c) in &by_type {
                    println!("{l} {c}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sample(args: SampleArgs) -> Result<ExitCode, Error> {
    let cfg = SamplerConfig::new(args.q, args.u, args.seed, args.trials)?;
    let cmp = empirical_vs_corollary(&cfg, args.common.execution())?;
    if args.common.json {
        print_json(&cmp);
    } else {
        println!("q={} u={} seed={} trials={}", cmp.q, cmp.u, cmp.seed, cmp.trials);
        for (title, buckets) in [
            ("lambda'_1", &cmp.marginal),
            ("(lambda'_1, m_1)", &cmp.joint),
            ("lambda", &cmp.direct),
        ] {
            println!("{title}:");
            for b in buckets.iter().filter(|b| b.observed > 0 || b.judged) {
                let flag = if !b.judged {
                    " "
                } else if b.within_limit() {
                    "ok"
                } else {
                    "!!"
                };
                println!(
                    "  {flag:2} {:<14} observed={:<7} exact={:.6} z={:+.2}",
                    b.label,
                    b.observed,
                    b.exact.to_f64(),
                    b.z()
                );
            }
        }
    }
    Ok(if cmp.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Series(a) => series(a),
        Command::Oracle(a) => oracle(a),
        Command::Sample(a) => sample(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => EXIT_REFUSED,
                Error::CrossCheck(_) | Error::NegativeProbability { .. } => EXIT_FAIL,
                _ => EXIT_USAGE,
            })
        }
    }
}
