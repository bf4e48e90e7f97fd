use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fatpoint::{CertaintyPolicy, EngineOptions};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "fatpoint",
    version,
    about = "Initial degrees of symbolic powers of points in the plane"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Rank policy: `certified` lifts every witness to the rationals.
    #[arg(long, global = true, value_enum, default_value_t = Policy::Certified)]
    pub policy: Policy,
    /// Seed for generators and the prime stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bit size of the random primes.
    #[arg(long, global = true, default_value_t = EngineOptions::default().prime_bits)]
    pub prime_bits: u32,
    /// Omit the timestamp so equal runs give byte-identical output.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    Fast,
    Certified,
}

impl From<Policy> for CertaintyPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Fast => CertaintyPolicy::Fast,
            Policy::Certified => CertaintyPolicy::Certified,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded configuration file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Bound on generated numerators and denominators.
        #[arg(long, global = true, default_value_t = 1000)]
        bound: i64,
    },
    /// α(mZ) for one multiplicity, with a witness form.
    Alpha {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, short = 'm')]
        m: usize,
    },
    /// α-sequence and β-sequence up to `--mmax`.
    Sequence(SequenceArgs),
    /// Certified Waldschmidt interval from the α-sequence.
    Waldschmidt(SequenceArgs),
    /// Geometric class and consistency with the Waldschmidt interval.
    Classify(SequenceArgs),
    /// Bezout decomposition of a divisor class.
    Bezout {
        #[arg(long)]
        input: PathBuf,
        /// Reduce one seeded violating curve per round.
        #[arg(long)]
        single: bool,
        /// Also compare against this many random single-step orders.
        #[arg(long)]
        confluence: Option<usize>,
    },
    /// Recompute a known configuration and compare with the expected values.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SequenceArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub mmax: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenKind {
    /// `d` general lines and their pairwise intersections.
    Star {
        #[arg(long, short = 'd')]
        d: usize,
    },
    /// A `d`-star with one extra point on each line.
    QuasiStar {
        #[arg(long, short = 'd', default_value_t = 3)]
        d: usize,
    },
    /// `k` points on a line and one point off it.
    CollinearPlusPoint {
        #[arg(long, short = 'k')]
        k: usize,
    },
    /// Ten points on three lines with `α(mZ) = 3m` for `m ≥ 2`.
    Prop42,
    /// Seven points on a conic and three forced intersection points.
    ConicExample,
    /// Points in general position.
    General {
        #[arg(long, short = 'n')]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Recipe {
    Star4,
    QuasiStar3,
    CollinearK,
    Prop42,
    ConicExample,
    SixGeneral,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub recipe: Recipe,
    /// Largest multiplicity (default depends on the recipe).
    #[arg(long)]
    pub mmax: Option<usize>,
    /// Largest `k` for `collinear_k` and `conic_example`.
    #[arg(long)]
    pub kmax: Option<usize>,
    /// `conic_example` through k = 30.
    #[arg(long)]
    pub full: bool,
}
