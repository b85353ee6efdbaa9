//! Run configuration shared by the binary and the integration tests.

use std::fmt;
use std::path::PathBuf;

use terncorr_core::Error as CoreError;

/// Which subcommand is being executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Spectrum,
    VerifyBound,
    RankDist,
    VerifyLemmas,
    Sample,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Spectrum => "spectrum",
            Mode::VerifyBound => "verify-bound",
            Mode::RankDist => "rank-dist",
            Mode::VerifyLemmas => "verify-lemmas",
            Mode::Sample => "sample",
        }
    }
}

/// Shift selection. Parsed from `all`, `A..B` (half-open), or `sample:N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauSelect {
    All,
    Range(u64, u64),
    Sample(u64),
}

impl TauSelect {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(TauSelect::All);
        }
        if let Some(n) = s.strip_prefix("sample:") {
            let n: u64 = n
                .trim()
                .parse()
                .map_err(|_| format!("invalid sample count in `{s}`"))?;
            if n == 0 {
                return Err("sample count must be at least 1".into());
            }
            return Ok(TauSelect::Sample(n));
        }
        if let Some((a, b)) = s.split_once("..") {
            let a: u64 = a
                .trim()
                .parse()
                .map_err(|_| format!("invalid range start in `{s}`"))?;
            let b: u64 = b
                .trim()
                .parse()
                .map_err(|_| format!("invalid range end in `{s}`"))?;
            if a >= b {
                return Err(format!("empty shift range `{s}` (start must be below end)"));
            }
            return Ok(TauSelect::Range(a, b));
        }
        Err(format!(
            "cannot parse `{s}`: expected `all`, `A..B`, or `sample:N`"
        ))
    }

    /// Number of shifts this selection produces over a period of length `l`.
    /// Cheap: no list is materialized, so budget checks can run first.
    pub fn count(&self, l: u128) -> Result<u128, CliError> {
        match *self {
            TauSelect::All => Ok(l),
            TauSelect::Range(a, b) => {
                if (b as u128) > l {
                    return Err(CliError::Config(format!(
                        "shift range end {b} exceeds the period {l}"
                    )));
                }
                Ok((b - a) as u128)
            }
            TauSelect::Sample(n) => {
                if (n as u128) > l {
                    return Err(CliError::Config(format!(
                        "sample size {n} exceeds the period {l}"
                    )));
                }
                Ok(n as u128)
            }
        }
    }

    /// Materializes the shift list. Sampled selections draw from the seeded
    /// generator; `all` and ranges are deterministic without it.
    pub fn materialize(&self, l: u128, seed: u64) -> Result<Vec<u64>, CliError> {
        self.count(l)?;
        match *self {
            TauSelect::All => {
                if l > u64::MAX as u128 {
                    return Err(CliError::Config(format!(
                        "cannot enumerate all {l} shifts; use sample:N"
                    )));
                }
                Ok((0..l as u64).collect())
            }
            TauSelect::Range(a, b) => Ok((a..b).collect()),
            TauSelect::Sample(n) => crate::sampler::sample_taus(seed, n, l),
        }
    }
}

impl fmt::Display for TauSelect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TauSelect::All => write!(f, "all"),
            TauSelect::Range(a, b) => write!(f, "{a}..{b}"),
            TauSelect::Sample(n) => write!(f, "sample:{n}"),
        }
    }
}

/// Output encoding for rows and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Which evaluation route the spectrum commands take.
///
/// `Auto` runs the quadratic-form engine and confirms against direct
/// correlation as far as the work budget allows. The explicit choices
/// force a single route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PathChoice {
    Auto,
    Direct,
    Quadform,
}

/// Everything a command needs to run. The binary builds this from clap,
/// tests build it literally.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub k: u64,
    /// Override modulus as a comma-separated trit string; `None` picks the
    /// pinned default for the degree.
    pub modulus: Option<String>,
    pub tau: TauSelect,
    pub seed: u64,
    /// Work budget in symbol operations; commands refuse rather than exceed it.
    pub budget: u128,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub path: PathChoice,
    /// Direct confirmations to run when the full direct leg does not fit.
    pub confirm: usize,
    /// `verify-bound` only: override the decimation exponent.
    pub decimation: Option<u128>,
}

impl RunConfig {
    /// Baseline configuration; tests tweak from here.
    pub fn new(mode: Mode, k: u64) -> Self {
        RunConfig {
            mode,
            k,
            modulus: None,
            tau: TauSelect::All,
            seed: 0,
            budget: 1_000_000_000,
            out: None,
            format: OutputFormat::Csv,
            path: PathChoice::Auto,
            confirm: 100,
            decimation: None,
        }
    }
}

/// Command outcome once it ran to completion: either every check held or
/// some mathematical claim failed (details already reported).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Failed,
}

/// Errors that stop a command before or during execution.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or an impossible request. Exit code 2.
    Config(String),
    /// Filesystem trouble writing results. Exit code 2.
    Io(std::io::Error),
    /// The request costs more than the budget allows. Exit code 3.
    Budget { needed: u128, budget: u128 },
    /// An error surfaced by the computation kernel.
    Core(CoreError),
}

impl CliError {
    /// Process exit code. 1 is reserved for honest mathematical failures
    /// (a claim evaluated and found false), 2 for unusable input or IO,
    /// 3 for refused workloads.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Budget { .. } => 3,
            CliError::Core(e) => match e {
                CoreError::FeasibilityRefused { .. } => 3,
                CoreError::ParityViolation { .. } => 1,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "io: {e}"),
            CliError::Budget { needed, budget } => write!(
                f,
                "refusing workload: needs {needed} symbol operations, budget is {budget} \
                 (raise --budget or narrow --tau)"
            ),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}
