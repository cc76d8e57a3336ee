//! Command-line surface and its validation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycloclock_core::clock::{ClockModel, Convention};
use num_complex::Complex64;
use thiserror::Error;

use crate::output::Format;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("--n is required for this command")]
    MissingN,
    #[error("invalid clock: {0}")]
    Clock(#[from] cycloclock_core::clock::ClockError),
    #[error("tolerance must be a positive finite number, got {0}")]
    Tolerance(f64),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Parser)]
#[command(name = "cycloclock", version, about = "Exact experiments on the cyclotomic quantum clock")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Clock dimension N.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::ZeroBased)]
    pub convention: ConventionArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Output path, or `stdout`.
    #[arg(long, global = true, default_value = "stdout")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    ZeroBased,
    Symmetric,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::ZeroBased => Convention::ZeroBased,
            ConventionArg::Symmetric => Convention::Symmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Classic,
    Cyclotomic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact pointer-state coefficients.
    Basis {
        /// Only this pointer state; all when omitted.
        #[arg(long)]
        k: Option<i64>,
    },
    /// Exact hour stepping (`--steps`) or continuous evolution (`--t`).
    Evolve {
        /// Starting pointer state.
        #[arg(long, default_value_t = 0)]
        k: i64,
        #[arg(long, conflicts_with = "t")]
        steps: Option<u64>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        omega0: f64,
    },
    /// Closed-form commutator elements against the brute-force matrices.
    Commutator {
        #[arg(long, value_enum, default_value_t = Variant::Classic)]
        variant: Variant,
    },
    /// Energy uncertainty of pointer states.
    Uncertainty {
        /// Comma-separated dimensions; defaults to `--n`.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        /// Report both conventions (symmetric rows only for odd N).
        #[arg(long)]
        all_conventions: bool,
    },
    /// Ramanujan sums and the weighted coprime sum identity.
    Ramanujan {
        /// Half-open range `start..end`; defaults to `0..N`.
        #[arg(long)]
        m_range: Option<String>,
    },
    /// Commutator expectation in a superposition of azimuthal states.
    Superposition {
        /// Comma-separated coefficients `re` or `re:im`.
        #[arg(long, conflicts_with = "seed")]
        coeffs: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of seeded random states.
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Basis { k: Option<i64> },
    Step { k: i64, steps: u64 },
    Evolve { k: i64, t: f64, omega0: f64 },
    Commutator { variant: Variant },
    Uncertainty { dims: Vec<usize>, all_conventions: bool },
    Ramanujan { start: i64, end: i64 },
    SuperpositionCoeffs { coeffs: Vec<Complex64> },
    SuperpositionSeeded { seed: u64, samples: usize },
}

/// Validated configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub convention: Convention,
    pub format: Format,
    pub tolerance: f64,
    pub output: Output,
    pub task: Task,
}

impl RunConfig {
    /// The clock model; commands that take a dimension list never call this.
    pub fn model(&self) -> Result<ClockModel, ConfigError> {
        let n = self.n.ok_or(ConfigError::MissingN)?;
        Ok(ClockModel::new(n, self.convention)?)
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), ConfigError> {
    let bad = || ConfigError::Invalid(format!("invalid --m-range {s:?}, expected start..end"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if b < a {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_coeffs(s: &str) -> Result<Vec<Complex64>, ConfigError> {
    s.split(',')
        .map(|tok| {
            let bad = || ConfigError::Invalid(format!("invalid coefficient {tok:?}"));
            let (re, im) = match tok.split_once(':') {
                Some((re, im)) => (re, im),
                None => (tok, "0"),
            };
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}

impl TryFrom<Cli> for RunConfig {
    type Error = ConfigError;

    fn try_from(cli: Cli) -> Result<Self, ConfigError> {
        let c = cli.common;
        if !(c.tolerance > 0.0 && c.tolerance.is_finite()) {
            return Err(ConfigError::Tolerance(c.tolerance));
        }
        let output = match c.output.as_str() {
            "stdout" | "-" => Output::Stdout,
            path => Output::File(PathBuf::from(path)),
        };
        let task = match cli.command {
            Command::Basis { k } => Task::Basis { k },
            Command::Evolve { k, steps, t, omega0 } => match (steps, t) {
                (Some(steps), None) => Task::Step { k, steps },
                (None, Some(t)) if t >= 0.0 && t.is_finite() => Task::Evolve { k, t, omega0 },
                (None, Some(t)) => return Err(ConfigError::Invalid(format!("--t must be >= 0, got {t}"))),
                _ => return Err(ConfigError::Invalid("evolve needs exactly one of --steps or --t".into())),
            },
            Command::Commutator { variant } => Task::Commutator { variant },
            Command::Uncertainty { n_list, all_conventions } => {
                let dims = if n_list.is_empty() {
                    vec![c.n.ok_or(ConfigError::MissingN)?]
                } else {
                    n_list
                };
                Task::Uncertainty { dims, all_conventions }
            }
            Command::Ramanujan { m_range } => {
                let n = c.n.ok_or(ConfigError::MissingN)? as i64;
                let (start, end) = match m_range {
                    Some(r) => parse_range(&r)?,
                    None => (0, n),
                };
                Task::Ramanujan { start, end }
            }
            Command::Superposition { coeffs, seed, samples } => match (coeffs, seed) {
                (Some(s), None) => Task::SuperpositionCoeffs { coeffs: parse_coeffs(&s)? },
                (None, Some(seed)) if samples >= 1 => Task::SuperpositionSeeded { seed, samples },
                (None, Some(_)) => return Err(ConfigError::Invalid("--samples must be at least 1".into())),
                _ => return Err(ConfigError::Invalid("superposition needs one of --coeffs or --seed".into())),
            },
        };
        let config = RunConfig {
            n: c.n,
            convention: c.convention.into(),
            format: c.format,
            tolerance: c.tolerance,
            output,
            task,
        };
        // every command except a dimension-list uncertainty run needs a valid model
        match &config.task {
            Task::Uncertainty { dims, all_conventions } => {
                for &d in dims {
                    let conv = if *all_conventions { Convention::ZeroBased } else { config.convention };
                    ClockModel::new(d, conv)?;
                }
            }
            _ => {
                config.model()?;
            }
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ConfigError> {
        let mut full = vec!["cycloclock"];
        full.extend_from_slice(args);
        RunConfig::try_from(Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn valid_configs() {
        let c = parse(&["commutator", "--n", "5", "--variant", "cyclotomic"]).unwrap();
        assert_eq!(c.task, Task::Commutator { variant: Variant::Cyclotomic });
        let c = parse(&["--n", "4", "ramanujan"]).unwrap();
        assert_eq!(c.task, Task::Ramanujan { start: 0, end: 4 });
        let c = parse(&["uncertainty", "--n-list", "3,1001", "--convention", "symmetric"]).unwrap();
        assert_eq!(c.task, Task::Uncertainty { dims: vec![3, 1001], all_conventions: false });
        let c = parse(&["superposition", "--n", "2", "--coeffs", "0.6,0:0.8"]).unwrap();
        assert_eq!(
            c.task,
            Task::SuperpositionCoeffs { coeffs: vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)] }
        );
    }

    #[test]
    fn invalid_configs() {
        assert!(matches!(parse(&["basis"]), Err(ConfigError::MissingN)));
        assert!(matches!(parse(&["basis", "--n", "0"]), Err(ConfigError::Clock(_))));
        assert!(matches!(
            parse(&["basis", "--n", "4", "--convention", "symmetric"]),
            Err(ConfigError::Clock(_))
        ));
        assert!(matches!(
            parse(&["basis", "--n", "4", "--tolerance", "0"]),
            Err(ConfigError::Tolerance(_))
        ));
        assert!(parse(&["evolve", "--n", "4"]).is_err());
        assert!(parse(&["evolve", "--n", "4", "--t", "-1"]).is_err());
        assert!(parse(&["ramanujan", "--n", "4", "--m-range", "3"]).is_err());
        assert!(parse(&["superposition", "--n", "2"]).is_err());
        assert!(parse(&["superposition", "--n", "2", "--coeffs", "a,b"]).is_err());
    }
}
