use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use postulate::algorithms::DjKind;
use postulate::measurement::SemanticsMode;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Amplitude norms further than this from 1 trigger a renormalization warning.
pub const RENORM_WARN_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "postulate-sim",
    version,
    about = "Teleportation and oracle algorithms under strict von Neumann or Lueders measurement"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Post-measurement rule: "von-neumann" or "lueders".
    #[arg(long, global = true, default_value = "lueders")]
    pub mode: SemanticsMode,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Teleport alpha|0> + beta|1> through a shared Phi+ pair.
    Teleport {
        /// Amplitude of |0> as "re,im".
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        alpha: String,
        /// Amplitude of |1> as "re,im".
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        beta: String,
    },
    /// Deutsch-Jozsa on a truth-table file or a generated oracle.
    Dj {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    /// Simon's period finding on a truth-table file or a generated oracle.
    Simon {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        oracle: Option<PathBuf>,
        /// Hidden period as a bit-string; required without --oracle.
        #[arg(long)]
        period: Option<String>,
        #[arg(long, default_value_t = 50)]
        max_samples: usize,
    },
    /// Grover search over 2^n items.
    Grover {
        #[arg(long)]
        n: usize,
        /// Comma-separated marked indices.
        #[arg(long, value_delimiter = ',', required = true)]
        marked: Vec<u64>,
    },
    /// Measures an observable on a single system.
    Measure {
        /// "sigma1", "sigma2", "sigma3", "bell" or "diag:v0,v1,...".
        #[arg(long)]
        observable: String,
        /// Amplitudes as "re,im;re,im;...".
        #[arg(long, allow_hyphen_values = true)]
        state: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Constant,
    Balanced,
}

/// Fully resolved run parameters, echoed in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub mode: SemanticsMode,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum CommandConfig {
    Teleport {
        /// Renormalized `[re, im]`.
        alpha: [f64; 2],
        beta: [f64; 2],
    },
    Dj {
        n: Option<usize>,
        kind: Option<DjKind>,
        oracle: Option<String>,
    },
    Simon {
        n: Option<usize>,
        oracle: Option<String>,
        period: Option<String>,
        max_samples: usize,
    },
    Grover {
        n: usize,
        marked: Vec<u64>,
    },
    Measure {
        observable: String,
        state: Vec<[f64; 2]>,
    },
}

impl CommandConfig {
    pub fn name(&self) -> &'static str {
        match self {
            CommandConfig::Teleport { .. } => "teleport",
            CommandConfig::Dj { .. } => "dj",
            CommandConfig::Simon { .. } => "simon",
            CommandConfig::Grover { .. } => "grover",
            CommandConfig::Measure { .. } => "measure",
        }
    }
}

impl RunConfig {
    /// Resolves parsed arguments, returning the config and any warnings.
    pub fn from_cli(cli: &Cli) -> Result<(Self, Vec<String>), CliError> {
        let mut warnings = Vec::new();
        if cli.common.trials == 0 {
            return Err(CliError::Usage("--trials must be positive".into()));
        }
        let command = match &cli.command {
            CommandArgs::Teleport { alpha, beta } => {
                let mut amps = [parse_complex(alpha)?, parse_complex(beta)?];
                if let Some(w) = renormalize(&mut amps)? {
                    warnings.push(w);
                }
                CommandConfig::Teleport {
                    alpha: amps[0],
                    beta: amps[1],
                }
            }
            CommandArgs::Dj { n, kind, oracle } => {
                if oracle.is_none() && n.is_none() {
                    return Err(CliError::Usage("dj needs --n or --oracle".into()));
                }
                CommandConfig::Dj {
                    n: *n,
                    kind: kind.map(|k| match k {
                        KindArg::Constant => DjKind::Constant,
                        KindArg::Balanced => DjKind::Balanced,
                    }),
                    oracle: oracle.as_ref().map(|p| p.display().to_string()),
                }
            }
            CommandArgs::Simon {
                n,
                oracle,
                period,
                max_samples,
            } => {
                if oracle.is_none() && (n.is_none() || period.is_none()) {
                    return Err(CliError::Usage(
                        "simon needs --oracle, or --n with --period".into(),
                    ));
                }
                CommandConfig::Simon {
                    n: *n,
                    oracle: oracle.as_ref().map(|p| p.display().to_string()),
                    period: period.clone(),
                    max_samples: *max_samples,
                }
            }
            CommandArgs::Grover { n, marked } => CommandConfig::Grover {
                n: *n,
                marked: marked.clone(),
            },
            CommandArgs::Measure { observable, state } => {
                let mut amps = state
                    .split(';')
                    .map(parse_complex)
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(w) = renormalize(&mut amps)? {
                    warnings.push(w);
                }
                CommandConfig::Measure {
                    observable: observable.clone(),
                    state: amps,
                }
            }
        };
        Ok((
            RunConfig {
                command,
                mode: cli.common.mode,
                seed: cli.common.seed,
                trials: cli.common.trials,
            },
            warnings,
        ))
    }
}

/// Parses `"re,im"`; a bare `"re"` means zero imaginary part.
pub fn parse_complex(s: &str) -> Result<[f64; 2], CliError> {
    let bad = || CliError::Usage(format!("expected \"re,im\", got {s:?}"));
    let mut parts = s.split(',').map(str::trim);
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok([re, im])
}

fn renormalize(amps: &mut [[f64; 2]]) -> Result<Option<String>, CliError> {
    let norm = amps
        .iter()
        .map(|[re, im]| re * re + im * im)
        .sum::<f64>()
        .sqrt();
    if norm == 0.0 {
        return Err(CliError::Usage("state has zero norm".into()));
    }
    if norm == 1.0 {
        return Ok(None);
    }
    for a in amps.iter_mut() {
        a[0] /= norm;
        a[1] /= norm;
    }
    Ok(((norm - 1.0).abs() > RENORM_WARN_TOL)
        .then(|| format!("input state had norm {norm}; renormalized")))
}
