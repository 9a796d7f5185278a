use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridsight_core::construct::ScalingMode;
use gridsight_core::modular::{ResidueVector, Sign};
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_RAYS: usize = 64;
pub const DEFAULT_PRIMES: [u64; 6] = [11, 17, 23, 31, 41, 53];
pub const DEFAULT_MAX_P: u64 = 13;

#[derive(Parser, Debug)]
#[command(
    name = "gridsight",
    version,
    about = "Visibility posets, lattices and covers in grid worlds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Height and dual height of t, or mean height over all t when --t is absent
    Hp,
    /// Exact width of the visibility poset with a max antichain and chain cover
    Width,
    /// Antichain cut out by a short lattice plane
    Antichain,
    /// LLL reduction of the parallelotope lattice
    Lll,
    /// Walk cover and additive primitive cover
    Cover,
    /// DFT identities and bounds at t
    FourierCheck,
    /// Visible cubes of a configuration file
    Simulate,
    /// Lower-bound configuration for prime p
    Construct,
    /// Predicted counts over a prime grid with a log-log slope
    Scaling,
    /// Every invariant at desk scale
    VerifyAll,
}

#[derive(ValueEnum, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Model,
    Geometric,
}

#[derive(Args, Debug, Default)]
pub struct Opts {
    /// Odd prime modulus
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Dimension, counting the last coordinate
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Free coordinates t_1,...,t_{d-1}
    #[arg(long, global = true, value_delimiter = ',')]
    pub t: Option<Vec<u64>>,
    /// Sign per free coordinate, e.g. +-
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub signs: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shallow angle in degrees
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    /// Sampled segments per cube
    #[arg(long, global = true)]
    pub rays: Option<usize>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// TOML file with defaults for any of these options
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long = "max-p", global = true)]
    pub max_p: Option<u64>,
    /// Configuration JSON for simulate
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    p: Option<u64>,
    d: Option<usize>,
    t: Option<Vec<u64>>,
    signs: Option<String>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    theta: Option<f64>,
    rays: Option<usize>,
    primes: Option<Vec<u64>>,
    mode: Option<Mode>,
    max_p: Option<u64>,
    input: Option<PathBuf>,
}

/// Flags merged over the config file over defaults.
#[derive(Debug)]
pub struct RunConfig {
    pub p: Option<u64>,
    pub d: usize,
    pub t: Option<Vec<u64>>,
    pub signs: Option<Vec<Sign>>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub theta: Option<f64>,
    pub rays: usize,
    pub primes: Vec<u64>,
    pub mode: ScalingMode,
    pub max_p: u64,
    pub input: Option<PathBuf>,
}

fn parse_signs(s: &str) -> Result<Vec<Sign>, CliError> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(CliError::Usage(format!("sign {c:?} is not + or -"))),
        })
        .collect()
}

fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(toml::from_str(&text)?)
}

impl RunConfig {
    pub fn resolve(opts: Opts) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(path) => read_config(path)?,
            None => FileConfig::default(),
        };
        let signs = match opts.signs.or(file.signs) {
            Some(s) => Some(parse_signs(&s)?),
            None => None,
        };
        let mode = match opts.mode.or(file.mode).unwrap_or(Mode::Model) {
            Mode::Model => ScalingMode::Model,
            Mode::Geometric => ScalingMode::Geometric,
        };
        let cfg = RunConfig {
            p: opts.p.or(file.p),
            d: opts.d.or(file.d).unwrap_or(3),
            t: opts.t.or(file.t),
            signs,
            seed: opts.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            out: opts.out.or(file.out),
            format: opts.format.or(file.format),
            theta: opts.theta.or(file.theta),
            rays: opts.rays.or(file.rays).unwrap_or(DEFAULT_RAYS),
            primes: opts
                .primes
                .or(file.primes)
                .unwrap_or_else(|| DEFAULT_PRIMES.to_vec()),
            mode,
            max_p: opts.max_p.or(file.max_p).unwrap_or(DEFAULT_MAX_P),
            input: opts.input.or(file.input),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.d < 2 {
            return Err(CliError::Usage(format!("--d {} is below 2", self.d)));
        }
        if let Some(t) = &self.t {
            if t.len() + 1 != self.d {
                return Err(CliError::Usage(format!(
                    "--t has {} coordinates but --d {} needs {}",
                    t.len(),
                    self.d,
                    self.d - 1
                )));
            }
        }
        if let (Some(s), Some(t)) = (&self.signs, &self.t) {
            if s.len() != t.len() {
                return Err(CliError::Usage("one sign per coordinate of --t".into()));
            }
        }
        if let Some(theta) = self.theta {
            if !(0.0..=90.0).contains(&theta) {
                return Err(CliError::Usage(format!(
                    "--theta {theta} is outside [0, 90]"
                )));
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> Result<u64, CliError> {
        self.p
            .ok_or_else(|| CliError::Usage("--p is required".into()))
    }

    pub fn residue(&self) -> Result<ResidueVector, CliError> {
        let t = self
            .t
            .clone()
            .ok_or_else(|| CliError::Usage("--t is required".into()))?;
        Ok(ResidueVector::new(self.prime()?, t)?)
    }

    pub fn signs_or_plus(&self, len: usize) -> Vec<Sign> {
        self.signs.clone().unwrap_or_else(|| vec![Sign::Plus; len])
    }
}
