//! Validated experiment configurations, one per subcommand.

use std::path::PathBuf;

use spectra_core::orthopoly::MAX_CORRELATION_POINTS;
use spectra_core::zeta::{HEIGHT_FLOOR, MAX_SCAN_STEP};
use spectra_core::{EnsembleConfig, EnsembleKind};

use crate::args::{Cli, Command, Common, EnsembleArg, UnfoldArg};
use crate::error::{CliError, Result};
use crate::table::Format;

pub const MAX_ZERO_HEIGHT: f64 = 500.0;
pub const MAX_KERNEL_ORDER: usize = 64;
pub const MAX_CLI_CORRELATION: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Global {
    pub seed: u64,
    pub out: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.lo + i as f64 * h).collect()
    }
}

impl std::str::FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Config(format!("grid '{s}' is not lo:hi:count"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else { return Err(bad()) };
        let grid = Grid {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
            count: count.trim().parse().map_err(|_| bad())?,
        };
        if !(grid.lo.is_finite() && grid.hi.is_finite()) || grid.count == 0 {
            return Err(CliError::Config(format!("grid '{s}' needs finite bounds and count >= 1")));
        }
        if grid.count > 1 && grid.lo >= grid.hi {
            return Err(CliError::Config(format!("grid '{s}' needs lo < hi")));
        }
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentConfig {
    Sample { ensemble: EnsembleConfig },
    Spacings { input: PathBuf, k: usize, unfold: Option<UnfoldArg>, sample_index: usize },
    Zeros { t_min: f64, t_max: f64, step: f64 },
    Compare { a: Vec<PathBuf>, b: PathBuf, bins: usize, hist_max: f64 },
    Zeromap { n_max: u64, zeros: PathBuf },
    Kernel { r: usize, grid: Grid, m: usize, tuples: usize },
}

fn require(ok: bool, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Config(message()))
    }
}

impl ExperimentConfig {
    /// Checks every numeric argument against its operation's preconditions.
    pub fn from_cli(cli: Cli) -> Result<(Self, Global)> {
        let global = |c: Common| Global { seed: c.seed, out: c.out, format: c.format };
        Ok(match cli.command {
            Command::Sample { ensemble, r, samples, common } => {
                let kind = match ensemble {
                    EnsembleArg::Goe => EnsembleKind::Goe,
                    EnsembleArg::Gue => EnsembleKind::Gue,
                    EnsembleArg::Bilinear => EnsembleKind::Bilinear,
                };
                let cfg = EnsembleConfig::new(kind, r, common.seed, samples)?;
                (Self::Sample { ensemble: cfg }, global(common))
            }
            Command::Spacings { input, k, unfold, sample_index, common } => {
                require(k >= 1, || "--k must be at least 1".into())?;
                (Self::Spacings { input, k, unfold, sample_index }, global(common))
            }
            Command::Zeros { t_max, t_min, step, common } => {
                require(t_min.is_finite() && t_min >= HEIGHT_FLOOR, || {
                    format!("--t-min must be at least {HEIGHT_FLOOR}")
                })?;
                require(t_max.is_finite() && t_max > t_min && t_max <= MAX_ZERO_HEIGHT, || {
                    format!("--t-max must lie in (t-min, {MAX_ZERO_HEIGHT}]")
                })?;
                require(step > 0.0 && step <= MAX_SCAN_STEP, || format!("--step must lie in (0, {MAX_SCAN_STEP}]"))?;
                (Self::Zeros { t_min, t_max, step }, global(common))
            }
            Command::Compare { matrix, zeros, bins, hist_max, common } => {
                require(bins >= 1, || "--bins must be at least 1".into())?;
                require(hist_max.is_finite() && hist_max > 0.0, || "--hist-max must be positive".into())?;
                (Self::Compare { a: matrix, b: zeros, bins, hist_max }, global(common))
            }
            Command::Zeromap { n_max, zeros, common } => {
                require((1..=spectra_core::zeromap::MAX_INDEX).contains(&n_max), || {
                    format!("--n-max must lie in [1, {}]", spectra_core::zeromap::MAX_INDEX)
                })?;
                (Self::Zeromap { n_max, zeros }, global(common))
            }
            Command::Kernel { r, grid, m, tuples, common } => {
                require((1..=MAX_KERNEL_ORDER).contains(&r), || format!("--r must lie in [1, {MAX_KERNEL_ORDER}]"))?;
                let limit = MAX_CLI_CORRELATION.min(MAX_CORRELATION_POINTS);
                require((1..=limit).contains(&m), || format!("--m must lie in [1, {limit}]"))?;
                require(tuples >= 1, || "--tuples must be at least 1".into())?;
                (Self::Kernel { r, grid: grid.parse()?, m, tuples }, global(common))
            }
        })
    }

    pub fn command_name(&self) -> &'static str {
        match self {
            Self::Sample { .. } => "sample",
            Self::Spacings { .. } => "spacings",
            Self::Zeros { .. } => "zeros",
            Self::Compare { .. } => "compare",
            Self::Zeromap { .. } => "zeromap",
            Self::Kernel { .. } => "kernel",
        }
    }
}
