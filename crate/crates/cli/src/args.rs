//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "spectra-lab", version, about = "Random-matrix and zeta-zero spacing experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// 64-bit seed; recorded in every output header.
    #[arg(long, env = "SPECTRA_LAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Primary output file; sidecars are written next to it.
    #[arg(long)]
    pub out: PathBuf,
    /// Table format for tabular outputs.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Goe,
    Gue,
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnfoldArg {
    Semicircle,
    Zeta,
    None,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample eigenvalues from a Gaussian ensemble.
    Sample {
        #[arg(long, value_enum, default_value_t = EnsembleArg::Gue)]
        ensemble: EnsembleArg,
        /// Matrix order.
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// k-th consecutive spacings of a spectrum or zero list.
    Spacings {
        /// Spectrum table from `sample`, or a zero list.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Defaults to semicircle for GOE/GUE spectra, zeta for zero lists
        /// and none otherwise.
        #[arg(long, value_enum)]
        unfold: Option<UnfoldArg>,
        /// Which spectrum of a multi-sample table to use.
        #[arg(long, default_value_t = 0)]
        sample_index: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Nontrivial zeta zeros with heights in (t-min, t-max].
    Zeros {
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 10.0)]
        t_min: f64,
        /// Sign-change scan step.
        #[arg(long, default_value_t = spectra_core::zeta::DEFAULT_SCAN_STEP)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Compare unfolded spacing distributions of two inputs.
    Compare {
        /// Spectrum tables (pooled) or a zero list; repeatable.
        #[arg(long, required = true)]
        matrix: Vec<PathBuf>,
        /// Zero list (or a spectrum table).
        #[arg(long)]
        zeros: PathBuf,
        /// Histogram bins on the spacing range [0, hist-max].
        #[arg(long, default_value_t = 40)]
        bins: usize,
        #[arg(long, default_value_t = 4.0)]
        hist_max: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalues of the 2x2 map for zero gamma_n paired with index n.
    Zeromap {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        zeros: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// GUE level density and m-point correlations on a grid.
    Kernel {
        /// Kernel order (number of levels).
        #[arg(long)]
        r: usize,
        /// `lo:hi:count`.
        #[arg(long, default_value = "-2:2:101", allow_hyphen_values = true)]
        grid: String,
        /// Correlation order for the tuple table.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Number of random point tuples.
        #[arg(long, default_value_t = 100)]
        tuples: usize,
        #[command(flatten)]
        common: Common,
    },
}
