//! Spectral statistics of Gaussian random matrices and of the nontrivial
//! zeros of the Riemann zeta function.
//!
//! The matrix, polynomial and 2×2-map code is generic over [`Real`]
//! (`f32`/`f64`); the `*64` aliases below fix the scalar to `f64`. Zeta
//! evaluation and the spacing statistics work in `f64` throughout.

// `!(x > 0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigensolve;
pub mod ensembles;
pub mod error;
pub mod orthopoly;
pub mod rng;
pub mod scalar;
pub mod spectral_stats;
pub mod zeromap;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Real;

pub use ensembles::{EnsembleConfig, EnsembleKind};
pub use spectral_stats::{SpacingSeries, UnfoldMethod, UnfoldedSeries};
pub use zeta::{ZeroList, ZeroSource};

pub type DenseSymMatrix64 = ensembles::DenseSymMatrix<f64>;
pub type HermMatrix64 = ensembles::HermMatrix<f64>;
pub type SymTriMatrix64 = eigensolve::SymTriMatrix<f64>;
pub type Spectrum64 = eigensolve::Spectrum<f64>;
pub type Recurrence64 = orthopoly::Recurrence<f64>;
pub type KernelEval64 = orthopoly::KernelEval<f64>;
pub type CartanTriple64 = zeromap::CartanTriple<f64>;
pub type Complex2x2F64 = zeromap::Complex2x2<f64>;

pub type SymTriMatrix32 = eigensolve::SymTriMatrix<f32>;
pub type Spectrum32 = eigensolve::Spectrum<f32>;
pub type KernelEval32 = orthopoly::KernelEval<f32>;
