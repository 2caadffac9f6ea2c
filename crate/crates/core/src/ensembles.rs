//! Gaussian ensembles: GOE, GUE and the bilinear (Gram) ensemble.
//!
//! Entry variances follow from the matrix density `exp(-r Tr M^2)`. Writing
//! `Tr M^2 = sum_i M_ii^2 + 2 sum_{i<j} |M_ij|^2`, each diagonal entry carries
//! the weight `exp(-r x^2)` (variance `1/(2r)`) and each off-diagonal entry the
//! weight `exp(-2r |z|^2)`, i.e. variance `1/(4r)` per real component. With
//! these variances the GUE spectrum fills `[-sqrt 2, sqrt 2]` and the GOE
//! spectrum `[-1, 1]` as `r` grows.
//!
//! Draws are keyed by `(seed, kind, sample index, row, column, component)`,
//! so every matrix is a pure function of its configuration and index.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    Goe,
    Gue,
    Bilinear,
}

impl EnsembleKind {
    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Goe => "GOE",
            EnsembleKind::Gue => "GUE",
            EnsembleKind::Bilinear => "BILINEAR",
        }
    }

    /// Edge of the limiting semicircle for the `exp(-r Tr M^2)` scaling.
    /// The bilinear ensemble has no semicircle limit.
    pub fn semicircle_radius(self) -> Option<f64> {
        match self {
            EnsembleKind::Goe => Some(1.0),
            EnsembleKind::Gue => Some(std::f64::consts::SQRT_2),
            EnsembleKind::Bilinear => None,
        }
    }

    fn stream(self) -> u64 {
        match self {
            EnsembleKind::Goe => 1,
            EnsembleKind::Gue => 2,
            EnsembleKind::Bilinear => 3,
        }
    }
}

impl std::fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "goe" => Ok(EnsembleKind::Goe),
            "gue" => Ok(EnsembleKind::Gue),
            "bilinear" | "bgoe" => Ok(EnsembleKind::Bilinear),
            other => Err(Error::InvalidConfig(format!("unknown ensemble '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleConfig {
    pub kind: EnsembleKind,
    pub order: usize,
    pub seed: u64,
    pub samples: usize,
}

impl EnsembleConfig {
    pub fn new(kind: EnsembleKind, order: usize, seed: u64, samples: usize) -> Result<Self> {
        let cfg = Self { kind, order, seed, samples };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidConfig("matrix order must be at least 1".into()));
        }
        if self.samples == 0 {
            return Err(Error::InvalidConfig("sample count must be at least 1".into()));
        }
        Ok(())
    }

    fn check(&self, expected: EnsembleKind, index: usize) -> Result<CounterRng> {
        self.validate()?;
        if self.kind != expected {
            return Err(Error::InvalidConfig(format!(
                "configuration is for {}, not {}",
                self.kind, expected
            )));
        }
        if index >= self.samples {
            return Err(Error::InvalidConfig(format!(
                "sample index {index} out of range for {} samples",
                self.samples
            )));
        }
        Ok(CounterRng::new(self.seed, self.kind.stream()).fork(index as u64))
    }
}

/// Real symmetric matrix, stored row-major in full.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Real> DenseSymMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        Self { order, entries: vec![T::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = T::one();
        }
        m
    }

    /// Builds from row-major entries, rejecting anything not exactly symmetric.
    pub fn from_row_major(order: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::Size(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        for i in 0..order {
            for j in 0..i {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(Error::Domain(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `Tr(M^2)`, i.e. the squared Frobenius norm.
    pub fn trace_of_square(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, &x| acc + x * x)
    }
}

/// Complex Hermitian matrix, stored row-major in full.
#[derive(Debug, Clone, PartialEq)]
pub struct HermMatrix<T> {
    order: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> HermMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        Self { order, entries: vec![Complex::new(T::zero(), T::zero()); order * order] }
    }

    pub fn from_row_major(order: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::Size(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        for i in 0..order {
            if entries[i * order + i].im != T::zero() {
                return Err(Error::Domain(format!("diagonal entry {i} has nonzero imaginary part")));
            }
            for j in 0..i {
                if entries[i * order + j] != entries[j * order + i].conj() {
                    return Err(Error::Domain(format!("matrix not Hermitian at ({i}, {j})")));
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.order + j]
    }

    /// Sets `(i, j)` to `v` and `(j, i)` to its conjugate. On the diagonal
    /// only the real part is kept.
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        if i == j {
            self.entries[i * self.order + i] = Complex::new(v.re, T::zero());
        } else {
            self.entries[i * self.order + j] = v;
            self.entries[j * self.order + i] = v.conj();
        }
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i).re)
    }
}

/// Upper-triangular factor `TG` of a bilinear draw (lower triangle zero).
#[derive(Debug, Clone, PartialEq)]
pub struct UpperTriangular<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Real> UpperTriangular<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `TG^T * TG`.
    pub fn gram(&self) -> DenseSymMatrix<T> {
        let n = self.order;
        DenseSymMatrix::from_fn(n, |i, j| {
            // (TG^T TG)_ij = sum_k TG_ki TG_kj, and TG_ki = 0 for k > i.
            let upto = i.min(j);
            (0..=upto).fold(T::zero(), |acc, k| acc + self.get(k, i) * self.get(k, j))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BilinearDraw<T> {
    pub factor: UpperTriangular<T>,
    pub gram: DenseSymMatrix<T>,
}

fn diag_sd(r: usize) -> f64 {
    (1.0 / (2.0 * r as f64)).sqrt()
}

fn offdiag_sd(r: usize) -> f64 {
    (1.0 / (4.0 * r as f64)).sqrt()
}

/// GOE draw: `Var(M_ii) = 1/(2r)`, `Var(M_ij) = 1/(4r)`.
pub fn sample_goe<T: Real>(cfg: &EnsembleConfig, index: usize) -> Result<DenseSymMatrix<T>> {
    let rng = cfg.check(EnsembleKind::Goe, index)?;
    let r = cfg.order;
    let (sd_d, sd_o) = (diag_sd(r), offdiag_sd(r));
    Ok(DenseSymMatrix::from_fn(r, |i, j| {
        let sd = if i == j { sd_d } else { sd_o };
        T::lit(sd * rng.normal(i as u64, j as u64, 0))
    }))
}

/// GUE draw: `Var(M_ii) = 1/(2r)`, `Var(Re M_ij) = Var(Im M_ij) = 1/(4r)`.
pub fn sample_gue<T: Real>(cfg: &EnsembleConfig, index: usize) -> Result<HermMatrix<T>> {
    let rng = cfg.check(EnsembleKind::Gue, index)?;
    let r = cfg.order;
    let (sd_d, sd_o) = (diag_sd(r), offdiag_sd(r));
    let mut m = HermMatrix::zeros(r);
    for i in 0..r {
        m.set(i, i, Complex::new(T::lit(sd_d * rng.normal(i as u64, i as u64, 0)), T::zero()));
        for j in (i + 1)..r {
            let re = sd_o * rng.normal(i as u64, j as u64, 0);
            let im = sd_o * rng.normal(i as u64, j as u64, 1);
            m.set(i, j, Complex::new(T::lit(re), T::lit(im)));
        }
    }
    Ok(m)
}

/// Bilinear draw: upper-triangular `TG` with the GOE entry variances, and
/// `G = TG^T * TG`.
pub fn sample_bilinear<T: Real>(cfg: &EnsembleConfig, index: usize) -> Result<BilinearDraw<T>> {
    let rng = cfg.check(EnsembleKind::Bilinear, index)?;
    let r = cfg.order;
    let (sd_d, sd_o) = (diag_sd(r), offdiag_sd(r));
    let mut entries = vec![T::zero(); r * r];
    for i in 0..r {
        for j in i..r {
            let sd = if i == j { sd_d } else { sd_o };
            entries[i * r + j] = T::lit(sd * rng.normal(i as u64, j as u64, 0));
        }
    }
    let factor = UpperTriangular { order: r, entries };
    let gram = factor.gram();
    Ok(BilinearDraw { factor, gram })
}
