//! Explicit 2×2 map from trivial zeros `-2n` to critical-line values.
//!
//! With `alpha = diag(4n^2, 1)`, `D = [[1, i], [0, 1]] [[1, 0], [i, 1]] =
//! [[0, i], [i, 1]]` and `epsilon = diag(E, 1)`, the product
//! `D * epsilon * alpha = [[0, i], [4n^2 E i, 1]]` has trace 1 and determinant
//! `4n^2 E`. Its eigenvalues are therefore `(1 ± i sqrt(16 n^2 E - 1)) / 2`:
//! real part one half whenever `16 n^2 E > 1`, with product `4n^2 E`.
//! Choosing `E = (4 gamma^2 + 1) / (16 n^2)` puts them at `1/2 ± i gamma`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest accepted trivial-zero index.
pub const MAX_INDEX: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex2x2<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Real> Complex2x2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self { a, b, c, d }
    }

    pub fn real_diag(x: T, y: T) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(Complex::new(x, T::zero()), z, z, Complex::new(y, T::zero()))
    }

    pub fn identity() -> Self {
        Self::real_diag(T::one(), T::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn trace(&self) -> Complex<T> {
        self.a + self.d
    }

    pub fn det(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// `(n, E)`: trivial-zero index and energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanTriple<T> {
    n: u64,
    energy: T,
}

impl<T: Real> CartanTriple<T> {
    pub fn new(n: u64, energy: T) -> Result<Self> {
        check_index(n)?;
        if !(energy > T::zero()) || !energy.is_finite() {
            return Err(Error::Domain(format!("energy must be positive and finite, got {energy}")));
        }
        Ok(Self { n, energy })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    /// `4 n^2`.
    pub fn bipoint(&self) -> T {
        T::lit(kernel_bipoints(self.n) as f64)
    }

    /// `16 n^2 E - 1`; positive on the critical-line branch.
    pub fn discriminant(&self) -> T {
        T::lit(4.0) * self.bipoint() * self.energy - T::one()
    }
}

fn check_index(n: u64) -> Result<()> {
    if n == 0 || n > MAX_INDEX {
        return Err(Error::Domain(format!("index n = {n} outside 1..={MAX_INDEX}")));
    }
    Ok(())
}

/// `diag(4n^2, 1)`.
pub fn build_alpha<T: Real>(n: u64) -> Result<Complex2x2<T>> {
    check_index(n)?;
    Ok(Complex2x2::real_diag(T::lit(kernel_bipoints(n) as f64), T::one()))
}

/// `[[1, i], [0, 1]] * [[1, 0], [i, 1]]`.
pub fn build_d<T: Real>() -> Complex2x2<T> {
    let (o, z, i) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::one()));
    let upper = Complex2x2::new(o, i, z, o);
    let lower = Complex2x2::new(o, z, i, o);
    upper.mul(&lower)
}

/// `diag(E, 1)`.
pub fn build_epsilon<T: Real>(energy: T) -> Result<Complex2x2<T>> {
    if !(energy > T::zero()) || !energy.is_finite() {
        return Err(Error::Domain(format!("energy must be positive and finite, got {energy}")));
    }
    Ok(Complex2x2::real_diag(energy, T::one()))
}

/// `D * epsilon * alpha`.
pub fn product_dea<T: Real>(t: &CartanTriple<T>) -> Complex2x2<T> {
    let alpha = build_alpha::<T>(t.n).expect("validated triple");
    let eps = build_epsilon(t.energy).expect("validated triple");
    build_d::<T>().mul(&eps).mul(&alpha)
}

/// Roots of `x^2 - tr x + det`, larger-magnitude root first, the other from
/// `det / root`.
pub fn eigen2x2<T: Real>(m: &Complex2x2<T>) -> (Complex<T>, Complex<T>) {
    let two = T::lit(2.0);
    let tr = m.trace();
    let det = m.det();
    let root = (tr * tr - det * T::lit(4.0)).sqrt();
    // pick the sign that avoids cancellation
    let plus = tr + root;
    let minus = tr - root;
    let big = if plus.norm_sqr() >= minus.norm_sqr() { plus / two } else { minus / two };
    let zero = Complex::new(T::zero(), T::zero());
    if big == zero {
        return (zero, zero);
    }
    (big, det / big)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `16 n^2 E > 1`: conjugate pair on `Re = 1/2`.
    Critical,
    /// `16 n^2 E = 1`: double root `1/2`.
    Degenerate,
    /// `16 n^2 E < 1`: two real roots.
    OffCritical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPair<T> {
    pub plus: Complex<T>,
    pub minus: Complex<T>,
    pub regime: Regime,
}

/// Closed form `(1 ± i sqrt(16 n^2 E - 1)) / 2`.
pub fn lambda_pm<T: Real>(t: &CartanTriple<T>) -> LambdaPair<T> {
    let half = T::lit(0.5);
    let disc = t.discriminant();
    let zero = T::zero();
    if disc > zero {
        let im = disc.sqrt() * half;
        LambdaPair { plus: Complex::new(half, im), minus: Complex::new(half, -im), regime: Regime::Critical }
    } else if disc < zero {
        let re = (-disc).sqrt() * half;
        LambdaPair {
            plus: Complex::new(half + re, zero),
            minus: Complex::new(half - re, zero),
            regime: Regime::OffCritical,
        }
    } else {
        let h = Complex::new(half, zero);
        LambdaPair { plus: h, minus: h, regime: Regime::Degenerate }
    }
}

/// Triple whose eigenvalues sit at `1/2 ± i gamma`:
/// `E = (4 gamma^2 + 1) / (16 n^2)`.
pub fn energy_from_gamma<T: Real>(n: u64, gamma: T) -> Result<CartanTriple<T>> {
    check_index(n)?;
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::Domain(format!("gamma must be nonnegative, got {gamma}")));
    }
    let nn = T::lit(n as f64);
    let energy = (T::lit(4.0) * gamma * gamma + T::one()) / (T::lit(16.0) * nn * nn);
    CartanTriple::new(n, energy)
}

/// `-2, -4, ..., -2 count`.
pub fn trivial_zeros(count: usize) -> Vec<i64> {
    (1..=count as i64).map(|n| -2 * n).collect()
}

/// `4 n^2`, the square of the trivial zero `-2n`.
pub fn kernel_bipoints(n: u64) -> u64 {
    4 * n * n
}

/// `(sum n e^{-2 pi i n x}, sum n e^{+2 pi i n x})` for `n = 1..=terms`.
pub fn elliptic_partial_sum<T: Real>(x: T, terms: usize) -> (Complex<T>, Complex<T>) {
    let two_pi = T::lit(2.0) * T::PI();
    // reduce x mod 1 so large arguments keep full phase accuracy
    let frac = x - x.floor();
    let mut right = Complex::new(T::zero(), T::zero());
    let mut left = Complex::new(T::zero(), T::zero());
    for n in 1..=terms {
        let nn = T::from_usize_lossy(n);
        let phase = two_pi * ((nn * frac) - (nn * frac).floor());
        let (s, c) = phase.sin_cos();
        right += Complex::new(nn * c, -nn * s);
        left += Complex::new(nn * c, nn * s);
    }
    (right, left)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiwaveRow<T> {
    pub n: u64,
    pub gamma: T,
    pub energy: T,
    pub lambda: LambdaPair<T>,
    /// `|trace(D eps alpha) - 1|`.
    pub trace_residual: T,
    /// `|det(D eps alpha) - 4 n^2 E| / (4 n^2 E)`.
    pub det_residual: T,
    /// Largest of `|Re lambda± - 1/2|` and `|Im lambda+ - gamma|`.
    pub lambda_residual: T,
    pub critical_line_ok: bool,
}

/// Tolerance used for the `critical_line_ok` verdict.
pub const CRITICAL_LINE_TOLERANCE: f64 = 1e-10;

/// Builds the triple for each `(gamma_j, n_j)` pair and reports how well the
/// trace, determinant and critical-line identities hold.
pub fn biwave_check<T: Real>(gammas: &[T], ns: &[u64]) -> Result<Vec<BiwaveRow<T>>> {
    if gammas.len() != ns.len() {
        return Err(Error::Size(format!(
            "{} zeros paired with {} indices",
            gammas.len(),
            ns.len()
        )));
    }
    let half = T::lit(0.5);
    let tol = T::lit(CRITICAL_LINE_TOLERANCE);
    gammas
        .iter()
        .zip(ns)
        .map(|(&gamma, &n)| {
            let triple = energy_from_gamma(n, gamma)?;
            let m = product_dea(&triple);
            let target = triple.bipoint() * triple.energy;
            let trace_residual = (m.trace() - Complex::new(T::one(), T::zero())).norm();
            let det_residual = (m.det() - Complex::new(target, T::zero())).norm() / target;
            let lambda = lambda_pm(&triple);
            let lambda_residual = (lambda.plus.re - half)
                .abs()
                .max((lambda.minus.re - half).abs())
                .max((lambda.plus.im - gamma).abs());
            let critical_line_ok = lambda.regime != Regime::OffCritical
                && lambda_residual <= tol * gamma.max(T::one());
            Ok(BiwaveRow {
                n,
                gamma,
                energy: triple.energy,
                lambda,
                trace_residual,
                det_residual,
                lambda_residual,
                critical_line_ok,
            })
        })
        .collect()
}
