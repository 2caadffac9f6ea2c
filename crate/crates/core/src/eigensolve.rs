//! Symmetric and Hermitian eigenvalues without external linear algebra.
//!
//! Dense symmetric input is reduced to tridiagonal form by Householder
//! reflections, then the tridiagonal eigenvalues come from QL iterations with
//! implicit Wilkinson-type shifts. Hermitian input goes through the real
//! embedding `[[A, -B], [B, A]]`, whose spectrum is the Hermitian spectrum
//! with every eigenvalue doubled. Eigenvectors are never formed.

use crate::ensembles::{
    sample_bilinear, sample_goe, sample_gue, DenseSymMatrix, EnsembleConfig, EnsembleKind, HermMatrix,
};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric tridiagonal matrix given by its two bands.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTriMatrix<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymTriMatrix<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Size("tridiagonal matrix must have order at least 1".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Size(format!(
                "off-diagonal length {} inconsistent with order {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if let Some(p) = diag.iter().chain(offdiag.iter()).position(|x| !x.is_finite()) {
            let (row, col) = if p < diag.len() { (p, p) } else { (p - diag.len() + 1, p - diag.len()) };
            return Err(Error::NumericInput { row, col });
        }
        Ok(Self { diag, offdiag })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn to_dense(&self) -> DenseSymMatrix<T> {
        let n = self.order();
        DenseSymMatrix::from_fn(n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i == j + 1 {
                self.offdiag[j]
            } else {
                T::zero()
            }
        })
    }
}

/// Sorted eigenvalues plus provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
    pub ensemble: Option<EnsembleKind>,
    pub meta: String,
}

impl<T: Real> Spectrum<T> {
    /// Sorts the given values ascending.
    pub fn new(mut values: Vec<T>, ensemble: Option<EnsembleKind>, meta: impl Into<String>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        Self { values, ensemble, meta: meta.into() }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64_lossy()).collect()
    }

    fn tagged(mut self, ensemble: Option<EnsembleKind>, meta: impl Into<String>) -> Self {
        self.ensemble = ensemble;
        self.meta = meta.into();
        self
    }
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
pub fn tridiagonalize<T: Real>(m: &DenseSymMatrix<T>) -> Result<SymTriMatrix<T>> {
    let n = m.order();
    if n == 0 {
        return Err(Error::Size("cannot tridiagonalize an empty matrix".into()));
    }
    if let Some(p) = m.entries().iter().position(|x| !x.is_finite()) {
        return Err(Error::NumericInput { row: p / n, col: p % n });
    }
    if n <= 2 {
        let diag = (0..n).map(|i| m.get(i, i)).collect();
        let offdiag = (1..n).map(|i| m.get(i, i - 1)).collect();
        return SymTriMatrix::new(diag, offdiag);
    }

    // Working copy; only the lower triangle is read and updated.
    let mut a = m.entries().to_vec();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];

    for i in (1..n).rev() {
        let l = i - 1;
        let row_i = i * n;
        if l == 0 {
            e[i] = a[row_i];
            continue;
        }
        let scale = (0..=l).fold(T::zero(), |acc, k| acc + a[row_i + k].abs());
        if scale == T::zero() {
            e[i] = a[row_i + l];
            continue;
        }
        let mut h = T::zero();
        for k in 0..=l {
            a[row_i + k] /= scale;
            h += a[row_i + k] * a[row_i + k];
        }
        let f = a[row_i + l];
        let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        a[row_i + l] = f - g;

        // p = A u / h, accumulated into e[0..=l]; K = u^T p / 2h
        let mut fsum = T::zero();
        for j in 0..=l {
            let row_j = j * n;
            let mut g = T::zero();
            for k in 0..=j {
                g += a[row_j + k] * a[row_i + k];
            }
            for k in (j + 1)..=l {
                g += a[k * n + j] * a[row_i + k];
            }
            e[j] = g / h;
            fsum += e[j] * a[row_i + j];
        }
        let hh = fsum / (h + h);
        for j in 0..=l {
            let f = a[row_i + j];
            let g = e[j] - hh * f;
            e[j] = g;
            let row_j = j * n;
            for k in 0..=j {
                let aik = a[row_i + k];
                a[row_j + k] -= f * e[k] + g * aik;
            }
        }
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[i * n + i];
    }
    SymTriMatrix::new(d, e[1..].to_vec())
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn eig_symtri<T: Real>(t: &SymTriMatrix<T>) -> Result<Spectrum<T>> {
    let n = t.order();
    let mut d = t.diag().to_vec();
    // e[i] couples rows i and i+1; e[n-1] is a zero sentinel.
    let mut e: Vec<T> = t.offdiag().iter().copied().chain(std::iter::once(T::zero())).collect();
    let eps = T::epsilon();
    let two = T::lit(2.0);
    let max_total = 30 * n;
    let mut total = 0usize;

    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            total += 1;
            if total > max_total {
                return Err(Error::SolverFailure { index: l, iterations: total - 1 });
            }
            // Shift from the leading 2x2 block, applied implicitly.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + r.abs().copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(Spectrum::new(d, None, "tridiagonal"))
}

/// Eigenvalues of a dense symmetric matrix.
pub fn eig_sym<T: Real>(m: &DenseSymMatrix<T>) -> Result<Spectrum<T>> {
    Ok(eig_symtri(&tridiagonalize(m)?)?.tagged(None, "symmetric"))
}

/// Real symmetric embedding `[[A, -B], [B, A]]` of `A + iB`.
pub fn real_embedding<T: Real>(m: &HermMatrix<T>) -> DenseSymMatrix<T> {
    let n = m.order();
    DenseSymMatrix::from_fn(2 * n, |i, j| {
        // called with j <= i
        let (bi, ri) = (i / n, i % n);
        let (bj, rj) = (j / n, j % n);
        let z = m.get(ri, rj);
        match (bi, bj) {
            (0, 0) | (1, 1) => z.re,
            (1, 0) => z.im,
            _ => -z.im,
        }
    })
}

/// Eigenvalues of a Hermitian matrix via its doubled real embedding.
pub fn eig_herm<T: Real>(m: &HermMatrix<T>) -> Result<Spectrum<T>> {
    let n = m.order();
    if n == 0 {
        return Err(Error::Size("empty Hermitian matrix".into()));
    }
    let doubled = eig_sym(&real_embedding(m))?.into_values();
    let scale = doubled.iter().fold(T::one(), |acc, v| acc.max(v.abs()));
    let rel = T::lit(1e-8).max(T::lit(100.0) * T::epsilon());
    let tolerance = rel * scale;
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let (lo, hi) = (doubled[2 * k], doubled[2 * k + 1]);
        let gap = hi - lo;
        if gap > tolerance {
            return Err(Error::EmbeddingDedup {
                position: k,
                gap: gap.to_f64_lossy(),
                tolerance: tolerance.to_f64_lossy(),
            });
        }
        values.push((lo + hi) / T::lit(2.0));
    }
    Ok(Spectrum::new(values, None, "hermitian"))
}

/// Elementwise square roots of a nonnegative spectrum. Values within
/// `1e-12 * scale` below zero are clamped to zero.
pub fn sqrt_spectrum<T: Real>(s: &Spectrum<T>) -> Result<Spectrum<T>> {
    let scale = s.values().iter().fold(T::one(), |acc, v| acc.max(v.abs()));
    let floor = -T::lit(1e-12) * scale;
    let mut out = Vec::with_capacity(s.order());
    for (j, &v) in s.values().iter().enumerate() {
        if v < floor {
            return Err(Error::Domain(format!("eigenvalue {j} = {v} is negative")));
        }
        out.push(v.max(T::zero()).sqrt());
    }
    Ok(Spectrum::new(out, s.ensemble, format!("sqrt({})", s.meta)))
}

/// Spectrum of sample `index` from the configured ensemble. For the bilinear
/// ensemble this is the spectrum of `G = TG^T TG` (the squared singular
/// values of `TG`).
pub fn ensemble_spectrum<T: Real>(cfg: &EnsembleConfig, index: usize) -> Result<Spectrum<T>> {
    let spectrum = match cfg.kind {
        EnsembleKind::Goe => eig_sym(&sample_goe::<T>(cfg, index)?)?,
        EnsembleKind::Gue => eig_herm(&sample_gue::<T>(cfg, index)?)?,
        EnsembleKind::Bilinear => eig_sym(&sample_bilinear::<T>(cfg, index)?.gram)?,
    };
    let meta = format!("{} r={} seed={} index={}", cfg.kind, cfg.order, cfg.seed, index);
    Ok(spectrum.tagged(Some(cfg.kind), meta))
}
