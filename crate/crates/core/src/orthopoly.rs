//! Orthogonal polynomials for the Gaussian weight `w(x) = exp(-r x^2)`.
//!
//! Polynomials are monic: `P_{i+1}(x) = (x - a_i) P_i(x) - b_i P_{i-1}(x)`
//! with `a_i = 0`, `b_i = i / (2r)` and squared norms
//! `h_i = ∫ P_i^2 w = sqrt(pi/r) i! / (2r)^i`. The weighted orthonormal
//! functions are `psi_i(x) = h_i^{-1/2} P_i(x) w(x)^{1/2}`, and the
//! Christoffel–Darboux kernel `K_r(x, y) = sum_{i<r} psi_i(x) psi_i(y)` gives
//! the m-point correlation functions as determinants `det K_r(x_k, x_l)`.

use crate::eigensolve::{eig_symtri, SymTriMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Three-term recurrence coefficients and squared norms up to `max_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct Recurrence<T> {
    pub rate: T,
    /// Diagonal coefficients `a_i`, all zero for the even weight.
    pub a: Vec<T>,
    /// `b[0]` is unused and stored as zero.
    pub b: Vec<T>,
    pub h: Vec<T>,
}

impl<T: Real> Recurrence<T> {
    pub fn max_degree(&self) -> usize {
        self.a.len() - 1
    }
}

pub fn recurrence_coeffs<T: Real>(rate: T, max_degree: usize) -> Result<Recurrence<T>> {
    if !(rate > T::zero()) || !rate.is_finite() {
        return Err(Error::Domain(format!("weight rate must be positive, got {rate}")));
    }
    let n = max_degree + 1;
    let a = vec![T::zero(); n];
    let two_r = T::lit(2.0) * rate;
    let b: Vec<T> = (0..n).map(|i| T::from_usize_lossy(i) / two_r).collect();
    let mut h = Vec::with_capacity(n);
    h.push((T::PI() / rate).sqrt());
    for i in 1..n {
        let prev = h[i - 1];
        h.push(prev * b[i]);
    }
    Ok(Recurrence { rate, a, b, h })
}

/// Symmetric Jacobi matrix of size `degree`: diagonal `a_i`, off-diagonal
/// `sqrt(b_{i+1})`.
pub fn jacobi_matrix<T: Real>(rec: &Recurrence<T>, degree: usize) -> Result<SymTriMatrix<T>> {
    if degree == 0 {
        return Err(Error::Size("Jacobi matrix of degree 0 is empty".into()));
    }
    if degree > rec.a.len() {
        return Err(Error::Size(format!(
            "degree {degree} exceeds recurrence length {}",
            rec.a.len()
        )));
    }
    let diag = rec.a[..degree].to_vec();
    let offdiag = (1..degree).map(|i| rec.b[i].sqrt()).collect();
    SymTriMatrix::new(diag, offdiag)
}

/// Roots of `P_degree`, computed as the Jacobi-matrix eigenvalues.
pub fn polynomial_roots<T: Real>(rec: &Recurrence<T>, degree: usize) -> Result<Vec<T>> {
    Ok(eig_symtri(&jacobi_matrix(rec, degree)?)?.into_values())
}

/// Monic `P_degree(x)` by forward recurrence.
pub fn monic_value<T: Real>(rec: &Recurrence<T>, degree: usize, x: T) -> T {
    let (mut prev, mut cur) = (T::zero(), T::one());
    for i in 0..degree {
        let next = (x - rec.a[i]) * cur - rec.b[i] * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Gauss rule for `∫ f(x) exp(-r x^2) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussRule<T> {
    pub fn integrate(&self, mut f: impl FnMut(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

/// Gauss–Hermite nodes from the Jacobi matrix; weights are the Christoffel
/// numbers `1 / sum_{i<n} p_i(x_k)^2` over orthonormal polynomials.
pub fn gauss_hermite<T: Real>(rate: T, nodes: usize) -> Result<GaussRule<T>> {
    let rec = recurrence_coeffs(rate, nodes)?;
    let xs = polynomial_roots(&rec, nodes)?;
    let weights = xs
        .iter()
        .map(|&x| {
            let mut sum = T::zero();
            let (mut prev, mut cur) = (T::zero(), T::one() / rec.h[0].sqrt());
            for i in 0..nodes {
                sum += cur * cur;
                let next = (x * cur - rec.b[i].sqrt() * prev) / rec.b[i + 1].sqrt();
                prev = cur;
                cur = next;
            }
            T::one() / sum
        })
        .collect();
    Ok(GaussRule { nodes: xs, weights })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiValue<T> {
    pub value: T,
    /// The Gaussian factor fell below the representable range.
    pub underflow: bool,
}

/// Values `psi_0(x) .. psi_{count-1}(x)`.
///
/// The orthonormal polynomials are run forward with periodic rescaling, and
/// the accumulated log-scale is folded into the Gaussian factor at the end,
/// so large `|x|` neither overflows the polynomial nor loses the tail.
pub fn psi_values<T: Real>(count: usize, x: T, rate: T) -> Vec<PsiValue<T>> {
    let half_r = rate / T::lit(2.0);
    let big = T::max_value().sqrt().sqrt();
    let ln_big = big.ln();
    let ln_tiny = T::min_positive_value().ln();
    let gauss_exponent = -half_r * x * x;
    let mut out = Vec::with_capacity(count);
    // orthonormal p_0 = (r/pi)^{1/4}
    let mut prev = T::zero();
    let mut cur = (rate / T::PI()).sqrt().sqrt();
    let mut log_scale = T::zero();
    let two_r = T::lit(2.0) * rate;
    for i in 0..count {
        let exponent = gauss_exponent + log_scale;
        let push = if cur == T::zero() {
            PsiValue { value: T::zero(), underflow: false }
        } else {
            let total = exponent + cur.abs().ln();
            if total < ln_tiny {
                PsiValue { value: T::zero(), underflow: true }
            } else {
                PsiValue { value: cur * exponent.exp(), underflow: false }
            }
        };
        out.push(push);
        if i + 1 == count {
            break;
        }
        let sb_i = (T::from_usize_lossy(i) / two_r).sqrt();
        let sb_next = (T::from_usize_lossy(i + 1) / two_r).sqrt();
        let next = (x * cur - sb_i * prev) / sb_next;
        prev = cur;
        cur = next;
        if cur.abs() > big {
            prev /= big;
            cur /= big;
            log_scale += ln_big;
        }
    }
    out
}

pub fn psi_eval<T: Real>(i: usize, x: T, rate: T) -> PsiValue<T> {
    psi_values(i + 1, x, rate)[i]
}

/// `psi_i(x)`; underflowed tails read as zero.
pub fn psi<T: Real>(i: usize, x: T, rate: T) -> T {
    psi_eval(i, x, rate).value
}

/// Christoffel–Darboux kernel with `order` terms at weight rate `rate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval<T> {
    order: usize,
    rate: T,
}

impl<T: Real> KernelEval<T> {
    pub fn new(order: usize, rate: T) -> Result<Self> {
        if order == 0 {
            return Err(Error::Size("kernel order must be at least 1".into()));
        }
        if !(rate > T::zero()) || !rate.is_finite() {
            return Err(Error::Domain(format!("weight rate must be positive, got {rate}")));
        }
        Ok(Self { order, rate })
    }

    /// The GUE kernel: `order` terms at weight rate `order`.
    pub fn gue(order: usize) -> Result<Self> {
        Self::new(order, T::from_usize_lossy(order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rate(&self) -> T {
        self.rate
    }

    fn psi_row(&self, x: T) -> Vec<T> {
        psi_values(self.order, x, self.rate).into_iter().map(|p| p.value).collect()
    }
}

pub fn cd_kernel<T: Real>(k: &KernelEval<T>, x: T, y: T) -> T {
    let px = k.psi_row(x);
    let py = k.psi_row(y);
    px.iter().zip(&py).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
}

/// One-point function `K_r(x, x)`.
pub fn level_density<T: Real>(k: &KernelEval<T>, x: T) -> T {
    k.psi_row(x).iter().fold(T::zero(), |acc, &a| acc + a * a)
}

/// Largest point count accepted by [`correlation_det`].
pub const MAX_CORRELATION_POINTS: usize = 8;

/// m-point correlation `det [K_r(x_k, x_l)]`.
pub fn correlation_det<T: Real>(k: &KernelEval<T>, points: &[T], m: usize) -> Result<T> {
    if m == 0 || m > MAX_CORRELATION_POINTS {
        return Err(Error::Size(format!("correlation order {m} outside 1..={MAX_CORRELATION_POINTS}")));
    }
    if points.len() != m {
        return Err(Error::Size(format!("expected {m} points, got {}", points.len())));
    }
    let rows: Vec<Vec<T>> = points.iter().map(|&x| k.psi_row(x)).collect();
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |acc, (&u, &v)| acc + u * v);
    let mut gram = vec![T::zero(); m * m];
    for i in 0..m {
        for j in 0..=i {
            let v = dot(&rows[i], &rows[j]);
            gram[i * m + j] = v;
            gram[j * m + i] = v;
        }
    }
    Ok(lu_determinant(gram, m))
}

/// Determinant by LU with partial pivoting. Consumes the row-major buffer.
pub fn lu_determinant<T: Real>(mut a: Vec<T>, n: usize) -> T {
    let mut det = T::one();
    for c in 0..n {
        let mut p = c;
        for r in (c + 1)..n {
            if a[r * n + c].abs() > a[p * n + c].abs() {
                p = r;
            }
        }
        let pivot = a[p * n + c];
        if pivot == T::zero() {
            return T::zero();
        }
        if p != c {
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
            }
            det = -det;
        }
        det *= pivot;
        for r in (c + 1)..n {
            let f = a[r * n + c] / pivot;
            for k in (c + 1)..n {
                let v = a[c * n + k];
                a[r * n + k] -= f * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use proptest::prelude::*;

    // Gaussian moments m_k = ∫ x^k e^{-r x^2} dx.
    fn moment(k: usize, r: f64) -> f64 {
        if k % 2 == 1 {
            return 0.0;
        }
        let mut m = (std::f64::consts::PI / r).sqrt();
        let mut j = 1;
        while j < k {
            m *= j as f64 / (2.0 * r);
            j += 2;
        }
        m
    }

    // Hankel determinant D_n = det[m_{i+j}]_{i,j<n}; h_i = D_{i+1}/D_i.
    fn hankel_det(n: usize, r: f64) -> f64 {
        if n == 0 {
            return 1.0;
        }
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = moment(i + j, r);
            }
        }
        lu_determinant(a, n)
    }

    #[test]
    fn coefficients_match_moment_oracle() {
        for &r in &[1.0, 2.5] {
            let rec = recurrence_coeffs(r, 8).unwrap();
            for i in 0..=8 {
                let h = hankel_det(i + 1, r) / hankel_det(i, r);
                assert!((rec.h[i] / h - 1.0).abs() < 1e-9, "h_{i}: {} vs {h}", rec.h[i]);
                if i >= 1 {
                    let hp = hankel_det(i, r) / hankel_det(i - 1, r);
                    assert!((rec.b[i] - h / hp).abs() < 1e-9);
                }
                assert_eq!(rec.a[i], 0.0);
            }
        }
        let rec = recurrence_coeffs(1.0, 3).unwrap();
        assert_eq!(&rec.b[1..], &[0.5, 1.0, 1.5]);
        assert!((rec.h[0] - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!(recurrence_coeffs(0.0, 3).is_err());
        assert!(recurrence_coeffs(-1.0, 3).is_err());
    }

    #[test]
    fn jacobi_shapes() {
        let rec = recurrence_coeffs(1.0, 4).unwrap();
        let j1 = jacobi_matrix(&rec, 1).unwrap();
        assert_eq!(j1.diag(), &[0.0]);
        assert!(j1.offdiag().is_empty());
        let j2 = jacobi_matrix(&rec, 2).unwrap();
        assert!((j2.offdiag()[0] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(jacobi_matrix(&rec, 0).is_err());
        assert!(jacobi_matrix(&rec, 6).is_err());
    }

    #[test]
    fn degree_two_roots() {
        let rec = recurrence_coeffs(1.0, 2).unwrap();
        let roots = polynomial_roots(&rec, 2).unwrap();
        let s = 0.5f64.sqrt();
        assert!((roots[0] + s).abs() < 1e-14 && (roots[1] - s).abs() < 1e-14);
    }

    #[test]
    fn roots_are_traceless() {
        let rec = recurrence_coeffs(1.7, 20).unwrap();
        for d in 1..=20 {
            let roots = polynomial_roots(&rec, d).unwrap();
            assert!(roots.iter().sum::<f64>().abs() < 1e-12);
        }
    }

    #[test]
    fn psi_zero_value_and_orthonormality() {
        assert!((psi(0, 0.0, 1.0) - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
        assert!((psi(0, 0.0f64, 1.0) - 0.7511255444649425).abs() < 1e-12);
        // psi_i psi_j = p_i p_j w, so integrate the polynomial part against w
        let rule = gauss_hermite(1.0, 64).unwrap();
        let poly = |i: usize, x: f64| psi(i, x, 1.0) * (x * x / 2.0).exp();
        let i35 = rule.integrate(|x| poly(3, x) * poly(5, x));
        let i44 = rule.integrate(|x| poly(4, x) * poly(4, x));
        assert!(i35.abs() < 1e-10, "{i35}");
        assert!((i44 - 1.0).abs() < 1e-10, "{i44}");
    }

    #[test]
    fn psi_far_tail_underflows_cleanly() {
        let p = psi_eval(3, 60.0f64, 1.0);
        assert!(p.underflow);
        assert_eq!(p.value, 0.0);
        let p = psi_eval(150, 18.0f64, 1.0);
        assert!(p.value.is_finite() && !p.underflow && p.value != 0.0);
    }

    #[test]
    fn gauss_hermite_weights_sum_to_mass() {
        let rule = gauss_hermite(2.0, 40).unwrap();
        let total: f64 = rule.weights.iter().sum();
        assert!((total - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-13);
        // x^4 moment: 3/(4 r^2) sqrt(pi/r)
        let m4 = rule.integrate(|x| x.powi(4));
        assert!((m4 - moment(4, 2.0)).abs() < 1e-13);
    }

    #[test]
    fn kernel_basics() {
        let k = KernelEval::new(1, 1.0).unwrap();
        let x = 0.3f64;
        assert!((level_density(&k, x) - psi(0, x, 1.0).powi(2)).abs() < 1e-16);
        let k = KernelEval::gue(7).unwrap();
        assert_eq!(cd_kernel(&k, 0.2, -0.9), cd_kernel(&k, -0.9, 0.2));
        assert!(KernelEval::<f64>::new(0, 1.0).is_err());
    }

    #[test]
    fn kernel_trace_equals_order() {
        for r in 1..=20 {
            let k = KernelEval::<f64>::gue(r).unwrap();
            let rule = gauss_hermite(r as f64, 64).unwrap();
            // K(x,x) = sum p_i(x)^2 w(x)
            let tr = rule.integrate(|x| level_density(&k, x) * (r as f64 * x * x).exp());
            assert!((tr - r as f64).abs() < 1e-8, "r={r}: {tr}");
        }
    }

    #[test]
    fn reproducing_property() {
        for r in [3usize, 12] {
            let k = KernelEval::<f64>::gue(r).unwrap();
            let rule = gauss_hermite(r as f64, 128).unwrap();
            let probes = [-1.1, 0.0, 0.7];
            for &x in &probes {
                for &z in &probes {
                    let lhs = rule.integrate(|y| cd_kernel(&k, x, y) * cd_kernel(&k, y, z) * (r as f64 * y * y).exp());
                    assert!((lhs - cd_kernel(&k, x, z)).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn correlation_small_cases() {
        let k = KernelEval::<f64>::gue(6).unwrap();
        let x = 0.4;
        let y = -0.25;
        assert_eq!(correlation_det(&k, &[x], 1).unwrap(), level_density(&k, x));
        let r2 = correlation_det(&k, &[x, y], 2).unwrap();
        let closed = cd_kernel(&k, x, x) * cd_kernel(&k, y, y) - cd_kernel(&k, x, y).powi(2);
        assert!((r2 - closed).abs() < 1e-12);
        assert!(correlation_det(&k, &[x, x], 2).unwrap().abs() < 1e-12);
        assert!(correlation_det(&k, &[], 0).is_err());
        assert!(correlation_det(&k, &[0.0; 9], 9).is_err());
        assert!(correlation_det(&k, &[0.0; 2], 3).is_err());
    }

    #[test]
    fn level_density_approaches_semicircle() {
        let r = 40;
        let k = KernelEval::<f64>::gue(r).unwrap();
        let edge = 2f64.sqrt();
        let steps = 4000;
        let h = 2.0 * edge / steps as f64;
        let l1: f64 = (0..steps)
            .map(|s| {
                let x = -edge + (s as f64 + 0.5) * h;
                let rho = (2.0 - x * x).max(0.0).sqrt() / std::f64::consts::PI;
                (level_density(&k, x) / r as f64 - rho).abs() * h
            })
            .sum();
        assert!(l1 <= 0.08, "{l1}");
    }

    #[test]
    fn correlation_positivity_sweep() {
        let rng = CounterRng::new(3, 3);
        for trial in 0..10_000u64 {
            let order = 1 + (trial % 12) as usize;
            let m = 1 + (trial % 4) as usize;
            let k = KernelEval::<f64>::gue(order).unwrap();
            let pts: Vec<f64> = (0..m).map(|i| 1.5 * (2.0 * rng.uniform(trial, i as u64, 0) - 1.0)).collect();
            assert!(correlation_det(&k, &pts, m).unwrap() >= -1e-10);
        }
    }

    proptest! {
        #[test]
        fn kernel_symmetric(x in -3.0f64..3.0, y in -3.0f64..3.0, r in 1usize..30) {
            let k = KernelEval::<f64>::gue(r).unwrap();
            prop_assert_eq!(cd_kernel(&k, x, y), cd_kernel(&k, y, x));
            prop_assert!(level_density(&k, x) >= 0.0);
        }

        #[test]
        fn roots_symmetric_about_zero(d in 1usize..30, rate in 0.1f64..10.0) {
            let rec = recurrence_coeffs(rate, d).unwrap();
            let roots = polynomial_roots(&rec, d).unwrap();
            let scale = roots.last().unwrap().abs().max(1.0);
            for (a, b) in roots.iter().zip(roots.iter().rev()) {
                prop_assert!((a + b).abs() < 1e-12 * scale);
            }
        }
    }
}
