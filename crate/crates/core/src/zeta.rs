//! The Riemann zeta function on the critical line and its nontrivial zeros.
//!
//! `zeta(s)` comes from Euler–Maclaurin summation; zeros are located as sign
//! changes of the Hardy function `Z(t) = exp(i theta(t)) zeta(1/2 + it)` and
//! refined by bisection. Zero counts are cross-checked against
//! `N(T) = theta(T)/pi + 1 + S(T)`, where `S(T) = arg zeta(1/2 + iT) / pi` is
//! tracked continuously along the horizontal line from `sigma = 3`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lowest height at which the theta asymptotic and the smooth count are used.
pub const HEIGHT_FLOOR: f64 = 10.0;
/// Absolute bisection tolerance for computed zeros.
pub const ZERO_TOLERANCE: f64 = 1e-9;
/// Largest accepted scan step.
pub const MAX_SCAN_STEP: f64 = 0.25;
/// Zeros closer than this after merging scan chunks are collapsed.
pub const DUPLICATE_GAP: f64 = 1e-7;
/// Decimal places in the zero-list file format.
pub const FILE_DECIMALS: usize = 9;

/// `B_2, B_4, ..., B_18`.
const BERNOULLI: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];
const MAX_BERNOULLI_TERMS: usize = BERNOULLI.len() - 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    /// Bound on truncation plus summation roundoff.
    pub error_bound: f64,
}

/// `zeta(sigma + it)` by Euler–Maclaurin with `n_terms` direct terms and
/// `bernoulli_terms` correction terms.
///
/// The truncation bound is the first omitted correction scaled by
/// `|s + 2m + 1| / (sigma + 2m + 1)`, which dominates the remainder for
/// `sigma > -(2m + 1)`.
pub fn zeta_em(sigma: f64, t: f64, n_terms: usize, bernoulli_terms: usize) -> Result<ZetaValue> {
    if sigma == 1.0 && t == 0.0 {
        return Err(Error::Pole);
    }
    if bernoulli_terms > MAX_BERNOULLI_TERMS {
        return Err(Error::InvalidConfig(format!(
            "at most {MAX_BERNOULLI_TERMS} Bernoulli terms are supported"
        )));
    }
    let min_terms = 10usize.max(t.abs().ceil() as usize);
    if n_terms < min_terms {
        return Err(Error::InvalidConfig(format!(
            "n_terms {n_terms} below the minimum {min_terms} for t = {t}"
        )));
    }
    let s = Complex64::new(sigma, t);
    let n_big = n_terms as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for n in 1..n_terms {
        let term = (-s * (n as f64).ln()).exp();
        abs_sum += term.norm();
        sum += term;
    }
    let ln_n = n_big.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    sum += n_pow * n_big / (s - 1.0);
    sum += n_pow * 0.5;

    // k-th correction: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut rising = s; // s(s+1)...(s+2k-2)
    let mut fact = 2.0; // (2k)!
    let mut npow = n_pow / n_big; // N^{-s-2k+1}
    let mut omitted = 0.0;
    for k in 1..=(bernoulli_terms + 1) {
        let term = rising * npow * (BERNOULLI[k - 1] / fact);
        if k <= bernoulli_terms {
            sum += term;
            abs_sum += term.norm();
        } else {
            let m2 = (2 * bernoulli_terms + 1) as f64;
            let factor = (s + m2).norm() / (sigma + m2);
            omitted = term.norm() * factor.max(1.0);
        }
        rising = rising * (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        npow /= n_big * n_big;
    }
    let roundoff = 4.0 * f64::EPSILON * (abs_sum + sum.norm() + (n_pow * n_big / (s - 1.0)).norm());
    Ok(ZetaValue { value: sum, error_bound: omitted + roundoff })
}

/// Default term count for height `t`: `3|t| + 20`.
pub fn default_terms(t: f64) -> usize {
    (3.0 * t.abs()).ceil() as usize + 20
}

/// Default Bernoulli term count.
pub const DEFAULT_BERNOULLI_TERMS: usize = 6;

pub fn zeta(sigma: f64, t: f64) -> Result<ZetaValue> {
    zeta_em(sigma, t, default_terms(t), DEFAULT_BERNOULLI_TERMS)
}

fn check_floor(t: f64) -> Result<()> {
    if t >= HEIGHT_FLOOR {
        Ok(())
    } else {
        Err(Error::Domain(format!("t = {t} is below the height floor {HEIGHT_FLOOR}")))
    }
}

/// Riemann–Siegel theta by its asymptotic series.
pub fn rs_theta(t: f64) -> Result<f64> {
    check_floor(t)?;
    Ok(t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3)))
}

/// Tolerance on `|Im(exp(i theta) zeta)|` in [`hardy_z`].
pub const HARDY_IMAG_TOLERANCE: f64 = 1e-6;

/// Hardy's `Z(t)`; fails if the rotated value is not real to within
/// [`HARDY_IMAG_TOLERANCE`].
pub fn hardy_z(t: f64) -> Result<f64> {
    let theta = rs_theta(t)?;
    let z = zeta(0.5, t)?.value;
    let rotated = Complex64::from_polar(1.0, theta) * z;
    if rotated.im.abs() > HARDY_IMAG_TOLERANCE {
        return Err(Error::Precision(format!(
            "Im Z({t}) = {:e}; increase n_terms",
            rotated.im
        )));
    }
    Ok(rotated.re)
}

/// Smooth Riemann–von Mangoldt count `(T/2pi) ln(T/(2pi e)) + 7/8`.
pub fn zero_count_rvm(t: f64) -> f64 {
    crate::spectral_stats::smooth_zero_count(t)
}

/// `S(T) = arg zeta(1/2 + iT) / pi` with the argument continued from
/// `sigma = 3` along the horizontal line.
pub fn arg_correction(t: f64) -> Result<f64> {
    check_floor(t)?;
    let n = default_terms(t);
    let eval = |sigma: f64| zeta_em(sigma, t, n, DEFAULT_BERNOULLI_TERMS).map(|v| v.value);
    let mut sigma = 3.0;
    let mut z = eval(sigma)?;
    let mut arg = z.arg();
    let mut step = 0.05;
    while sigma > 0.5 {
        let next = (sigma - step).max(0.5);
        let zn = eval(next)?;
        let delta = (zn / z).arg();
        if delta.abs() > PI / 8.0 && step > 1e-6 {
            step /= 2.0;
            continue;
        }
        arg += delta;
        sigma = next;
        z = zn;
        if delta.abs() < PI / 32.0 {
            step = (step * 1.5).min(0.05);
        }
    }
    Ok(arg / PI)
}

/// Number of zeros with `0 < gamma <= T`, from `theta(T)/pi + 1 + S(T)`.
pub fn exact_zero_count(t: f64) -> Result<i64> {
    let raw = rs_theta(t)? / PI + 1.0 + arg_correction(t)?;
    let rounded = raw.round();
    if (raw - rounded).abs() > 0.25 {
        return Err(Error::Precision(format!(
            "zero count at T = {t} is not near an integer ({raw}); T may be too close to a zero"
        )));
    }
    Ok(rounded as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    File,
}

/// Imaginary parts of nontrivial zeros `1/2 + i gamma`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    pub gammas: Vec<f64>,
    pub source: ZeroSource,
    /// Absolute error bound on each gamma.
    pub precision: f64,
}

impl ZeroList {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn truncated(&self, count: usize) -> Self {
        Self { gammas: self.gammas[..count.min(self.gammas.len())].to_vec(), ..self.clone() }
    }
}

fn bisect(mut a: f64, mut b: f64, mut za: f64) -> Result<f64> {
    while b - a > ZERO_TOLERANCE {
        let mid = 0.5 * (a + b);
        let zm = hardy_z(mid)?;
        if zm == 0.0 {
            return Ok(mid);
        }
        if zm.signum() == za.signum() {
            a = mid;
            za = zm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Sign-change scan of `Z` over `(a, b]` on a grid of `step`, each bracket
/// bisected to [`ZERO_TOLERANCE`]. No count validation.
pub fn scan_interval(a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    let steps = ((b - a) / step).ceil().max(1.0) as usize;
    let h = (b - a) / steps as f64;
    let mut out = Vec::new();
    let mut t0 = a;
    let mut z0 = hardy_z(t0)?;
    for k in 1..=steps {
        let t1 = if k == steps { b } else { a + k as f64 * h };
        let z1 = hardy_z(t1)?;
        if z1 == 0.0 {
            out.push(t1);
        } else if z0 != 0.0 && z0.signum() != z1.signum() {
            out.push(bisect(t0, t1, z0)?);
        }
        t0 = t1;
        z0 = z1;
    }
    Ok(out)
}

/// Merges per-chunk zero runs: sorted concatenation, collapsing zeros closer
/// than [`DUPLICATE_GAP`]. Returns the merged list and the number collapsed.
pub fn merge_zero_runs(runs: Vec<Vec<f64>>) -> (Vec<f64>, usize) {
    let mut all: Vec<f64> = runs.into_iter().flatten().collect();
    all.sort_by(f64::total_cmp);
    let before = all.len();
    all.dedup_by(|b, a| (*b - *a).abs() < DUPLICATE_GAP);
    let collapsed = before - all.len();
    (all, collapsed)
}

/// Nontrivial zeros with `t_min < gamma <= t_max`, count-validated.
pub fn find_zeros(t_min: f64, t_max: f64, scan_step: f64) -> Result<ZeroList> {
    check_floor(t_min)?;
    if !(t_max > t_min) {
        return Err(Error::InvalidConfig(format!("empty range ({t_min}, {t_max}]")));
    }
    if !(scan_step > 0.0 && scan_step <= MAX_SCAN_STEP) {
        return Err(Error::InvalidConfig(format!(
            "scan step {scan_step} outside (0, {MAX_SCAN_STEP}]"
        )));
    }
    // unit-length chunks are independent work units
    let mut runs = Vec::new();
    let mut a = t_min;
    while a < t_max {
        let b = (a + 1.0).min(t_max);
        runs.push(scan_interval(a, b, scan_step)?);
        a = b;
    }
    let (gammas, _) = merge_zero_runs(runs);
    let expected = exact_zero_count(t_max)? - exact_zero_count(t_min)?;
    if gammas.len() as i64 != expected {
        return Err(Error::MissedZero { t_min, t_max, found: gammas.len(), expected });
    }
    Ok(ZeroList { gammas, source: ZeroSource::Computed, precision: ZERO_TOLERANCE })
}

/// Default scan step used by [`first_zeros`] and the CLI.
pub const DEFAULT_SCAN_STEP: f64 = 0.05;

/// The first `count` zeros above the height floor.
pub fn first_zeros(count: usize) -> Result<ZeroList> {
    // invert the smooth count with a margin, then truncate
    let mut t_max = 20.0;
    while zero_count_rvm(t_max) < count as f64 + 2.0 {
        t_max += 5.0;
    }
    let mut list = find_zeros(HEIGHT_FLOOR, t_max, DEFAULT_SCAN_STEP)?;
    if list.len() < count {
        return Err(Error::Size(format!("only {} zeros below {t_max}", list.len())));
    }
    list.gammas.truncate(count);
    Ok(list)
}

/// Renders a zero list in the file format: header comments, then one zero per
/// line with nine decimals.
pub fn render_zero_list(z: &ZeroList, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    for g in &z.gammas {
        let _ = writeln!(out, "{g:.prec$}", prec = FILE_DECIMALS);
    }
    out
}

pub fn parse_zero_list(text: &str) -> Result<ZeroList> {
    let mut gammas: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let value: f64 = line.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("'{line}' is not a decimal number"),
        })?;
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Parse { line: lineno, message: format!("'{line}' is not a positive height") });
        }
        if let Some(&prev) = gammas.last() {
            if value <= prev {
                return Err(Error::Monotonicity { line: lineno, value, previous: prev });
            }
        }
        gammas.push(value);
    }
    Ok(ZeroList { gammas, source: ZeroSource::File, precision: 0.5 * 10f64.powi(-(FILE_DECIMALS as i32)) })
}

pub fn load_zeros_file(path: &Path) -> Result<ZeroList> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_zero_list(&text)
}

pub fn write_zeros_file(path: &Path, z: &ZeroList, header: &[String]) -> Result<()> {
    std::fs::write(path, render_zero_list(z, header))
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}
