//! Spacing statistics shared by matrix spectra and zeta zeros.
//!
//! Everything here works in `f64`: spectra of other scalar types are
//! converted on entry.

use std::f64::consts::PI;

use crate::eigensolve::Spectrum;
use crate::ensembles::EnsembleKind;
use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::scalar::Real;
use crate::zeta::ZeroList;

/// Fraction of each spectrum kept (centred) before spacing comparisons.
pub const BULK_FRACTION: f64 = 0.6;

#[derive(Debug, Clone, PartialEq)]
pub struct SpacingSeries {
    pub k: usize,
    pub deltas: Vec<f64>,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnfoldMethod {
    Semicircle,
    ZetaSmoothCount,
    None,
}

impl UnfoldMethod {
    pub fn name(self) -> &'static str {
        match self {
            UnfoldMethod::Semicircle => "semicircle",
            UnfoldMethod::ZetaSmoothCount => "zeta-smooth-count",
            UnfoldMethod::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedSeries {
    pub values: Vec<f64>,
    pub method: UnfoldMethod,
}

impl UnfoldedSeries {
    /// Wraps values that are already at unit mean density.
    pub fn raw(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values, method: UnfoldMethod::None }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean_spacing(&self) -> f64 {
        let n = self.values.len();
        if n < 2 {
            return f64::NAN;
        }
        (self.values[n - 1] - self.values[0]) / (n - 1) as f64
    }

    /// Consecutive differences.
    pub fn spacings(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Keeps the centred `fraction` of the points.
    pub fn bulk(&self, fraction: f64) -> Self {
        let (lo, hi) = bulk_range(self.values.len(), fraction);
        Self { values: self.values[lo..hi].to_vec(), method: self.method }
    }
}

fn bulk_range(n: usize, fraction: f64) -> (usize, usize) {
    let drop = ((1.0 - fraction.clamp(0.0, 1.0)) / 2.0 * n as f64).floor() as usize;
    (drop, n - drop)
}

/// `values[j + k] - values[j]`.
pub fn spacings(values: &[f64], k: usize, source: &str) -> Result<SpacingSeries> {
    if k == 0 || k >= values.len() {
        return Err(Error::Size(format!(
            "spacing order {k} needs 1 <= k < {} values",
            values.len()
        )));
    }
    let deltas = values.iter().zip(&values[k..]).map(|(a, b)| b - a).collect();
    Ok(SpacingSeries { k, deltas, source: source.to_string() })
}

/// Splits a spacing series into its minimum (fixed part) and the excess over
/// it (variable part). `fixed + variable[j]` reproduces `deltas[j]` bitwise
/// whenever some `f64` allows it, and otherwise to within one ulp (a sum can
/// land on a rounding tie that resolves away from `deltas[j]`).
pub fn decompose_fixed_variable(s: &SpacingSeries) -> Result<(f64, SpacingSeries)> {
    let fixed = s
        .deltas
        .iter()
        .copied()
        .reduce(f64::min)
        .ok_or_else(|| Error::Size("cannot decompose an empty spacing series".into()))?;
    let variable = s.deltas.iter().map(|&d| exact_remainder(d, fixed)).collect();
    Ok((fixed, SpacingSeries { k: s.k, deltas: variable, source: format!("{} (variable)", s.source) }))
}

/// `v` with `base + v == total` in floating point. Plain subtraction can be
/// off by one ulp, so the difference is nudged until the sum reproduces.
fn exact_remainder(total: f64, base: f64) -> f64 {
    let mut v = total - base;
    for _ in 0..8 {
        let sum = base + v;
        if sum == total {
            break;
        }
        v = if sum < total { v.next_up() } else { v.next_down() };
    }
    v.max(0.0)
}

/// CDF of the semicircle density `2 sqrt(R^2 - x^2) / (pi R^2)`, clamped
/// outside the support.
pub fn semicircle_cdf(x: f64, radius: f64) -> f64 {
    let u = (x / radius).clamp(-1.0, 1.0);
    0.5 + (u * (1.0 - u * u).sqrt() + u.asin()) / PI
}

pub fn semicircle_density(x: f64, radius: f64) -> f64 {
    let r2 = radius * radius;
    2.0 * (r2 - x * x).max(0.0).sqrt() / (PI * r2)
}

/// Maps each eigenvalue to `r * F(x)` with `F` the semicircle CDF of the
/// spectrum's ensemble (GUE: radius sqrt 2, GOE: radius 1; untagged spectra
/// use the GUE radius).
pub fn unfold_semicircle<T: Real>(s: &Spectrum<T>) -> Result<UnfoldedSeries> {
    let radius = match s.ensemble {
        None => std::f64::consts::SQRT_2,
        Some(kind) => kind.semicircle_radius().ok_or_else(|| {
            Error::Domain(format!("{kind} spectra have no semicircle law to unfold against"))
        })?,
    };
    Ok(unfold_semicircle_radius(&s.to_f64(), radius))
}

pub fn unfold_semicircle_radius(values: &[f64], radius: f64) -> UnfoldedSeries {
    let r = values.len() as f64;
    UnfoldedSeries {
        values: values.iter().map(|&x| r * semicircle_cdf(x, radius)).collect(),
        method: UnfoldMethod::Semicircle,
    }
}

/// Smooth zero count `(t/2pi) ln(t/(2pi e)) + 7/8`.
pub fn smooth_zero_count(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * (x / std::f64::consts::E).ln() + 0.875
}

/// Unfolds zeros by the smooth count; every zero must be at least 10.
pub fn unfold_zeta(z: &ZeroList) -> Result<UnfoldedSeries> {
    let bad: Vec<usize> = z
        .gammas
        .iter()
        .enumerate()
        .filter(|(_, &g)| !(g >= crate::zeta::HEIGHT_FLOOR))
        .map(|(j, _)| j)
        .collect();
    if !bad.is_empty() {
        return Err(Error::Domain(format!(
            "zeros below height {} at indices {bad:?}",
            crate::zeta::HEIGHT_FLOOR
        )));
    }
    Ok(UnfoldedSeries {
        values: z.gammas.iter().map(|&g| smooth_zero_count(g)).collect(),
        method: UnfoldMethod::ZetaSmoothCount,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Beta {
    Orthogonal,
    Unitary,
}

/// Wigner surmise density, normalized to unit mass and unit mean.
pub fn wigner_surmise(s: f64, beta: Beta) -> f64 {
    if s < 0.0 {
        return 0.0;
    }
    match beta {
        Beta::Orthogonal => PI / 2.0 * s * (-PI * s * s / 4.0).exp(),
        Beta::Unitary => 32.0 / (PI * PI) * s * s * (-4.0 * s * s / PI).exp(),
    }
}

pub fn wigner_cdf(s: f64, beta: Beta) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    match beta {
        Beta::Orthogonal => 1.0 - (-PI * s * s / 4.0).exp(),
        Beta::Unitary => {
            libm::erf(2.0 * s / PI.sqrt()) - 4.0 * s / PI * (-4.0 * s * s / PI).exp()
        }
    }
}

/// Montgomery's pair-correlation density `1 - (sin(pi u)/(pi u))^2`.
pub fn montgomery_reference(u: f64) -> f64 {
    let x = PI * u;
    if x.abs() < 1e-4 {
        // 1 - sinc^2 = x^2/3 - 2x^4/45 + ...
        let x2 = x * x;
        return x2 / 3.0 - 2.0 * x2 * x2 / 45.0;
    }
    let sinc = x.sin() / x;
    1.0 - sinc * sinc
}

/// Reference spacing laws for KS tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingReference {
    WignerOrthogonal,
    WignerUnitary,
    Exponential,
}

impl SpacingReference {
    pub fn cdf(self, s: f64) -> f64 {
        match self {
            SpacingReference::WignerOrthogonal => wigner_cdf(s, Beta::Orthogonal),
            SpacingReference::WignerUnitary => wigner_cdf(s, Beta::Unitary),
            SpacingReference::Exponential => {
                if s <= 0.0 {
                    0.0
                } else {
                    1.0 - (-s).exp()
                }
            }
        }
    }
}

impl std::str::FromStr for SpacingReference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wigner-b1" | "wigner-beta1" | "goe" => Ok(SpacingReference::WignerOrthogonal),
            "wigner-b2" | "wigner-beta2" | "gue" => Ok(SpacingReference::WignerUnitary),
            "exponential" | "poisson" => Ok(SpacingReference::Exponential),
            other => Err(Error::InvalidConfig(format!("unknown reference distribution '{other}'"))),
        }
    }
}

fn sorted(sample: &[f64]) -> Vec<f64> {
    let mut v = sample.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Kolmogorov–Smirnov distance between the empirical CDF and a reference.
pub fn ks_distance(sample: &[f64], reference: SpacingReference) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::Size("KS distance of an empty sample".into()));
    }
    let xs = sorted(sample);
    let n = xs.len() as f64;
    let d = xs.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = reference.cdf(x);
        d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
    });
    Ok(d)
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Size("KS distance of an empty sample".into()));
    }
    let (xa, xb) = (sorted(a), sorted(b));
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Pair-correlation estimate: for each centre `c`, the number of ordered
/// pairs `i != j` with `w_j - w_i` in `[c - bw/2, c + bw/2)`, divided by
/// `N * bw`.
pub fn pair_correlation_estimator(u: &UnfoldedSeries, grid: &[f64], bin_width: f64) -> Result<Vec<f64>> {
    const MIN_POINTS: usize = 50;
    if u.values.len() < MIN_POINTS {
        return Err(Error::Size(format!(
            "pair correlation needs at least {MIN_POINTS} values, got {}",
            u.values.len()
        )));
    }
    if !(bin_width > 0.0) {
        return Err(Error::Domain(format!("bin width must be positive, got {bin_width}")));
    }
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    let w = sorted(&u.values);
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min) - bin_width / 2.0;
    let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max) + bin_width / 2.0;
    let mut diffs = Vec::new();
    for i in 0..w.len() {
        for j in 0..w.len() {
            if i == j {
                continue;
            }
            let d = w[j] - w[i];
            if d >= lo && d < hi {
                diffs.push(d);
            }
        }
    }
    diffs.sort_by(f64::total_cmp);
    let norm = w.len() as f64 * bin_width;
    Ok(grid
        .iter()
        .map(|&c| {
            let a = diffs.partition_point(|&d| d < c - bin_width / 2.0);
            let b = diffs.partition_point(|&d| d < c + bin_width / 2.0);
            (b - a) as f64 / norm
        })
        .collect())
}

/// Bin centres `bw/2, 3bw/2, ...` covering `(0, upper]`.
pub fn positive_grid(upper: f64, bin_width: f64) -> Vec<f64> {
    let bins = (upper / bin_width).round() as usize;
    (0..bins).map(|k| (k as f64 + 0.5) * bin_width).collect()
}

/// `sum |estimate(c) - reference(c)| * bw` over the grid.
pub fn binned_l1(grid: &[f64], estimate: &[f64], bin_width: f64, reference: impl Fn(f64) -> f64) -> f64 {
    grid.iter().zip(estimate).map(|(&c, &e)| (e - reference(c)).abs() * bin_width).sum()
}

/// Histogram counts over `bins` equal bins on `[lo, hi)`; out-of-range
/// values are ignored. Returns `(counts, in_range)`.
pub fn histogram(values: &[f64], lo: f64, hi: f64, bins: usize) -> (Vec<usize>, usize) {
    let mut counts = vec![0usize; bins];
    let width = (hi - lo) / bins as f64;
    let mut inside = 0;
    for &v in values {
        if v >= lo && v < hi {
            let k = (((v - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
            inside += 1;
        }
    }
    (counts, inside)
}

/// L1 distance between the binned empirical measure (normalised by the total
/// number of values) and the semicircle's exact bin masses.
pub fn semicircle_l1(values: &[f64], radius: f64, bins: usize) -> f64 {
    let (counts, _) = histogram(values, -radius, radius, bins);
    let total = values.len() as f64;
    let width = 2.0 * radius / bins as f64;
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let a = -radius + k as f64 * width;
            let mass = semicircle_cdf(a + width, radius) - semicircle_cdf(a, radius);
            (c as f64 / total - mass).abs()
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    /// 1-based index of the lower zero.
    pub j: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    pub satisfied_fraction: f64,
}

/// Tabulates `gamma_{j+1} - gamma_j` against `gamma_{j+1} / (j + 1)`.
/// Reports the verdict per row; asserts nothing.
pub fn spacing_bound_table(z: &ZeroList) -> Result<BoundReport> {
    if z.gammas.len() < 2 {
        return Err(Error::Size("bound table needs at least two zeros".into()));
    }
    let rows: Vec<BoundRow> = z
        .gammas
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let j = i + 1;
            let lhs = w[1] - w[0];
            let rhs = w[1] / (j + 1) as f64;
            BoundRow { j, lhs, rhs, satisfied: lhs > rhs }
        })
        .collect();
    let ok = rows.iter().filter(|r| r.satisfied).count();
    let satisfied_fraction = ok as f64 / rows.len() as f64;
    Ok(BoundReport { rows, satisfied_fraction })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingComparison {
    pub ks: f64,
    pub mean_abs_gap: f64,
    pub n_a: usize,
    pub n_b: usize,
}

/// Linear-interpolated quantile of sorted data at probability `p`.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    if i + 1 >= sorted.len() {
        sorted[sorted.len() - 1]
    } else {
        sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
    }
}

/// Compares the consecutive-spacing distributions of two unfolded series.
/// `mean_abs_gap` is the mean absolute difference of matched quantiles at
/// the shorter series' length.
pub fn compare_spacing_distributions(a: &UnfoldedSeries, b: &UnfoldedSeries) -> Result<SpacingComparison> {
    let sa = a.spacings();
    let sb = b.spacings();
    compare_spacing_samples(&sa, &sb)
}

/// As [`compare_spacing_distributions`], on spacing samples directly (for
/// pooled Monte Carlo spacings). Each sample needs at least 49 spacings.
pub fn compare_spacing_samples(sa: &[f64], sb: &[f64]) -> Result<SpacingComparison> {
    const MIN_SPACINGS: usize = 49;
    if sa.len() < MIN_SPACINGS || sb.len() < MIN_SPACINGS {
        return Err(Error::Size(format!(
            "comparison needs at least 50 values per side, got {} and {}",
            sa.len() + 1,
            sb.len() + 1
        )));
    }
    let ks = ks_two_sample(sa, sb)?;
    let (xa, xb) = (sorted(sa), sorted(sb));
    let m = xa.len().min(xb.len());
    let gap = (0..m)
        .map(|i| {
            let p = if m == 1 { 0.5 } else { i as f64 / (m - 1) as f64 };
            (quantile(&xa, p) - quantile(&xb, p)).abs()
        })
        .sum::<f64>()
        / m as f64;
    Ok(SpacingComparison { ks, mean_abs_gap: gap, n_a: sa.len(), n_b: sb.len() })
}

/// `n` i.i.d. uniform points on `[0, n]` (unit mean density), sorted.
pub fn poisson_surrogate(n: usize, seed: u64) -> UnfoldedSeries {
    let rng = CounterRng::new(seed, 0x9015);
    let values = (0..n).map(|k| n as f64 * rng.uniform(k as u64, 0, 0)).collect();
    UnfoldedSeries::raw(values)
}

/// Unfolded, bulk-trimmed spacings pooled over several spectra.
pub fn pooled_bulk_spacings<T: Real>(spectra: &[Spectrum<T>], fraction: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for s in spectra {
        if s.ensemble == Some(EnsembleKind::Bilinear) {
            return Err(Error::Domain("bilinear spectra cannot be semicircle-unfolded".into()));
        }
        out.extend(unfold_semicircle(s)?.bulk(fraction).spacings());
    }
    Ok(out)
}
