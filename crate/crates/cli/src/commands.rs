//! One driver per subcommand. Each returns the paths it wrote.

use std::path::{Path, PathBuf};

use serde_json::json;
use spectra_core::eigensolve::{ensemble_spectrum, sqrt_spectrum};
use spectra_core::orthopoly::{correlation_det, gauss_hermite, level_density, KernelEval};
use spectra_core::rng::CounterRng;
use spectra_core::spectral_stats::{
    compare_spacing_samples, decompose_fixed_variable, pooled_bulk_spacings, smooth_zero_count, spacing_bound_table,
    spacings, unfold_semicircle, unfold_zeta, wigner_cdf, Beta, UnfoldMethod, UnfoldedSeries, BULK_FRACTION,
};
use spectra_core::zeromap::biwave_check;
use spectra_core::zeta::{exact_zero_count, find_zeros, write_zeros_file, FILE_DECIMALS};
use spectra_core::{EnsembleConfig, EnsembleKind, Error};

use crate::args::UnfoldArg;
use crate::config::{ExperimentConfig, Global, Grid};
use crate::error::{CliError, Result};
use crate::ingest::{read_input, read_zeros, Input};
use crate::table::{format_float, write_json, Cell, Table, SCHEMA};

/// Tolerance on the kernel quadrature trace check.
pub const TRACE_TOLERANCE: f64 = 1e-8;

const TUPLE_STREAM: u64 = 0x4b45_524e;

pub fn run(cfg: &ExperimentConfig, g: &Global) -> Result<Vec<PathBuf>> {
    match cfg {
        ExperimentConfig::Sample { ensemble } => sample(ensemble, g),
        ExperimentConfig::Spacings { input, k, unfold, sample_index } => {
            spacing_report(input, *k, *unfold, *sample_index, g)
        }
        ExperimentConfig::Zeros { t_min, t_max, step } => zeta_zeros(*t_min, *t_max, *step, g),
        ExperimentConfig::Compare { a, b, bins, hist_max } => compare(a, b, *bins, *hist_max, g),
        ExperimentConfig::Zeromap { n_max, zeros } => zeromap(*n_max, zeros, g),
        ExperimentConfig::Kernel { r, grid, m, tuples } => kernel(*r, grid, *m, *tuples, g),
    }
}

/// `out` with `suffix` appended to the full file name.
pub fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn file_label(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn sample(cfg: &EnsembleConfig, g: &Global) -> Result<Vec<PathBuf>> {
    let bilinear = cfg.kind == EnsembleKind::Bilinear;
    let columns: &[&str] = if bilinear {
        &["sample_index", "position", "value", "sqrt_value"]
    } else {
        &["sample_index", "position", "value"]
    };
    let mut t = Table::new("sample", columns);
    t.meta("seed", g.seed)
        .meta("ensemble", cfg.kind.name())
        .meta("r", cfg.order)
        .meta("samples", cfg.samples)
        .meta("scalar", "f64");
    for i in 0..cfg.samples {
        let s = ensemble_spectrum::<f64>(cfg, i)?;
        let roots = if bilinear { Some(sqrt_spectrum(&s)?) } else { None };
        for (p, &v) in s.values().iter().enumerate() {
            let mut row: Vec<Cell> = vec![i.into(), p.into(), v.into()];
            if let Some(q) = &roots {
                row.push(q.values()[p].into());
            }
            t.push(row);
        }
    }
    t.write(&g.out, g.format)?;
    Ok(vec![g.out.clone()])
}

fn spacing_report(
    input: &Path,
    k: usize,
    unfold: Option<UnfoldArg>,
    sample_index: usize,
    g: &Global,
) -> Result<Vec<PathBuf>> {
    let source = read_input(input)?;
    let (raw, unfolded) = match &source {
        Input::Spectra { spectra, kind } => {
            let s = spectra.get(sample_index).ok_or_else(|| {
                CliError::Config(format!("--sample-index {sample_index} but the table holds {} spectra", spectra.len()))
            })?;
            let auto = match kind {
                Some(EnsembleKind::Goe | EnsembleKind::Gue) => UnfoldArg::Semicircle,
                _ => UnfoldArg::None,
            };
            let unfolded = match unfold.unwrap_or(auto) {
                UnfoldArg::Semicircle => unfold_semicircle(s)?,
                UnfoldArg::None => UnfoldedSeries::raw(s.values().to_vec()),
                UnfoldArg::Zeta => {
                    return Err(Error::Domain("zeta unfolding applies to zero lists, not spectra".into()).into())
                }
            };
            (s.values().to_vec(), unfolded)
        }
        Input::Zeros(z) => {
            let unfolded = match unfold.unwrap_or(UnfoldArg::Zeta) {
                UnfoldArg::Zeta => unfold_zeta(z)?,
                UnfoldArg::None => UnfoldedSeries::raw(z.gammas.clone()),
                UnfoldArg::Semicircle => {
                    return Err(Error::Domain("semicircle unfolding applies to spectra, not zero lists".into()).into())
                }
            };
            (z.gammas.clone(), unfolded)
        }
    };
    let label = file_label(input);
    let series = spacings(&raw, k, &label)?;
    let (fixed, variable) = decompose_fixed_variable(&series)?;
    let unfolded_deltas = spacings(&unfolded.values, k, &label)?.deltas;

    let mut t = Table::new("spacings", &["j", "delta_k", "fixed_part", "variable_part", "unfolded_delta_k"]);
    t.meta("seed", g.seed)
        .meta("input", &label)
        .meta("source", source.describe())
        .meta("k", k)
        .meta("unfold", unfolded.method.name())
        .meta("sample_index", sample_index);
    for (j, ((&d, &v), &u)) in series.deltas.iter().zip(&variable.deltas).zip(&unfolded_deltas).enumerate() {
        t.push(vec![(j + 1).into(), d.into(), fixed.into(), v.into(), u.into()]);
    }
    t.write(&g.out, g.format)?;
    Ok(vec![g.out.clone()])
}

fn zeta_zeros(t_min: f64, t_max: f64, step: f64, g: &Global) -> Result<Vec<PathBuf>> {
    let zeros = find_zeros(t_min, t_max, step)?;
    let header = vec![
        format!("{SCHEMA} zeros"),
        format!("seed={}", g.seed),
        format!("t_min={}", format_float(t_min)),
        format!("t_max={}", format_float(t_max)),
        format!("step={}", format_float(step)),
        format!("count={}", zeros.len()),
        format!("decimals={FILE_DECIMALS}"),
    ];
    write_zeros_file(&g.out, &zeros, &header)?;

    let smooth = smooth_zero_count(t_max) - smooth_zero_count(t_min);
    let exact = exact_zero_count(t_max)? - exact_zero_count(t_min)?;
    let report = json!({
        "schema": format!("{SCHEMA} zeros"),
        "seed": g.seed,
        "t_min": t_min,
        "t_max": t_max,
        "step": step,
        "count": zeros.len(),
        "smooth_count": smooth,
        "difference": zeros.len() as f64 - smooth,
        "exact_count": exact,
        "count_matches_exact": exact == zeros.len() as i64,
        "decimals": FILE_DECIMALS,
    });
    let side = sidecar(&g.out, ".json");
    write_json(&side, &report)?;
    Ok(vec![g.out.clone(), side])
}

/// Unfolded spacings of one input: pooled bulk spacings for spectra, all
/// consecutive spacings for zero lists.
fn input_spacings(path: &Path) -> Result<(Vec<f64>, UnfoldMethod)> {
    match read_input(path)? {
        Input::Spectra { spectra, .. } => Ok((pooled_bulk_spacings(&spectra, BULK_FRACTION)?, UnfoldMethod::Semicircle)),
        Input::Zeros(z) => Ok((unfold_zeta(&z)?.spacings(), UnfoldMethod::ZetaSmoothCount)),
    }
}

/// Bin masses on `[0, hi]`; mass beyond `hi` is folded into the last bin.
fn bin_masses(values: &[f64], bins: usize, hi: f64) -> Vec<f64> {
    let mut counts = vec![0usize; bins];
    let h = hi / bins as f64;
    for &s in values {
        let i = ((s.max(0.0) / h).floor() as usize).min(bins - 1);
        counts[i] += 1;
    }
    counts.iter().map(|&c| c as f64 / values.len() as f64).collect()
}

fn compare(a: &[PathBuf], b: &Path, bins: usize, hist_max: f64, g: &Global) -> Result<Vec<PathBuf>> {
    let mut sa = Vec::new();
    let mut methods_a = Vec::new();
    for path in a {
        let (s, m) = input_spacings(path)?;
        sa.extend(s);
        if !methods_a.contains(&m.name()) {
            methods_a.push(m.name());
        }
    }
    let (sb, method_b) = input_spacings(b)?;
    let cmp = compare_spacing_samples(&sa, &sb)?;

    let report = json!({
        "schema": format!("{SCHEMA} compare"),
        "seed": g.seed,
        "ks": cmp.ks,
        "mean_abs_gap": cmp.mean_abs_gap,
        "n_a": cmp.n_a,
        "n_b": cmp.n_b,
        "unfold_methods": { "a": methods_a, "b": method_b.name() },
        "bulk_fraction": BULK_FRACTION,
        "inputs": {
            "a": a.iter().map(|p| file_label(p)).collect::<Vec<_>>(),
            "b": file_label(b),
        },
    });
    write_json(&g.out, &report)?;

    let mut columns = vec!["series".to_string(), "n".to_string()];
    columns.extend((0..bins).map(|i| format!("bin_{i}")));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = Table::new("compare", &column_refs);
    let h = hist_max / bins as f64;
    t.meta("seed", g.seed)
        .meta("bins", bins)
        .meta("bin_width", format_float(h))
        .meta("range", format!("0:{}", format_float(hist_max)))
        .meta("overflow", "last_bin");
    for (name, s) in [("a", &sa), ("b", &sb)] {
        let mut row: Vec<Cell> = vec![name.into(), s.len().into()];
        row.extend(bin_masses(s, bins, hist_max).into_iter().map(Cell::from));
        t.push(row);
    }
    let mut reference: Vec<Cell> = vec!["wigner_unitary".into(), 0usize.into()];
    reference.extend((0..bins).map(|i| {
        let upper = if i + 1 == bins { 1.0 } else { wigner_cdf((i + 1) as f64 * h, Beta::Unitary) };
        Cell::from(upper - wigner_cdf(i as f64 * h, Beta::Unitary))
    }));
    t.push(reference);
    let hist = sidecar(&g.out, &format!(".hist.{}", g.format.extension()));
    t.write(&hist, g.format)?;
    Ok(vec![g.out.clone(), hist])
}

fn zeromap(n_max: u64, zeros_path: &Path, g: &Global) -> Result<Vec<PathBuf>> {
    let zeros = read_zeros(zeros_path)?;
    let count = (n_max as usize).min(zeros.len());
    let used = zeros.truncated(count);
    let ns: Vec<u64> = (1..=count as u64).collect();
    let rows = biwave_check(&used.gammas, &ns)?;

    let mut t = Table::new(
        "zeromap",
        &["n", "gamma", "E", "re_lambda", "im_lambda", "trace_residual", "det_residual", "critical_line_ok"],
    );
    t.meta("seed", g.seed).meta("zeros", file_label(zeros_path)).meta("n_max", n_max).meta("rows", count);
    for row in &rows {
        t.push(vec![
            row.n.into(),
            row.gamma.into(),
            row.energy.into(),
            row.lambda.plus.re.into(),
            row.lambda.plus.im.into(),
            row.trace_residual.into(),
            row.det_residual.into(),
            row.critical_line_ok.into(),
        ]);
    }
    t.write(&g.out, g.format)?;

    let mut b = Table::new("zeromap-bound", &["j", "lhs", "rhs", "satisfied"]);
    b.meta("seed", g.seed).meta("zeros", file_label(zeros_path)).meta("relation", "gamma_{j+1}-gamma_j > gamma_{j+1}/(j+1)");
    if count >= 2 {
        let report = spacing_bound_table(&used)?;
        b.meta("satisfied_fraction", format_float(report.satisfied_fraction));
        for r in report.rows {
            b.push(vec![r.j.into(), r.lhs.into(), r.rhs.into(), r.satisfied.into()]);
        }
    }
    let bound = sidecar(&g.out, &format!(".bound.{}", g.format.extension()));
    b.write(&bound, g.format)?;
    Ok(vec![g.out.clone(), bound])
}

fn kernel(r: usize, grid: &Grid, m: usize, tuples: usize, g: &Global) -> Result<Vec<PathBuf>> {
    let k = KernelEval::<f64>::gue(r)?;
    let rate = k.rate();
    // K(x,x) exp(r x^2) is a polynomial of degree 2r - 2, exact for r nodes
    let nodes = r + 8;
    let rule = gauss_hermite(rate, nodes)?;
    let trace = rule.integrate(|x| level_density(&k, x) * (rate * x * x).exp());
    let error = (trace - r as f64).abs();

    let mut t = Table::new("kernel", &["x", "density", "r1"]);
    t.meta("seed", g.seed)
        .meta("r", r)
        .meta("rate", format_float(rate))
        .meta("grid", format!("{}:{}:{}", format_float(grid.lo), format_float(grid.hi), grid.count))
        .meta("m", m)
        .meta("quadrature_nodes", nodes)
        .meta("quadrature_trace", format_float(trace))
        .meta("quadrature_error", format_float(error))
        .meta("quadrature_ok", error <= TRACE_TOLERANCE);
    for x in grid.points() {
        let density = level_density(&k, x);
        let r1 = correlation_det(&k, &[x], 1)?;
        t.push(vec![x.into(), density.into(), r1.into()]);
    }
    t.write(&g.out, g.format)?;

    let mut columns = vec!["tuple".to_string()];
    columns.extend((1..=m).map(|i| format!("x{i}")));
    columns.push("r_m".to_string());
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut rm = Table::new("kernel-rm", &column_refs);
    rm.meta("seed", g.seed).meta("r", r).meta("m", m).meta("tuples", tuples);
    let rng = CounterRng::new(g.seed, TUPLE_STREAM);
    for i in 0..tuples {
        let pts: Vec<f64> =
            (0..m).map(|c| grid.lo + (grid.hi - grid.lo) * rng.uniform(i as u64, c as u64, 0)).collect();
        let value = correlation_det(&k, &pts, m)?;
        let mut row: Vec<Cell> = vec![i.into()];
        row.extend(pts.into_iter().map(Cell::from));
        row.push(value.into());
        rm.push(row);
    }
    let rm_path = sidecar(&g.out, &format!(".rm.{}", g.format.extension()));
    rm.write(&rm_path, g.format)?;
    Ok(vec![g.out.clone(), rm_path])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masses_fold_overflow() {
        let m = bin_masses(&[0.1, 0.6, 3.0, 9.0], 2, 1.0);
        assert_eq!(m, vec![0.25, 0.75]);
    }

    #[test]
    fn sidecar_appends() {
        assert_eq!(sidecar(Path::new("/tmp/z.txt"), ".json"), PathBuf::from("/tmp/z.txt.json"));
    }
}
