//! Reading spectrum tables and zero lists, with format autodetection.

use std::collections::BTreeMap;
use std::path::Path;

use spectra_core::eigensolve::Spectrum;
use spectra_core::zeta::parse_zero_list;
use spectra_core::{EnsembleKind, ZeroList};

use crate::error::{CliError, Result};
use crate::table::LoadedTable;

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    /// Eigenvalue table from `sample`, one spectrum per sample index.
    Spectra { spectra: Vec<Spectrum<f64>>, kind: Option<EnsembleKind> },
    Zeros(ZeroList),
}

impl Input {
    pub fn describe(&self) -> String {
        match self {
            Input::Spectra { spectra, kind } => format!(
                "{} spectra ({})",
                spectra.len(),
                kind.map_or("untagged", EnsembleKind::name)
            ),
            Input::Zeros(z) => format!("{} zeros", z.len()),
        }
    }
}

/// A zero list has a bare number on its first data line; anything else is a
/// spectrum table (CSV or JSON).
pub fn looks_like_zero_list(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.parse::<f64>().is_ok())
}

pub fn read_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    if looks_like_zero_list(&text) {
        return parse_zero_list(&text).map(Input::Zeros).map_err(|e| match e {
            spectra_core::Error::Parse { line, message } => CliError::input(path, (line, message)),
            spectra_core::Error::Monotonicity { line, value, previous } => CliError::input(
                path,
                (line, format!("zero {value} does not exceed the previous zero {previous}")),
            ),
            other => other.into(),
        });
    }
    let table = LoadedTable::parse(&text).map_err(|e| CliError::input(path, e))?;
    spectra_from_table(&table).map_err(|e| CliError::input(path, e))
}

pub fn read_zeros(path: &Path) -> Result<ZeroList> {
    match read_input(path)? {
        Input::Zeros(z) => Ok(z),
        other => Err(CliError::input(path, (1, format!("expected a zero list, found {}", other.describe())))),
    }
}

fn spectra_from_table(t: &LoadedTable) -> std::result::Result<Input, (usize, String)> {
    let kind = match t.meta.get("ensemble") {
        Some(name) => Some(name.parse::<EnsembleKind>().map_err(|e| (1, e.to_string()))?),
        None => None,
    };
    let index = t.column_f64("sample_index")?;
    let position = t.column_f64("position")?;
    let value = t.column_f64("value")?;
    let mut groups: BTreeMap<u64, Vec<(u64, f64)>> = BTreeMap::new();
    for (row, ((&i, &p), &v)) in index.iter().zip(&position).zip(&value).enumerate() {
        let line = t.rows[row].0;
        if i < 0.0 || i.fract() != 0.0 || p < 0.0 || p.fract() != 0.0 {
            return Err((line, "sample_index and position must be non-negative integers".into()));
        }
        if !v.is_finite() {
            return Err((line, format!("eigenvalue {v} is not finite")));
        }
        groups.entry(i as u64).or_default().push((p as u64, v));
    }
    if groups.is_empty() {
        return Err((1, "spectrum table has no rows".into()));
    }
    let spectra = groups
        .into_iter()
        .map(|(i, mut rows)| {
            rows.sort_by_key(|&(p, _)| p);
            let values = rows.into_iter().map(|(_, v)| v).collect();
            Spectrum::new(values, kind, format!("sample {i}"))
        })
        .collect();
    Ok(Input::Spectra { spectra, kind })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_zero_lists() {
        assert!(looks_like_zero_list("# spectra-lab v1 zeros\n14.134725142\n"));
        assert!(looks_like_zero_list("\n14.1\n21.0\n"));
        assert!(!looks_like_zero_list("# spectra-lab v1 sample\nsample_index,position,value\n0,0,1.0\n"));
        assert!(!looks_like_zero_list("{\"columns\": []}"));
    }

    #[test]
    fn groups_samples_by_index() {
        let text = "# spectra-lab v1 sample\n# ensemble=GUE\nsample_index,position,value\n1,0,-1\n0,1,2\n0,0,-2\n1,1,1\n";
        let t = LoadedTable::parse(text).unwrap();
        let Input::Spectra { spectra, kind } = spectra_from_table(&t).unwrap() else { panic!() };
        assert_eq!(kind, Some(EnsembleKind::Gue));
        assert_eq!(spectra[0].values(), &[-2.0, 2.0]);
        assert_eq!(spectra[1].values(), &[-1.0, 1.0]);
    }

    #[test]
    fn missing_column_is_reported() {
        let t = LoadedTable::parse("sample_index,value\n0,1\n").unwrap();
        let (_, msg) = spectra_from_table(&t).unwrap_err();
        assert!(msg.contains("position"));
    }
}
