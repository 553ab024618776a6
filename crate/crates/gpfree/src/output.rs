//! Rendering of results as JSON (`{"results": [...]}`) or CSV, and atomic
//! file output.

use std::fs;
use std::io::Write;
use std::path::Path;

use gpfree_core::analysis::{LemmaCheckResult, Witness};
use gpfree_core::baselines::KFreeWitness;
use gpfree_core::{ExclusionRecord, GeomProgression};
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// JSON view of a progression, including its terms.
#[derive(Debug, Clone, Serialize)]
pub struct ProgressionJson {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub len: u32,
    pub terms: Vec<u64>,
}

impl From<&GeomProgression> for ProgressionJson {
    fn from(p: &GeomProgression) -> Self {
        Self { a: p.a(), b: p.b(), c: p.c(), len: p.len(), terms: p.terms().expect("bounded terms") }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    results: &'a [T],
}

pub fn json_results<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { results: rows })?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

/// Shortest decimal that round-trips; integral values print without a fraction.
pub fn num(v: f64) -> String {
    if v.is_finite() && v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn claim_name(r: &LemmaCheckResult) -> String {
    serde_json::to_value(r.claim).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

/// One row per result: `claim, params..., lhs, rhs, holds`, with the
/// parameter columns taken as the union of names in order of appearance.
pub fn csv_check_results(results: &[LemmaCheckResult]) -> Result<String> {
    let mut names: Vec<String> = Vec::new();
    for r in results {
        for p in &r.params {
            if !names.contains(&p.name) {
                names.push(p.name.clone());
            }
        }
    }
    let mut header = vec!["claim".to_string()];
    header.extend(names.iter().cloned());
    header.extend(["lhs", "rhs", "holds"].map(String::from));
    let rows = results.iter().map(|r| {
        let mut row = vec![claim_name(r)];
        for n in &names {
            row.push(r.get_param(n).map(num).unwrap_or_default());
        }
        row.push(num(r.lhs));
        row.push(num(r.rhs));
        row.push(r.holds.to_string());
        row
    });
    csv_text(&header, rows)
}

pub fn csv_progressions(ps: &[GeomProgression]) -> Result<String> {
    let header = ["a", "b", "c", "len", "min", "max"].map(String::from);
    let rows = ps.iter().map(|p| {
        vec![
            p.a().to_string(),
            p.b().to_string(),
            p.c().to_string(),
            p.len().to_string(),
            p.min_term().expect("bounded").to_string(),
            p.max_term().expect("bounded").to_string(),
        ]
    });
    csv_text(&header, rows)
}

pub fn csv_exclusions(recs: &[ExclusionRecord]) -> Result<String> {
    let header = ["a", "b", "c", "len", "lower", "upper", "chosen"].map(String::from);
    let rows = recs.iter().map(|r| {
        let p = &r.progression;
        [p.a(), p.b(), p.c(), u64::from(p.len()), r.lower, r.upper, r.chosen]
            .iter()
            .map(u64::to_string)
            .collect()
    });
    csv_text(&header, rows)
}

pub fn csv_witnesses(ws: &[KFreeWitness]) -> Result<String> {
    let header = ["m", "p", "exponent"].map(String::from);
    let rows = ws.iter().map(|w| vec![w.m.to_string(), w.p.to_string(), w.exponent.to_string()]);
    csv_text(&header, rows)
}

/// Generic CSV from named columns.
pub fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    csv_text(&header, rows)
}

pub fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Progression(p) => {
            let terms = p.terms().map(|t| format!("{t:?}")).unwrap_or_default();
            format!("progression a={} b={} c={} len={} terms={terms}", p.a(), p.b(), p.c(), p.len())
        }
        Witness::Integer(n) => format!("n={n}"),
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(CliError::io(dir))?;
    tmp.write_all(contents.as_bytes()).map_err(CliError::io(path))?;
    tmp.persist(path).map_err(|e| CliError::Io { path: path.into(), source: e.error })?;
    Ok(())
}
