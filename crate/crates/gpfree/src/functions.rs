//! Text forms of length and gap functions, e.g. `const:6`, `epslog:0.5`,
//! `table:1=6;1000=8`, `even(epslog:0.5)`, and loading of two-column tables.

use std::fs;
use std::path::Path;

use gpfree_core::{GapFunction, LengthFunction, StepTable};

use crate::error::{CliError, Result};

fn table_text(t: &StepTable) -> String {
    let rows: Vec<String> = t.rows().iter().map(|(n, v)| format!("{n}={v}")).collect();
    format!("table:{}", rows.join(";"))
}

pub fn length_to_string(k: &LengthFunction) -> String {
    match k {
        LengthFunction::Constant(v) => format!("const:{v}"),
        LengthFunction::EpsLog(e) => format!("epslog:{e}"),
        LengthFunction::Table(t) => table_text(t),
        LengthFunction::EvenRounded(inner) => format!("even({})", length_to_string(inner)),
    }
}

pub fn gap_to_string(h: &GapFunction) -> String {
    match h {
        GapFunction::Constant(v) => format!("const:{v}"),
        GapFunction::Power(a) => format!("power:{a}"),
        GapFunction::ExpLogRatio(c) => format!("explog:{c}"),
        GapFunction::Table(t) => table_text(t),
    }
}

fn bad(what: &str, s: &str) -> CliError {
    CliError::Usage(format!("cannot parse {what} `{s}`"))
}

fn parse_num(what: &str, s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| bad(what, s))
}

fn parse_inline_table(s: &str) -> Result<StepTable> {
    let rows = s
        .split(';')
        .map(|row| {
            let (n, v) = row.split_once('=').ok_or_else(|| bad("table row", row))?;
            let n = n.trim().parse::<u64>().map_err(|_| bad("table threshold", n))?;
            Ok((n, parse_num("table value", v)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StepTable::new(rows)?)
}

pub fn parse_length(s: &str) -> Result<LengthFunction> {
    if let Some(inner) = s.strip_prefix("even(").and_then(|r| r.strip_suffix(')')) {
        return Ok(parse_length(inner)?.normalize());
    }
    let (kind, arg) = s.split_once(':').ok_or_else(|| bad("length function", s))?;
    Ok(match kind {
        "const" => LengthFunction::constant(parse_num("constant", arg)?)?,
        "epslog" => LengthFunction::eps_log(parse_num("epsilon", arg)?)?,
        "table" => LengthFunction::table(parse_inline_table(arg)?)?,
        _ => return Err(bad("length function", s)),
    })
}

pub fn parse_gap(s: &str) -> Result<GapFunction> {
    let (kind, arg) = s.split_once(':').ok_or_else(|| bad("gap function", s))?;
    Ok(match kind {
        "const" => GapFunction::constant(parse_num("constant", arg)?)?,
        "power" => GapFunction::power(parse_num("exponent", arg)?)?,
        "explog" => GapFunction::exp_log_ratio(parse_num("constant", arg)?)?,
        "table" => GapFunction::table(parse_inline_table(arg)?)?,
        _ => return Err(bad("gap function", s)),
    })
}

/// Reads `threshold,value` rows (comma or whitespace separated, `#` comments).
/// Rows are validated nondecreasing by [`StepTable::new`].
pub fn load_table(path: &Path) -> Result<StepTable> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: &str| CliError::Parse { path: path.into(), line: i + 1, msg: msg.into() };
        let mut cols = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|c| !c.is_empty());
        let n = cols.next().and_then(|c| c.parse::<u64>().ok()).ok_or_else(|| parse_err("bad threshold"))?;
        let v = cols.next().and_then(|c| c.parse::<f64>().ok()).ok_or_else(|| parse_err("bad value"))?;
        if cols.next().is_some() {
            return Err(parse_err("expected two columns"));
        }
        rows.push((n, v));
    }
    Ok(StepTable::new(rows)?)
}
