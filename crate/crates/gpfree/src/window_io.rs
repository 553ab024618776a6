//! Native window files and plain integer lists.
//!
//! The native form is line oriented:
//!
//! ```text
//! gpfree-window 1
//! N 64
//! k const:6
//! seed 7
//! runs 2
//! 8 1
//! 16 1
//! ```
//!
//! `k` and `seed` are `-` when the window did not come from the process.
//! Each run line is `start length` for a maximal block of excluded integers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use gpfree_core::SequenceWindow;

use crate::error::{CliError, Result};

pub const MAGIC: &str = "gpfree-window 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowHeader {
    pub k_spec: Option<String>,
    pub seed: Option<u64>,
}

pub fn encode_window(w: &SequenceWindow, header: &WindowHeader) -> String {
    let runs = w.excluded_runs();
    let mut s = String::new();
    writeln!(s, "{MAGIC}").unwrap();
    writeln!(s, "N {}", w.max()).unwrap();
    writeln!(s, "k {}", header.k_spec.as_deref().unwrap_or("-")).unwrap();
    match header.seed {
        Some(seed) => writeln!(s, "seed {seed}").unwrap(),
        None => writeln!(s, "seed -").unwrap(),
    }
    writeln!(s, "runs {}", runs.len()).unwrap();
    for (start, len) in runs {
        writeln!(s, "{start} {len}").unwrap();
    }
    s
}

pub fn decode_window(text: &str, path: &Path) -> Result<(SequenceWindow, WindowHeader)> {
    let err = |line: usize, msg: &str| CliError::Parse { path: path.into(), line, msg: msg.into() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut field = |key: &str| -> Result<(usize, String)> {
        let (no, line) = lines.next().ok_or_else(|| err(0, "truncated header"))?;
        let value = line
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| err(no, &format!("expected `{key} ...`")))?;
        Ok((no, value.to_string()))
    };
    let (no, magic) = field("gpfree-window")?;
    if magic != "1" {
        return Err(err(no, "unsupported window version"));
    }
    let (no, n) = field("N")?;
    let max: u64 = n.parse().map_err(|_| err(no, "bad N"))?;
    let (_, k) = field("k")?;
    let (no, seed) = field("seed")?;
    let seed = match seed.as_str() {
        "-" => None,
        s => Some(s.parse().map_err(|_| err(no, "bad seed"))?),
    };
    let (no, runs) = field("runs")?;
    let runs: usize = runs.parse().map_err(|_| err(no, "bad run count"))?;
    let mut w = SequenceWindow::full(max);
    let mut last_end = 0u64;
    for _ in 0..runs {
        let (no, line) = lines.next().ok_or_else(|| err(0, "missing run lines"))?;
        let (a, b) = line.split_once(' ').ok_or_else(|| err(no, "expected `start length`"))?;
        let start: u64 = a.parse().map_err(|_| err(no, "bad run start"))?;
        let len: u64 = b.trim().parse().map_err(|_| err(no, "bad run length"))?;
        if start <= last_end || len == 0 || start.saturating_add(len - 1) > max {
            return Err(err(no, "runs must be ascending, nonempty and inside [1, N]"));
        }
        for m in start..start + len {
            w.remove(m);
        }
        last_end = start + len - 1;
    }
    if let Some((no, extra)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(err(no, &format!("unexpected trailing line `{extra}`")));
    }
    let header = WindowHeader { k_spec: (k != "-").then_some(k), seed };
    Ok((w, header))
}

/// Reads a native window file or a newline-separated ascending list of
/// positive integers. For lists, `N` is the last element unless `max` is
/// given; `max` also overrides the bound of a native file.
pub fn ingest_sequence(path: &Path, max: Option<u64>) -> Result<SequenceWindow> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    if text.lines().next().map(str::trim) == Some(MAGIC) {
        let (w, _) = decode_window(&text, path)?;
        return match max {
            Some(m) if m != w.max() => Ok(SequenceWindow::from_members(m, w.members().filter(|&x| x <= m))?),
            _ => Ok(w),
        };
    }
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: u64 = line.parse().ok().filter(|&v| v > 0).ok_or_else(|| CliError::Parse {
            path: path.into(),
            line: i + 1,
            msg: format!("expected a positive integer, found `{line}`"),
        })?;
        if values.last().is_some_and(|&last| v <= last) {
            return Err(CliError::NotAscending { path: path.into(), line: i + 1 });
        }
        values.push(v);
    }
    let bound = max.unwrap_or_else(|| values.last().copied().unwrap_or(0));
    Ok(SequenceWindow::from_members(bound, values.into_iter().filter(|&v| v <= bound))?)
}
