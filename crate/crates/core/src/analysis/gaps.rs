use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functions::GapFunction;
use crate::window::SequenceWindow;

/// Gap statistics of a window.
///
/// Interior gaps are differences of consecutive members. The boundary gaps
/// from 0 to the first member and from the last member to `N + 1` are kept
/// apart from the interior maximum.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapReport {
    pub max: u64,
    pub members: u64,
    /// Largest interior gap; 0 when the window has a single member.
    pub max_gap: u64,
    /// Member at the left end of the first largest interior gap.
    pub argmax: Option<u64>,
    pub leading_gap: u64,
    pub trailing_gap: u64,
    /// `h(N)`.
    pub gap_value: f64,
    /// Smallest `C` such that every `[m, m + C h(N))`, `1 <= m <= N`, meets
    /// the window, with `N + 1` standing in for the next member past the end.
    pub fitted_c: f64,
    /// `(decade start, largest interior gap whose left member lies in the decade)`.
    pub decade_maxima: Vec<(u64, u64)>,
}

pub fn gap_report(window: &SequenceWindow, h: &GapFunction) -> Result<GapReport> {
    let mut members = window.members();
    let first = members.next().ok_or(Error::EmptyWindow)?;
    let max = window.max();
    let mut count = 1;
    let mut prev = first;
    let mut max_gap = 0;
    let mut argmax = None;
    let mut decade_maxima: Vec<(u64, u64)> = Vec::new();
    for m in members {
        let gap = m - prev;
        if gap > max_gap {
            max_gap = gap;
            argmax = Some(prev);
        }
        let decade = decade_start(prev);
        match decade_maxima.last_mut() {
            Some((d, g)) if *d == decade => *g = (*g).max(gap),
            _ => decade_maxima.push((decade, gap)),
        }
        prev = m;
        count += 1;
    }
    let last = prev;
    let trailing_gap = max + 1 - last;
    // worst m: 1, just after a member, or just after the last member
    let mut span = first.max(max_gap);
    if last < max {
        span = span.max(trailing_gap);
    }
    let gap_value = h.eval(max);
    Ok(GapReport {
        max,
        members: count,
        max_gap,
        argmax,
        leading_gap: first,
        trailing_gap,
        gap_value,
        fitted_c: span as f64 / gap_value,
        decade_maxima,
    })
}

fn decade_start(n: u64) -> u64 {
    let mut d = 1;
    while d <= n / 10 {
        d *= 10;
    }
    d
}
