//! The randomized process: every minimal forbidden progression independently
//! loses one of its two middle terms, chosen by a fair keyed coin. The
//! survivors in `[1, N]` form the constructed sequence.

use alloc::vec::Vec;

use crate::enumerate::enumerate_gk_star;
use crate::error::{Error, Result};
use crate::functions::LengthFunction;
use crate::mix::{coin, trial_seed, Coin};
use crate::progression::GeomProgression;
use crate::window::SequenceWindow;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProcessConfig {
    pub max: u64,
    pub k: LengthFunction,
    pub seed: u64,
}

/// One minimal progression and the middle term removed from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExclusionRecord {
    pub progression: GeomProgression,
    pub lower: u64,
    pub upper: u64,
    pub coin: Coin,
    pub chosen: u64,
}

/// A minimal progression together with its middle terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub progression: GeomProgression,
    pub lower: u64,
    pub upper: u64,
}

impl Candidate {
    pub fn chosen(&self, seed: u64) -> (Coin, u64) {
        match coin(seed, &self.progression) {
            Coin::Lower => (Coin::Lower, self.lower),
            Coin::Upper => (Coin::Upper, self.upper),
        }
    }
}

/// `G_k*` restricted to `[1, N]`, enumerated once and reusable across seeds.
#[derive(Debug, Clone)]
pub struct MinimalFamily {
    max: u64,
    candidates: Vec<Candidate>,
}

impl MinimalFamily {
    pub fn new(max: u64, k: &LengthFunction) -> Result<Self> {
        if max == 0 {
            return Err(Error::NonPositive);
        }
        if !k.is_process_ready() {
            return Err(Error::NotProcessReady);
        }
        let candidates = enumerate_gk_star(max, k)
            .into_iter()
            .map(|p| {
                let (lower, upper) = p.middle_terms()?;
                Ok(Candidate { progression: p, lower, upper })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { max, candidates })
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    /// Runs the process for one seed.
    pub fn realize(&self, seed: u64) -> (SequenceWindow, Vec<ExclusionRecord>) {
        let mut window = SequenceWindow::full(self.max);
        let records = self
            .candidates
            .iter()
            .map(|cand| {
                let (coin, chosen) = cand.chosen(seed);
                window.remove(chosen);
                ExclusionRecord {
                    progression: cand.progression,
                    lower: cand.lower,
                    upper: cand.upper,
                    coin,
                    chosen,
                }
            })
            .collect();
        (window, records)
    }

    /// Candidates with at least one middle term in `[lo, hi)`.
    pub fn touching(&self, lo: u64, hi: u64) -> Vec<Candidate> {
        self.candidates
            .iter()
            .filter(|c| (lo..hi).contains(&c.lower) || (lo..hi).contains(&c.upper))
            .copied()
            .collect()
    }
}

pub fn run_process(cfg: &ProcessConfig) -> Result<(SequenceWindow, Vec<ExclusionRecord>)> {
    Ok(MinimalFamily::new(cfg.max, &cfg.k)?.realize(cfg.seed))
}

/// Fraction of successes over Monte Carlo trials.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Estimate {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub standard_error: f64,
}

impl Estimate {
    pub fn from_counts(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        Self { hits, trials, estimate: p, standard_error: libm::sqrt(p * (1.0 - p) / trials as f64) }
    }
}

/// Estimates `P[n in T]` over `trials` independent runs.
///
/// Only the progressions with `n` as a middle term can remove `n`, and coins
/// are keyed per progression, so each trial evaluates exactly the coins a
/// full run would for those progressions.
pub fn membership_probability(
    n: u64,
    max: u64,
    k: &LengthFunction,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    let family = MinimalFamily::new(max, k)?;
    membership_in_family(&family, n, trials, seed)
}

pub fn membership_in_family(family: &MinimalFamily, n: u64, trials: u64, seed: u64) -> Result<Estimate> {
    if n == 0 || n > family.max() {
        return Err(Error::InvalidParameter("n must lie in [1, N]"));
    }
    if trials == 0 {
        return Err(Error::NonPositive);
    }
    let relevant = family.touching(n, n + 1);
    let hits = (0..trials)
        .filter(|&t| {
            let s = trial_seed(seed, t);
            relevant.iter().all(|c| c.chosen(s).1 != n)
        })
        .count() as u64;
    Ok(Estimate::from_counts(hits, trials))
}
