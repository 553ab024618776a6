//! A sequence restricted to `[1, N]`, stored as a bitset.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceWindow {
    max: u64,
    bits: Vec<u64>,
}

impl SequenceWindow {
    /// Every integer in `[1, max]` is a member.
    pub fn full(max: u64) -> Self {
        let words = words_for(max);
        let mut bits = vec![u64::MAX; words];
        let tail = (max % 64) as u32;
        if tail != 0 {
            bits[words - 1] = (1u64 << tail) - 1;
        }
        Self { max, bits }
    }

    /// No members.
    pub fn empty(max: u64) -> Self {
        Self { max, bits: vec![0; words_for(max)] }
    }

    /// Window over `[1, max]` holding exactly `members`; out-of-range values are rejected.
    pub fn from_members(max: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut w = Self::empty(max);
        for m in members {
            if m == 0 || m > max {
                return Err(Error::InvalidParameter("member outside [1, N]"));
            }
            w.insert(m);
        }
        Ok(w)
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 || n > self.max {
            return false;
        }
        let i = n - 1;
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, n: u64) {
        assert!(n >= 1 && n <= self.max);
        let i = n - 1;
        self.bits[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, n: u64) {
        assert!(n >= 1 && n <= self.max);
        let i = n - 1;
        self.bits[(i / 64) as usize] &= !(1 << (i % 64));
    }

    /// Number of members.
    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| BitIter(w).map(move |b| wi as u64 * 64 + b + 1))
    }

    pub fn excluded(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.max).filter(move |&n| !self.contains(n))
    }

    /// Maximal runs of consecutive excluded integers as `(start, length)`.
    pub fn excluded_runs(&self) -> Vec<(u64, u64)> {
        let mut runs: Vec<(u64, u64)> = Vec::new();
        for n in self.excluded() {
            match runs.last_mut() {
                Some((s, l)) if *s + *l == n => *l += 1,
                _ => runs.push((n, 1)),
            }
        }
        runs
    }

    /// Smallest member `>= n`, if any.
    pub fn next_member(&self, n: u64) -> Option<u64> {
        let n = n.max(1);
        if n > self.max {
            return None;
        }
        let i = n - 1;
        let mut wi = (i / 64) as usize;
        let mut w = self.bits[wi] & (u64::MAX << (i % 64));
        loop {
            if w != 0 {
                return Some(wi as u64 * 64 + u64::from(w.trailing_zeros()) + 1);
            }
            wi += 1;
            if wi == self.bits.len() {
                return None;
            }
            w = self.bits[wi];
        }
    }
}

fn words_for(max: u64) -> usize {
    max.div_ceil(64) as usize
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(u64::from(b))
    }
}
