//! Canonical integer geometric progressions.
//!
//! A progression is stored as `(a, b, c, len)` with `gcd(b, c) = 1` and
//! `b < c`; its terms are `a * b^(len-1-t) * c^t` for `t = 0..len`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::arith::{checked_mul, checked_pow, gcd};
use crate::error::{Error, Result};
use crate::functions::LengthFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeomProgression {
    a: u64,
    b: u64,
    c: u64,
    len: u32,
}

#[allow(clippy::len_without_is_empty)]
impl GeomProgression {
    /// Builds the canonical progression with scale `a` and ratio `c/b`.
    ///
    /// The ratio is reduced to lowest terms and oriented so that it exceeds 1;
    /// the scale multiplies the reduced monomials `b^(len-1-t) c^t`.
    pub fn new(a: u64, b: u64, c: u64, len: u32) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::NonPositive);
        }
        if len < 3 {
            return Err(Error::TooShort);
        }
        if b == c {
            return Err(Error::RatioTrivial);
        }
        let g = gcd(b, c);
        let (b, c) = if b < c { (b / g, c / g) } else { (c / g, b / g) };
        let p = Self { a, b, c, len };
        p.max_term()?;
        Ok(p)
    }

    /// Skips validation; callers guarantee canonical form and no overflow.
    pub(crate) fn from_canonical(a: u64, b: u64, c: u64, len: u32) -> Self {
        debug_assert!(b < c && gcd(b, c) == 1 && len >= 3);
        Self { a, b, c, len }
    }

    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn c(&self) -> u64 {
        self.c
    }
    pub fn len(&self) -> u32 {
        self.len
    }

    /// Term with index `t`, `0 <= t < len`.
    pub fn term(&self, t: u32) -> Result<u64> {
        assert!(t < self.len);
        let lo = checked_pow(self.b, self.len - 1 - t)?;
        let hi = checked_pow(self.c, t)?;
        checked_mul(checked_mul(self.a, lo)?, hi)
    }

    pub fn min_term(&self) -> Result<u64> {
        self.term(0)
    }

    pub fn max_term(&self) -> Result<u64> {
        checked_mul(self.a, checked_pow(self.c, self.len - 1)?)
    }

    pub fn terms(&self) -> Result<Vec<u64>> {
        (0..self.len).map(|t| self.term(t)).collect()
    }

    /// The two centermost terms `(lower, upper)` of an even-length progression.
    pub fn middle_terms(&self) -> Result<(u64, u64)> {
        if self.len % 2 == 1 {
            return Err(Error::OddLength);
        }
        let half = self.len / 2;
        Ok((self.term(half - 1)?, self.term(half)?))
    }

    /// Every canonical progression of length `>= 3`, other than `self`, whose
    /// terms are a subset of `self`'s terms.
    ///
    /// Such subsets are exactly the arithmetic progressions of term indices:
    /// start `s`, step `d`, count `m` gives ratio `(c/b)^d` and scale
    /// `a * b^(len-1-s-d(m-1)) * c^s`.
    pub fn sub_progressions(&self) -> Result<Vec<GeomProgression>> {
        let mut out = Vec::new();
        let last = self.len - 1;
        for d in 1..=last / 2 {
            let bd = checked_pow(self.b, d)?;
            let cd = checked_pow(self.c, d)?;
            for m in 3..=last / d + 1 {
                for s in 0..=last - d * (m - 1) {
                    if d == 1 && m == self.len {
                        continue;
                    }
                    let a = checked_mul(
                        checked_mul(self.a, checked_pow(self.b, last - s - d * (m - 1))?)?,
                        checked_pow(self.c, s)?,
                    )?;
                    out.push(Self::from_canonical(a, bd, cd, m));
                }
            }
        }
        Ok(out)
    }

    /// No proper sub-progression is itself long enough to be forbidden.
    pub fn is_minimal(&self, k: &LengthFunction) -> Result<bool> {
        for q in self.sub_progressions()? {
            if f64::from(q.len) >= k.eval(q.max_term()?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sort key `(min term, max term, len, a, b, c)`.
    pub fn canonical_key(&self) -> Result<(u64, u64, u32, u64, u64, u64)> {
        Ok((self.min_term()?, self.max_term()?, self.len, self.a, self.b, self.c))
    }
}

/// Total order matching [`GeomProgression::canonical_key`]; both progressions
/// must have representable terms.
pub fn canonical_cmp(x: &GeomProgression, y: &GeomProgression) -> Ordering {
    x.canonical_key().expect("term overflow").cmp(&y.canonical_key().expect("term overflow"))
}
