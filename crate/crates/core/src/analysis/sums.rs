//! The interval sum `S(x, h, k, C) = sum 2^(-d(n; k/2, k/2-1))` and the
//! bounds that control it.

use alloc::vec::Vec;
use core::f64::consts::{E, LN_2};

use super::{Claim, LemmaCheckResult, Witness};
use crate::arith::{count_factorizations_of, factorize, primes_up_to};
use crate::error::{Error, Result};
use crate::functions::{GapFunction, LengthFunction};

/// `k(x)` as an even integer `>= 6`.
fn even_length_at(k: &LengthFunction, x: u64) -> Result<u32> {
    let v = k.eval(x);
    if v >= 6.0 && v == libm::floor(v) && libm::fmod(v, 2.0) == 0.0 && v < 4096.0 {
        Ok(v as u32)
    } else {
        Err(Error::NotProcessReady)
    }
}

/// Number of integers in `[x, x + C h)`: `ceil(C h)`.
pub(crate) fn interval_len(c: f64, h: f64) -> Result<u64> {
    let v = c * h;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidParameter("C * h must be finite and nonnegative"));
    }
    Ok(libm::ceil(v) as u64)
}

/// `sum_{start <= n < end} 2^(-d(n; half, half - 1))`.
pub fn sum_s_range(start: u64, end: u64, half: u32) -> f64 {
    assert!(start >= 1 && half >= 2);
    (start..end)
        .map(|n| {
            let d = count_factorizations_of(&factorize(n), half, half - 1);
            libm::scalbn(1.0, -(d.min(2000) as i32))
        })
        .sum()
}

/// `S(x, h, k, C)` with `k = k(x)` and `h = h(x)` frozen, summed over
/// `{x, ..., x + ceil(C h(x)) - 1}`.
pub fn sum_s(x: u64, h: &GapFunction, k: &LengthFunction, c: f64) -> Result<f64> {
    if x == 0 {
        return Err(Error::NonPositive);
    }
    let kx = even_length_at(k, x)?;
    let len = interval_len(c, h.eval(x))?;
    Ok(sum_s_range(x, x + len, kx / 2))
}

/// Riemann zeta for real `s >= 2`, absolute error below `1e-12`.
///
/// Direct summation of the first terms plus the Euler-Maclaurin tail.
pub fn zeta(s: f64) -> f64 {
    assert!(s >= 2.0, "zeta is only needed for s >= 2");
    const M: u32 = 64;
    let mut sum = 0.0;
    for n in (1..M).rev() {
        sum += libm::pow(f64::from(n), -s);
    }
    let m = f64::from(M);
    let ms = libm::pow(m, -s);
    sum += m * ms / (s - 1.0) + ms / 2.0;
    // Bernoulli corrections B2, B4, B6
    let mut rising = s;
    let mut power = ms / m;
    sum += rising * power / 12.0;
    rising *= (s + 1.0) * (s + 2.0);
    power /= m * m;
    sum -= rising * power / 720.0;
    rising *= (s + 3.0) * (s + 4.0);
    power /= m * m;
    sum += rising * power / 30240.0;
    sum
}

/// Splits `[x, x + C h)` into the set `A` of elements divisible by `p^(k/2-1)`
/// for some prime `p <= h`, and checks
///
/// * `|A| <= (zeta(k/2 - 1) - 1) C h + pi(h)`, and
/// * for each `n` outside `A`,
///   `d(n; k/2, k/2-1) <= exp(ln 2 (ln n / ((k/2-1) ln h) + ln n / ((k/2) ln h)))`.
pub fn lemma7_partition(x: u64, h: &GapFunction, k: &LengthFunction, c: f64) -> Result<LemmaCheckResult> {
    if x == 0 {
        return Err(Error::NonPositive);
    }
    let hx = h.eval(x);
    if hx.is_nan() || hx <= E {
        return Err(Error::RequiresHAboveE);
    }
    let kx = even_length_at(k, x)?;
    let half = kx / 2;
    let e = half - 1;
    let len = interval_len(c, hx)?;
    let primes = primes_up_to(hx);
    let ln_h = libm::log(hx);

    let mut in_a = 0u64;
    let mut violations = 0u64;
    let mut first_violation = None;
    let mut worst_ratio = 0.0f64;
    for n in x..x + len {
        let f = factorize(n);
        let divisible = f
            .pairs()
            .iter()
            .any(|&(p, alpha)| alpha >= e && (p as f64) <= hx && primes.binary_search(&p).is_ok());
        if divisible {
            in_a += 1;
            continue;
        }
        let d = count_factorizations_of(&f, half, e) as f64;
        let ln_n = libm::log(n as f64);
        let bound = libm::exp(LN_2 * (ln_n / (f64::from(e) * ln_h) + ln_n / (f64::from(half) * ln_h)));
        worst_ratio = worst_ratio.max(d / bound);
        if d > bound {
            violations += 1;
            first_violation.get_or_insert(n);
        }
    }
    let a_bound = (zeta(f64::from(e)) - 1.0) * c * hx + primes.len() as f64;
    let holds = (in_a as f64) <= a_bound && violations == 0;
    Ok(LemmaCheckResult::new(Claim::PowerDivisiblePartition, in_a as f64, a_bound, holds)
        .param("x", x as f64)
        .param("h", hx)
        .param("k", f64::from(kx))
        .param("C", c)
        .detail("interval_len", len as f64)
        .detail("prime_count", primes.len() as f64)
        .detail("smoothing_violations", violations as f64)
        .detail("worst_smoothing_ratio", worst_ratio)
        .witness(first_violation.map(Witness::Integer)))
}

/// `B C h(x) exp(-ln 2 exp(4 ln 2 ln x / ((k(x) - 2) ln h(x))))`.
pub fn lemma7_bound(x: u64, h: &GapFunction, k: &LengthFunction, c: f64, b: f64) -> Result<f64> {
    let hx = h.eval(x);
    if hx.is_nan() || hx <= 1.0 {
        return Err(Error::InvalidParameter("h(x) must exceed 1"));
    }
    let kx = k.eval(x);
    let inner = 4.0 * LN_2 * libm::log(x as f64) / ((kx - 2.0) * libm::log(hx));
    Ok(b * c * hx * libm::exp(-LN_2 * libm::exp(inner)))
}

/// `(k - 2) ln h ln ln h >= 4 ln 2 ln x` at the point.
pub fn reduced_inequality_holds(x: u64, hx: f64, kx: f64) -> bool {
    if hx.is_nan() || hx <= 1.0 {
        return false;
    }
    let ln_h = libm::log(hx);
    (kx - 2.0) * ln_h * libm::log(ln_h) >= 4.0 * LN_2 * libm::log(x as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SumGridPoint {
    pub x: u64,
    pub h: f64,
    pub c: f64,
    pub k: u32,
}

/// 50 points: `x` log-spaced over `[10^2, 10^6]`, cycling through
/// `h in {10, 100}`, `C in {1, 5}`, `k in {6, 8}`.
pub fn default_sum_grid() -> Vec<SumGridPoint> {
    const H: [f64; 2] = [10.0, 100.0];
    const C: [f64; 2] = [1.0, 5.0];
    const K: [u32; 2] = [6, 8];
    (0..50)
        .map(|i| {
            let x = libm::round(libm::pow(10.0, 2.0 + 4.0 * f64::from(i) / 49.0)) as u64;
            let combo = i as usize % 8;
            SumGridPoint { x, h: H[combo & 1], c: C[(combo >> 1) & 1], k: K[combo >> 2] }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SumFit {
    /// Points satisfying the reduced feasibility inequality.
    pub qualifying: usize,
    /// `min S / (C h^(1 - ln 2))` over the qualifying points.
    pub b_power: f64,
    /// `min S / lemma7_bound(B = 1)` over every point with `h > 1`.
    pub b_smoothing: f64,
    /// For each qualifying point, `lemma7_bound(B = 1) >= C h^(1 - ln 2)`.
    pub chain_holds: bool,
    pub result: LemmaCheckResult,
}

/// Fits the constant in `S >= B C h^(1 - ln 2)` over the points where the
/// reduced inequality holds, and checks the algebraic step from the
/// smoothing bound to the power bound at those points.
pub fn fit_sum_constant(points: &[SumGridPoint]) -> Result<SumFit> {
    let mut b_power = f64::INFINITY;
    let mut b_smoothing = f64::INFINITY;
    let mut qualifying = 0;
    let mut chain_holds = true;
    for pt in points {
        let h = GapFunction::constant(pt.h)?;
        let k = LengthFunction::constant(f64::from(pt.k))?;
        let s = sum_s(pt.x, &h, &k, pt.c)?;
        let smooth = lemma7_bound(pt.x, &h, &k, pt.c, 1.0)?;
        b_smoothing = b_smoothing.min(s / smooth);
        if reduced_inequality_holds(pt.x, pt.h, f64::from(pt.k)) {
            qualifying += 1;
            let power = pt.c * libm::pow(pt.h, 1.0 - LN_2);
            b_power = b_power.min(s / power);
            chain_holds &= smooth >= power * (1.0 - 1e-12);
        }
    }
    let fitted = if qualifying > 0 { b_power } else { 0.0 };
    let holds = qualifying > 0 && fitted > 0.0 && chain_holds;
    let result = LemmaCheckResult::new(Claim::SumLowerBound, fitted, 0.0, holds)
        .param("points", points.len() as f64)
        .detail("qualifying", qualifying as f64)
        .detail("b_smoothing", b_smoothing);
    Ok(SumFit { qualifying, b_power: fitted, b_smoothing, chain_holds, result })
}
