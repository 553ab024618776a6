//! Checks about middle terms: how many minimal progressions share a middle
//! term, how far apart the two middles are, and how likely an interval is
//! to be wiped out.

use alloc::vec;
use alloc::vec::Vec;

use super::sums::{interval_len, sum_s};
use super::{Claim, LemmaCheckResult, Witness};
use crate::arith::{checked_mul, checked_pow, count_factorizations, gcd, power_divisors};
use crate::enumerate::enumerate_gk_star;
use crate::error::{Error, Result};
use crate::functions::{GapFunction, LengthFunction};
use crate::mix::trial_seed;
use crate::process::{membership_in_family, Estimate, MinimalFamily};
use crate::progression::GeomProgression;

/// A minimal progression with `n` as a middle term, and the factorization
/// `n = a b^(k/2) c^(k/2-1)` it is sent to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MiddlePreimage {
    pub progression: GeomProgression,
    pub max_term: u64,
    pub triple: (u64, u64, u64),
}

/// All minimal progressions (no window) having `n` as one of their middle
/// terms, each mapped to a factorization of `n` using length `km`.
pub fn middle_preimages(n: u64, k: &LengthFunction, km: u32) -> Result<Vec<MiddlePreimage>> {
    let mut out = Vec::new();
    let mut len = km;
    // c >= 2 and c^(len/2 - 1) | n
    while 1u64.checked_shl(len / 2 - 1).is_some_and(|v| v <= n) {
        let half = len / 2;
        // n = a b^half c^(half-1): the lower middle
        // n = a b^(half-1) c^half: the upper middle
        for (b_exp, c_exp, is_lower) in [(half, half - 1, true), (half - 1, half, false)] {
            for c in power_divisors(n, c_exp).into_iter().filter(|&c| c >= 2) {
                let rest = n / checked_pow(c, c_exp)?;
                for b in power_divisors(rest, b_exp).into_iter().take_while(|&b| b < c) {
                    if gcd(b, c) != 1 {
                        continue;
                    }
                    let a = rest / checked_pow(b, b_exp)?;
                    let p = GeomProgression::new(a, b, c, len)?;
                    let max_term = p.max_term()?;
                    if f64::from(len) < k.eval(max_term) || !p.is_minimal(k)? {
                        continue;
                    }
                    let shift = checked_pow(checked_mul(b, c)?, (len - km) / 2)?;
                    let a_img = checked_mul(a, shift)?;
                    let triple = if is_lower { (a_img, b, c) } else { (a_img, c, b) };
                    out.push(MiddlePreimage { progression: p, max_term, triple });
                }
            }
        }
        len += 2;
    }
    Ok(out)
}

/// Counts the minimal progressions with `n` as a middle term and checks the
/// count against `d(n; k(n)/2, k(n)/2 - 1)` through an explicit injection.
///
/// The preimages are found from the factorizations of `n` directly, so the
/// count covers every minimal progression, including those whose largest term
/// exceeds `max`; the in-window count is reported as a detail. The window must
/// satisfy `max >= n 2^(k(n)/2)`.
pub fn lemma5_check(n: u64, max: u64, k: &LengthFunction) -> Result<LemmaCheckResult> {
    if n == 0 || n > max {
        return Err(Error::InvalidParameter("n must lie in [1, N]"));
    }
    let km = k.even_value(n)?;
    let required = checked_mul(n, checked_pow(2, km / 2)?)?;
    if max < required {
        return Err(Error::WindowTooSmall { required });
    }
    let pre = middle_preimages(n, k, km)?;
    let d = count_factorizations(n, km / 2, km / 2 - 1);
    let mut collision = None;
    for (i, x) in pre.iter().enumerate() {
        if pre[..i].iter().any(|y| y.triple == x.triple) {
            collision.get_or_insert(x.progression);
        }
    }
    let valid = pre.iter().all(|p| {
        let (a, b, c) = p.triple;
        b.checked_pow(km / 2)
            .and_then(|v| v.checked_mul(c.checked_pow(km / 2 - 1)?))
            .and_then(|v| v.checked_mul(a))
            == Some(n)
    });
    let in_window = pre.iter().filter(|p| p.max_term <= max).count();
    let largest = pre.iter().map(|p| p.max_term).max().unwrap_or(0);
    let count = pre.len() as u64;
    let holds = count <= d && collision.is_none() && valid;
    Ok(LemmaCheckResult::new(Claim::MiddleMultiplicity, count as f64, d as f64, holds)
        .param("n", n as f64)
        .param("N", max as f64)
        .param("k", f64::from(km))
        .detail("in_window", in_window as f64)
        .detail("largest_max_term", largest as f64)
        .detail("injective", f64::from(u8::from(collision.is_none())))
        .witness(collision.map(Witness::Progression)))
}

/// Monte Carlo check of `P[n in T] >= 2^(-d(n; k(n)/2, k(n)/2 - 1))`, passing
/// when `estimate + 3 SE` reaches the bound.
pub fn membership_bound_check(
    family: &MinimalFamily,
    n: u64,
    k: &LengthFunction,
    trials: u64,
    seed: u64,
) -> Result<LemmaCheckResult> {
    let km = k.even_value(n)?;
    let est = membership_in_family(family, n, trials, seed)?;
    let d = count_factorizations(n, km / 2, km / 2 - 1);
    let bound = libm::scalbn(1.0, -(d.min(2000) as i32));
    let holds = est.estimate + 3.0 * est.standard_error >= bound;
    Ok(LemmaCheckResult::new(Claim::MembershipBound, est.estimate, bound, holds)
        .param("n", n as f64)
        .param("N", family.max() as f64)
        .param("k", f64::from(km))
        .param("trials", trials as f64)
        .param("seed", seed as f64)
        .detail("standard_error", est.standard_error)
        .detail("d", d as f64))
}

/// Exact test of `sep >= x^(1 - 1/(k - 1))` for integer `k`, i.e.
/// `sep^(k-1) >= x^(k-2)`.
fn separation_at_least(sep: u64, x: u64, k: f64) -> bool {
    if k == libm::floor(k) && (3.0..64.0).contains(&k) {
        let k = k as u32;
        let lhs = u128::from(sep).checked_pow(k - 1);
        let rhs = u128::from(x).checked_pow(k - 2);
        if let (Some(l), Some(r)) = (lhs, rhs) {
            return l >= r;
        }
    }
    (sep as f64) >= libm::pow(x as f64, 1.0 - 1.0 / (k - 1.0))
}

/// Smallest gap between the two middle terms over the minimal progressions
/// in `[1, max]` whose lower middle term is at least `x`.
///
/// Odd-length members have no middle pair and are skipped.
pub fn middle_separation(max: u64, k: &LengthFunction, x: u64) -> Result<LemmaCheckResult> {
    if x == 0 || x > max {
        return Err(Error::InvalidParameter("x must lie in [1, N]"));
    }
    let kx = k.eval(x);
    let threshold = libm::pow(x as f64, 1.0 - 1.0 / (kx - 1.0));
    let mut best: Option<(u64, GeomProgression)> = None;
    let mut qualifying = 0u64;
    for p in enumerate_gk_star(max, k) {
        if p.len() % 2 == 1 {
            continue;
        }
        let (lower, upper) = p.middle_terms()?;
        if lower < x {
            continue;
        }
        qualifying += 1;
        let sep = upper - lower;
        if best.is_none_or(|(s, _)| sep < s) {
            best = Some((sep, p));
        }
    }
    let mut r = match best {
        None => LemmaCheckResult::new(Claim::MiddleSeparation, f64::INFINITY, threshold, true),
        Some((sep, p)) => {
            let half = p.len() / 2;
            let chain = checked_mul(
                p.a(),
                checked_mul(checked_pow(p.b(), half - 1)?, checked_pow(p.c(), half - 1)?)?,
            )?;
            LemmaCheckResult::new(
                Claim::MiddleSeparation,
                sep as f64,
                threshold,
                separation_at_least(sep, x, kx),
            )
            .detail("chain_product", chain as f64)
            .detail("x_over_b", x as f64 / p.b() as f64)
            .witness(Some(Witness::Progression(p)))
        }
    };
    r = r.param("N", max as f64).param("k", kx).param("x", x as f64);
    Ok(r.detail("qualifying", qualifying as f64))
}

/// Monte Carlo estimate of `P[T misses [x, x + C h(x))]`, compared with
/// `exp(-S(x, h, k, C))`.
///
/// Also reports whether some minimal progression has both middle terms in
/// the interval; the bound is only claimed when none does.
pub fn interval_miss_mc(
    x: u64,
    c: f64,
    h: &GapFunction,
    k: &LengthFunction,
    max: u64,
    trials: u64,
    seed: u64,
) -> Result<LemmaCheckResult> {
    let family = MinimalFamily::new(max, k)?;
    interval_miss_in_family(&family, x, c, h, k, trials, seed)
}

/// [`interval_miss_mc`] over a prebuilt family; `k` must be the function the
/// family was built with.
pub fn interval_miss_in_family(
    family: &MinimalFamily,
    x: u64,
    c: f64,
    h: &GapFunction,
    k: &LengthFunction,
    trials: u64,
    seed: u64,
) -> Result<LemmaCheckResult> {
    if x == 0 {
        return Err(Error::NonPositive);
    }
    if trials == 0 {
        return Err(Error::NonPositive);
    }
    let hx = h.eval(x);
    let reach = x as f64 + c * hx;
    if reach.is_nan() || reach > family.max() as f64 {
        return Err(Error::WindowTooSmall { required: libm::ceil(reach) as u64 });
    }
    let len = interval_len(c, hx)?;
    let end = x + len;
    let touching = family.touching(x, end);
    let both_inside =
        touching.iter().filter(|t| (x..end).contains(&t.lower) && (x..end).contains(&t.upper)).count();

    let mut seen = vec![u64::MAX; len as usize];
    let mut misses = 0u64;
    for t in 0..trials {
        let s = trial_seed(seed, t);
        let mut removed = 0u64;
        for cand in &touching {
            let (_, v) = cand.chosen(s);
            if (x..end).contains(&v) {
                let slot = &mut seen[(v - x) as usize];
                if *slot != t {
                    *slot = t;
                    removed += 1;
                }
            }
        }
        if removed == len {
            misses += 1;
        }
    }
    let est = Estimate::from_counts(misses, trials);
    let s_val = sum_s(x, h, k, c)?;
    let bound = libm::exp(-s_val);
    let holds = est.estimate - 3.0 * est.standard_error <= bound;
    Ok(LemmaCheckResult::new(Claim::IntervalMiss, est.estimate, bound, holds)
        .param("x", x as f64)
        .param("C", c)
        .param("h", hx)
        .param("N", family.max() as f64)
        .param("trials", trials as f64)
        .param("seed", seed as f64)
        .detail("standard_error", est.standard_error)
        .detail("sum_s", s_val)
        .detail("interval_len", len as f64)
        .detail("both_middles_inside", both_inside as f64)
        .detail("independent", f64::from(u8::from(both_inside == 0))))
}
