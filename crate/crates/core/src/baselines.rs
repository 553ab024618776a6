//! Deterministic comparison sequences: `t`-th-power-free integers and the
//! variable-exponent sequence with `k(m) = max(3, eps ln m)`.

use alloc::vec::Vec;

use crate::arith::{iroot, primes_up_to};
use crate::error::{Error, Result};
use crate::window::SequenceWindow;

/// Integers in `[1, max]` not divisible by any `p^t`.
pub fn sieve_power_free(max: u64, t: u32) -> SequenceWindow {
    assert!(t >= 2);
    let mut w = SequenceWindow::full(max);
    for p in primes_up_to(iroot(max, t) as f64) {
        let step = p.pow(t);
        let mut m = step;
        while m <= max {
            w.remove(m);
            m += step;
        }
    }
    w
}

/// Why `m` was excluded: `p^exponent | m` with `exponent = ceil(k(m))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KFreeWitness {
    pub m: u64,
    pub p: u64,
    pub exponent: u32,
}

/// `max(3, eps ln m)`.
pub fn variable_length(eps: f64, m: u64) -> f64 {
    let v = eps * libm::log(m as f64);
    if v > 3.0 {
        v
    } else {
        3.0
    }
}

/// `ceil(max(3, eps ln m))`.
pub fn variable_exponent(eps: f64, m: u64) -> u32 {
    libm::ceil(variable_length(eps, m)) as u32
}

fn check_eps(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidParameter("epsilon must be positive"));
    }
    Ok(())
}

/// Primes `p < e^(1/eps)`. Fails when that bound is beyond `2^32`.
pub fn epsilon_prime_set(eps: f64) -> Result<Vec<u64>> {
    check_eps(eps)?;
    let bound = libm::exp(1.0 / eps);
    if bound > 4_294_967_296.0 {
        return Err(Error::Overflow);
    }
    let mut ps = primes_up_to(bound);
    if ps.last().is_some_and(|&p| p as f64 >= bound) {
        ps.pop();
    }
    Ok(ps)
}

/// Integers `m <= max` with no prime `p` such that `p^ceil(k(m)) | m`, where
/// `k(m) = max(3, eps ln m)`, plus one witness (the smallest such prime) per
/// excluded `m`.
///
/// `p^k(m) <= m` forces `ln p <= 1/eps`, and the floor of 3 forces
/// `p^3 <= m`, so only primes below `min(e^(1/eps), max^(1/3))` are sieved.
pub fn sieve_variable_kfree(max: u64, eps: f64) -> Result<(SequenceWindow, Vec<KFreeWitness>)> {
    check_eps(eps)?;
    let cube_root = iroot(max, 3) as f64;
    let limit = libm::exp(1.0 / eps).min(cube_root);
    let mut window = SequenceWindow::full(max);
    let mut witnesses = Vec::new();
    for p in primes_up_to(limit) {
        let step = p * p * p;
        let mut m = step;
        while m <= max {
            if window.contains(m) {
                let mut v = 0;
                let mut r = m;
                while r % p == 0 {
                    r /= p;
                    v += 1;
                }
                let exponent = variable_exponent(eps, m);
                if v >= exponent {
                    window.remove(m);
                    witnesses.push(KFreeWitness { m, p, exponent });
                }
            }
            m += step;
        }
    }
    witnesses.sort_unstable_by_key(|w| w.m);
    Ok((window, witnesses))
}
