//! Integer factorization, power divisors and the factorization counter
//! `d(n; i, j) = #{(b, c) : b^i c^j | n}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Trial division handles every prime factor below this bound; anything
/// left over is settled by Miller-Rabin and Pollard-Brent.
const TRIAL_LIMIT: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow)
}

pub fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `floor(n^(1/k))` computed exactly.
pub fn iroot(n: u64, k: u32) -> u64 {
    if k == 0 {
        return u64::MAX;
    }
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = libm::pow(n as f64, 1.0 / k as f64) as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Reconstructs `n`; `None` only if the factorization was built by hand
    /// and does not fit in `u64`.
    pub fn value(&self) -> Option<u64> {
        self.0.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant with fixed increments, so the split is reproducible.
fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = y;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Exact prime factorization. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut pairs = Vec::new();
    let mut m = n;
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(2, &mut m);
    push(3, &mut m);
    let mut p = 5u64;
    while p <= TRIAL_LIMIT && p * p <= m {
        push(p, &mut m);
        push(p + 2, &mut m);
        p += 6;
    }
    if m > 1 {
        if p > TRIAL_LIMIT && m >= p * p {
            let mut rest = Vec::new();
            split_large(m, &mut rest);
            rest.sort_unstable();
            for q in rest {
                match pairs.last_mut() {
                    Some((last, e)) if *last == q => *e += 1,
                    _ => pairs.push((q, 1)),
                }
            }
        } else {
            pairs.push((m, 1));
        }
    }
    Factorization(pairs)
}

/// Exponent vectors of the `b` with `b^e | n`, in the order of `f`'s primes.
fn power_divisor_exponents(f: &Factorization, e: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(f.len())];
    for &(_, alpha) in f.pairs() {
        let top = alpha / e;
        let mut next = Vec::with_capacity(out.len() * (top as usize + 1));
        for v in &out {
            for beta in 0..=top {
                let mut w = v.clone();
                w.push(beta);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// All `b >= 1` with `b^e | n`, ascending.
pub fn power_divisors(n: u64, e: u32) -> Vec<u64> {
    assert!(n >= 1 && e >= 1);
    let f = factorize(n);
    let mut out = vec![1u64];
    for &(p, alpha) in f.pairs() {
        let top = alpha / e;
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..top {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `d(n; i, j)`: the number of ordered factorizations `n = a b^i c^j`.
///
/// Iterates `b` over the `i`-th power divisors and, for each, counts the
/// `j`-th power divisors of `n / b^i`.
pub fn count_factorizations(n: u64, i: u32, j: u32) -> u64 {
    assert!(n >= 1 && i >= 1 && j >= 1);
    let f = factorize(n);
    count_factorizations_of(&f, i, j)
}

/// Same as [`count_factorizations`] for an already factored `n`.
pub fn count_factorizations_of(f: &Factorization, i: u32, j: u32) -> u64 {
    power_divisor_exponents(f, i)
        .iter()
        .map(|betas| {
            f.pairs()
                .iter()
                .zip(betas)
                .map(|(&(_, alpha), &beta)| u64::from((alpha - i * beta) / j + 1))
                .product::<u64>()
        })
        .sum()
}

/// True iff no prime power `p^t` divides `n`.
pub fn is_power_free(n: u64, t: u32) -> bool {
    assert!(n >= 1 && t >= 2);
    factorize(n).pairs().iter().all(|&(_, e)| e < t)
}

/// Sieve of Eratosthenes over `[0, limit]`; `true` marks primes.
pub fn prime_sieve(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit + 1];
    is[0] = false;
    if limit >= 1 {
        is[1] = false;
    }
    let mut p = 2;
    while p * p <= limit {
        if is[p] {
            let mut m = p * p;
            while m <= limit {
                is[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    is
}

/// Primes up to `floor(x)`, ascending. Negative or NaN `x` yields nothing.
pub fn primes_up_to(x: f64) -> Vec<u64> {
    if x.is_nan() || x < 2.0 {
        return Vec::new();
    }
    let limit = libm::floor(x) as usize;
    prime_sieve(limit).iter().enumerate().filter_map(|(i, &p)| p.then_some(i as u64)).collect()
}

/// `pi(x)`, the number of primes up to `floor(x)`.
pub fn prime_count(x: f64) -> usize {
    primes_up_to(x).len()
}
