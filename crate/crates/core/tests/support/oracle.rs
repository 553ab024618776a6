//! Brute-force references, deliberately written without any of the library's
//! enumeration or counting shortcuts.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// `#{(a, b, c) : a b^i c^j = n}` by scanning `b` and `c` directly.
pub fn naive_d(n: u64, i: u32, j: u32) -> u64 {
    let mut count = 0;
    let mut b = 1u64;
    while let Some(bi) = b.checked_pow(i).filter(|&v| v <= n) {
        if n.is_multiple_of(bi) {
            let rest = n / bi;
            let mut c = 1u64;
            while let Some(cj) = c.checked_pow(j).filter(|&v| v <= rest) {
                if rest.is_multiple_of(cj) {
                    count += 1;
                }
                c += 1;
            }
        }
        b += 1;
    }
    count
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Term sequences of every progression with ratio > 1, integer terms, largest
/// term `<= max` and length `>= k(largest)`, found by extending from the first
/// term one ratio step at a time and testing integrality.
pub fn naive_gk(max: u64, k: impl Fn(u64) -> f64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    for s in 1..=max {
        // three integer terms need b^2 | s
        let mut b = 1u64;
        while b * b <= s {
            if s % (b * b) == 0 {
                let mut c = b + 1;
                while s / (b * b) * c * c <= max {
                    if gcd(b, c) == 1 {
                        let mut terms = vec![s];
                        loop {
                            let t = *terms.last().unwrap();
                            if t % b != 0 {
                                break;
                            }
                            let next = t / b * c;
                            if next > max {
                                break;
                            }
                            terms.push(next);
                            let len = terms.len();
                            if len >= 3 && len as f64 >= k(next) {
                                out.insert(terms.clone());
                            }
                        }
                    }
                    c += 1;
                }
            }
            b += 1;
        }
    }
    out
}

/// Drops every member that strictly contains another member, comparing all pairs.
pub fn naive_minimal(family: &BTreeSet<Vec<u64>>) -> BTreeSet<Vec<u64>> {
    let sets: Vec<(Vec<u64>, BTreeSet<u64>)> =
        family.iter().map(|t| (t.clone(), t.iter().copied().collect())).collect();
    sets.iter()
        .filter(|(t, s)| !sets.iter().any(|(u, r)| u != t && r.len() < s.len() && r.is_subset(s)))
        .map(|(t, _)| t.clone())
        .collect()
}

pub fn is_geometric(seq: &[u64]) -> bool {
    seq.len() >= 3
        && seq.windows(2).all(|w| w[0] < w[1])
        && seq.windows(3).all(|w| u128::from(w[0]) * u128::from(w[2]) == u128::from(w[1]) * u128::from(w[1]))
}

/// Every subset of `terms` of size >= 3 that is geometric, except `terms` itself.
pub fn naive_sub_progressions(terms: &[u64]) -> BTreeSet<Vec<u64>> {
    let n = terms.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 3 || mask == (1 << n) - 1 {
            continue;
        }
        let sub: Vec<u64> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| terms[i]).collect();
        if is_geometric(&sub) {
            out.insert(sub);
        }
    }
    out
}
