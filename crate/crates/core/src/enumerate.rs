//! Enumeration of the forbidden family `G_k` (progressions whose length is at
//! least `k` of their largest term) and of its minimal members `G_k*`.

use alloc::vec::Vec;

use crate::arith::gcd;
use crate::functions::LengthFunction;
use crate::progression::GeomProgression;

/// Every canonical progression with largest term `<= max` and length at
/// least `k(largest term)`, sorted by `(min term, max term, len, a, b, c)`.
pub fn enumerate_gk(max: u64, k: &LengthFunction) -> Vec<GeomProgression> {
    let min_len = min_length(k);
    let mut out = Vec::new();
    let mut c = 2u64;
    while c.checked_pow(min_len - 1).is_some_and(|v| v <= max) {
        for b in 1..c {
            if gcd(b, c) != 1 {
                continue;
            }
            let mut len = min_len;
            while let Some(top) = c.checked_pow(len - 1).filter(|&v| v <= max) {
                for a in 1..=max / top {
                    if f64::from(len) < k.eval(a * top) {
                        // k is nondecreasing in the largest term
                        break;
                    }
                    out.push(GeomProgression::from_canonical(a, b, c, len));
                }
                len += 1;
            }
        }
        c += 1;
    }
    sort_canonical(&mut out);
    out
}

/// The members of [`enumerate_gk`] that contain no other member.
pub fn enumerate_gk_star(max: u64, k: &LengthFunction) -> Vec<GeomProgression> {
    enumerate_gk(max, k).into_iter().filter(|p| p.is_minimal(k).expect("terms bounded by max")).collect()
}

fn min_length(k: &LengthFunction) -> u32 {
    let v = libm::ceil(k.min_value());
    if v > 3.0 {
        v as u32
    } else {
        3
    }
}

pub(crate) fn sort_canonical(ps: &mut [GeomProgression]) {
    ps.sort_by_cached_key(|p| p.canonical_key().expect("terms bounded by max"));
}
