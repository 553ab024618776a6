use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

use super::{Claim, LemmaCheckResult, Witness};
use crate::error::{Error, Result};
use crate::functions::{GapFunction, LengthFunction};

/// The two sufficient conditions for a feasible pair `(h, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum FeasibilityForm {
    /// `(k(n) - 3) ln h(n) ln ln h(n) >= 4 ln 2 ln n`.
    General,
    /// `(k(n) - 2) ln h(n) ln ln h(n) >= 4 ln 2 ln n`.
    Reduced,
}

impl FeasibilityForm {
    fn offset(self) -> f64 {
        match self {
            Self::General => 3.0,
            Self::Reduced => 2.0,
        }
    }

    fn claim(self) -> Claim {
        match self {
            Self::General => Claim::FeasibilityGeneral,
            Self::Reduced => Claim::FeasibilityReduced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeasibilityPoint {
    pub n: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Both sides at `n`. The left side is taken as 0 when `h(n) <= 1`.
pub fn feasibility_point(
    h: &GapFunction,
    k: &LengthFunction,
    n: u64,
    form: FeasibilityForm,
) -> FeasibilityPoint {
    let hn = h.eval(n);
    let lhs = if hn > 1.0 {
        let ln_h = libm::log(hn);
        (k.eval(n) - form.offset()) * ln_h * libm::log(ln_h)
    } else {
        0.0
    };
    let rhs = 4.0 * LN_2 * libm::log(n as f64);
    FeasibilityPoint { n, lhs, rhs, holds: lhs >= rhs }
}

/// Evaluates both forms at every `n` in `[lo, hi]`. Each result carries the
/// first failing `n` as its witness, with `lhs`/`rhs` taken there (or at `hi`
/// when the form holds throughout).
pub fn feasibility_check(
    h: &GapFunction,
    k: &LengthFunction,
    lo: u64,
    hi: u64,
) -> Result<Vec<LemmaCheckResult>> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidParameter("range must satisfy 1 <= lo <= hi"));
    }
    let mut out = vec![];
    for form in [FeasibilityForm::General, FeasibilityForm::Reduced] {
        let mut failures = 0u64;
        let mut first_fail = None;
        for n in lo..=hi {
            let pt = feasibility_point(h, k, n, form);
            if !pt.holds {
                failures += 1;
                first_fail.get_or_insert(pt);
            }
        }
        let shown = first_fail.unwrap_or_else(|| feasibility_point(h, k, hi, form));
        out.push(
            LemmaCheckResult::new(form.claim(), shown.lhs, shown.rhs, failures == 0)
                .param("lo", lo as f64)
                .param("hi", hi as f64)
                .detail("at", shown.n as f64)
                .detail("failures", failures as f64)
                .witness(first_fail.map(|p| Witness::Integer(p.n))),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plug_in_examples() {
        let h = GapFunction::Constant(100.0);
        let p = feasibility_point(&h, &LengthFunction::Constant(20.0), 1_000_000, FeasibilityForm::General);
        assert!((p.lhs - 119.6).abs() < 0.1, "{}", p.lhs);
        assert!((p.rhs - 38.3).abs() < 0.1);
        assert!(p.holds);
        let p = feasibility_point(&h, &LengthFunction::Constant(4.0), 1_000_000, FeasibilityForm::General);
        assert!((p.lhs - 7.03).abs() < 0.01);
        assert!(!p.holds);
    }

    #[test]
    fn unit_gap_always_fails() {
        let rs =
            feasibility_check(&GapFunction::Constant(1.0), &LengthFunction::Constant(50.0), 2, 500).unwrap();
        for r in rs {
            assert!(!r.holds);
            assert_eq!(r.lhs, 0.0);
            assert_eq!(r.witness, Some(Witness::Integer(2)));
            assert_eq!(r.get_detail("failures"), Some(499.0));
        }
    }

    #[test]
    fn reduced_form_is_weaker() {
        let h = GapFunction::Constant(50.0);
        let k = LengthFunction::Constant(8.0);
        let rs = feasibility_check(&h, &k, 1, 5000).unwrap();
        assert!(rs[1].get_detail("failures").unwrap() <= rs[0].get_detail("failures").unwrap());
    }
}
