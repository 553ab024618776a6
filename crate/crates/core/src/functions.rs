//! Length functions `k` and gap functions `h`: nondecreasing maps from
//! positive integers to the reals.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Step function given by `(threshold, value)` rows: the value at `n` is
/// the value of the last row whose threshold is `<= n`, or the first row's
/// value below the first threshold.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepTable {
    rows: Vec<(u64, f64)>,
}

impl StepTable {
    /// Thresholds must be strictly increasing and values nondecreasing.
    pub fn new(rows: Vec<(u64, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidTable("no rows"));
        }
        for w in rows.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidTable("thresholds must be strictly increasing"));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::InvalidTable("values must be nondecreasing"));
            }
        }
        if rows.iter().any(|r| !r.1.is_finite()) {
            return Err(Error::InvalidTable("values must be finite"));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[(u64, f64)] {
        &self.rows
    }

    pub fn eval(&self, n: u64) -> f64 {
        let idx = self.rows.partition_point(|&(t, _)| t <= n);
        self.rows[idx.saturating_sub(1)].1
    }

    fn min_value(&self) -> f64 {
        self.rows[0].1
    }

    fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { rows: self.rows.iter().map(|&(t, v)| (t, f(v))).collect() }
    }
}

/// The length function `k`: progressions of length at least `k(t)` with
/// largest term `t` are forbidden.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LengthFunction {
    Constant(f64),
    /// `max(3, eps * ln n)`.
    EpsLog(f64),
    Table(StepTable),
    /// Rounds the inner function up to an integer, then down to an even
    /// integer, then clamps below at 6.
    EvenRounded(Box<LengthFunction>),
}

/// `max(6, largest even integer <= ceil(v))`.
pub fn round_to_even_at_least_six(v: f64) -> f64 {
    let up = libm::ceil(v);
    let even = 2.0 * libm::floor(up / 2.0);
    if even < 6.0 {
        6.0
    } else {
        even
    }
}

fn is_even_at_least_six(v: f64) -> bool {
    v >= 6.0 && v == libm::floor(v) && libm::fmod(v, 2.0) == 0.0
}

impl LengthFunction {
    pub fn constant(v: f64) -> Result<Self> {
        if !v.is_finite() || v < 3.0 {
            return Err(Error::InvalidParameter("constant length must be >= 3"));
        }
        Ok(Self::Constant(v))
    }

    pub fn eps_log(eps: f64) -> Result<Self> {
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::InvalidParameter("epsilon must be positive"));
        }
        Ok(Self::EpsLog(eps))
    }

    pub fn table(table: StepTable) -> Result<Self> {
        if table.min_value() < 3.0 {
            return Err(Error::InvalidTable("length values must be >= 3"));
        }
        Ok(Self::Table(table))
    }

    pub fn eval(&self, n: u64) -> f64 {
        match self {
            Self::Constant(v) => *v,
            Self::EpsLog(eps) => {
                let v = eps * libm::log(n.max(1) as f64);
                if v > 3.0 {
                    v
                } else {
                    3.0
                }
            }
            Self::Table(t) => t.eval(n),
            Self::EvenRounded(inner) => round_to_even_at_least_six(inner.eval(n)),
        }
    }

    /// A lower bound on `k` over all positive integers.
    pub fn min_value(&self) -> f64 {
        self.eval(1)
    }

    /// True when every value is an even integer `>= 6`.
    pub fn is_process_ready(&self) -> bool {
        match self {
            Self::Constant(v) => is_even_at_least_six(*v),
            Self::EpsLog(_) => false,
            Self::Table(t) => t.rows().iter().all(|&(_, v)| is_even_at_least_six(v)),
            Self::EvenRounded(_) => true,
        }
    }

    /// Integer value at `n` for a process-ready function.
    pub fn even_value(&self, n: u64) -> Result<u32> {
        if !self.is_process_ready() {
            return Err(Error::NotProcessReady);
        }
        Ok(self.eval(n) as u32)
    }

    /// Pointwise even rounding; constant and tabulated inputs stay in closed form.
    pub fn normalize(&self) -> Self {
        match self {
            Self::Constant(v) => Self::Constant(round_to_even_at_least_six(*v)),
            Self::Table(t) => Self::Table(t.map_values(round_to_even_at_least_six)),
            Self::EvenRounded(_) => self.clone(),
            other => Self::EvenRounded(Box::new(other.clone())),
        }
    }
}

/// The gap function `h`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GapFunction {
    Constant(f64),
    /// `N^alpha` with `0 < alpha < 1`.
    Power(f64),
    /// `exp(C ln N / ln ln N)`, frozen at its `N = 16` value below 16.
    ExpLogRatio(f64),
    Table(StepTable),
}

impl GapFunction {
    pub fn constant(v: f64) -> Result<Self> {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidParameter("constant gap must be positive"));
        }
        Ok(Self::Constant(v))
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter("gap exponent must lie in (0, 1)"));
        }
        Ok(Self::Power(alpha))
    }

    pub fn exp_log_ratio(c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidParameter("gap constant must be positive"));
        }
        Ok(Self::ExpLogRatio(c))
    }

    pub fn table(table: StepTable) -> Result<Self> {
        if table.min_value() <= 0.0 {
            return Err(Error::InvalidTable("gap values must be positive"));
        }
        Ok(Self::Table(table))
    }

    pub fn eval(&self, n: u64) -> f64 {
        match self {
            Self::Constant(v) => *v,
            Self::Power(alpha) => libm::pow(n.max(1) as f64, *alpha),
            Self::ExpLogRatio(c) => {
                let ln = libm::log(n.max(16) as f64);
                libm::exp(c * ln / libm::log(ln))
            }
            Self::Table(t) => t.eval(n),
        }
    }
}
