//! Verifiers and calculators for the construction's quantitative claims.

use alloc::string::String;
use alloc::vec::Vec;

use crate::progression::GeomProgression;

mod feasibility;
mod gaps;
mod gp_check;
mod lemmas;
mod sums;

pub use feasibility::{feasibility_check, feasibility_point, FeasibilityForm, FeasibilityPoint};
pub use gaps::{gap_report, GapReport};
pub use gp_check::{verify_gp_free, VerifyMode};
pub use lemmas::{
    interval_miss_in_family, interval_miss_mc, lemma5_check, membership_bound_check, middle_preimages,
    middle_separation, MiddlePreimage,
};
pub use sums::{
    default_sum_grid, fit_sum_constant, lemma7_bound, lemma7_partition, reduced_inequality_holds, sum_s,
    sum_s_range, zeta, SumFit, SumGridPoint,
};

/// Which inequality a [`LemmaCheckResult`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Claim {
    /// Middle-term multiplicity of `n` is at most `d(n; k/2, k/2-1)`, via an injective map.
    MiddleMultiplicity,
    /// Estimated membership probability is at least `2^(-d(n; k/2, k/2-1))`.
    MembershipBound,
    /// Middle terms of minimal progressions beyond `x` are at least `x^(1-1/(k-1))` apart.
    MiddleSeparation,
    /// Probability that an interval is missed entirely is at most `exp(-S)`.
    IntervalMiss,
    /// Size of the power-divisible set and the per-element smoothing bound.
    PowerDivisiblePartition,
    /// `(k-3) ln h ln ln h >= 4 ln 2 ln n`.
    FeasibilityGeneral,
    /// `(k-2) ln h ln ln h >= 4 ln 2 ln n` for even-valued `k`.
    FeasibilityReduced,
    /// `S >= B C h^(1 - ln 2)` for a single fitted `B`.
    SumLowerBound,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Param {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Witness {
    Progression(GeomProgression),
    Integer(u64),
}

/// Outcome of evaluating one inequality `lhs <= rhs` or `lhs >= rhs`
/// (the direction is fixed per [`Claim`]).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaCheckResult {
    pub claim: Claim,
    pub params: Vec<Param>,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Secondary quantities worth reporting alongside the comparison.
    pub details: Vec<Param>,
}

impl LemmaCheckResult {
    pub(crate) fn new(claim: Claim, lhs: f64, rhs: f64, holds: bool) -> Self {
        Self { claim, params: Vec::new(), lhs, rhs, holds, witness: None, details: Vec::new() }
    }

    pub(crate) fn param(mut self, name: &str, value: f64) -> Self {
        self.params.push(Param { name: name.into(), value });
        self
    }

    pub(crate) fn detail(mut self, name: &str, value: f64) -> Self {
        self.details.push(Param { name: name.into(), value });
        self
    }

    pub(crate) fn witness(mut self, w: Option<Witness>) -> Self {
        self.witness = w;
        self
    }

    pub fn get_detail(&self, name: &str) -> Option<f64> {
        self.details.iter().find(|p| p.name == name).map(|p| p.value)
    }

    pub fn get_param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|p| p.name == name).map(|p| p.value)
    }
}
