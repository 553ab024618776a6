//! Randomized construction of integer sequences free of long geometric
//! progressions, with small gaps, plus brute-force checkers for every bound
//! the construction relies on.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! * [`arith`]: factorization, power divisors, `d(n; i, j)`.
//! * [`progression`], [`enumerate`]: canonical progressions and the families
//!   `G_k` and `G_k*`.
//! * [`process`]: the random middle-term deletion process.
//! * [`analysis`]: gap statistics and inequality checks.
//! * [`baselines`]: power-free sieves.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod arith;
pub mod baselines;
pub mod enumerate;
pub mod error;
pub mod functions;
pub mod mix;
pub mod process;
pub mod progression;
pub mod window;

pub use error::{Error, Result};
pub use functions::{GapFunction, LengthFunction, StepTable};
pub use process::{run_process, ExclusionRecord, ProcessConfig};
pub use progression::GeomProgression;
pub use window::SequenceWindow;
