use thiserror::Error;

/// Failures reported by the core routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Error {
    /// A progression term, power or product does not fit in `u64`.
    #[error("integer overflow")]
    Overflow,
    /// Ratio `c/b` equal to one.
    #[error("ratio must differ from 1")]
    RatioTrivial,
    /// Some parameter was zero where a positive integer is required.
    #[error("parameter must be positive")]
    NonPositive,
    /// Progressions need at least three terms.
    #[error("progression length must be at least 3")]
    TooShort,
    /// Middle terms only exist for even lengths.
    #[error("progression length is odd")]
    OddLength,
    /// The process needs an even-integer-valued length function bounded below by 6.
    #[error("length function is not process-ready (even integers >= 6)")]
    NotProcessReady,
    /// Length or gap table that is empty, unsorted, or decreasing.
    #[error("invalid table: {0}")]
    InvalidTable(&'static str),
    /// A real-valued parameter is out of its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    /// The window does not reach far enough for the requested check.
    #[error("window too small: need N >= {required}")]
    WindowTooSmall { required: u64 },
    /// The window has no members.
    #[error("window is empty")]
    EmptyWindow,
    /// The smoothing bound on `d` degenerates when `ln h <= 1`.
    #[error("gap value must exceed e")]
    RequiresHAboveE,
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Variant name, stable for use in diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Overflow => "Overflow",
            Error::RatioTrivial => "RatioTrivial",
            Error::NonPositive => "NonPositive",
            Error::TooShort => "TooShort",
            Error::OddLength => "OddLength",
            Error::NotProcessReady => "NotProcessReady",
            Error::InvalidTable(_) => "InvalidTable",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::WindowTooSmall { .. } => "WindowTooSmall",
            Error::EmptyWindow => "EmptyWindow",
            Error::RequiresHAboveE => "RequiresHAboveE",
        }
    }
}
