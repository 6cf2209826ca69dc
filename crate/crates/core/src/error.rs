//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. The variant name doubles as a
//! stable machine-readable identifier (see [`Error::name`]); the CLI prints it
//! as the first token of its single-line stderr diagnostics.

use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested field modulus is not a prime (or is < 2).
    #[error("modulus {q} is not prime")]
    CompositeModulus { q: u32 },

    /// Division or inversion by zero in a finite field.
    #[error("division by zero")]
    DivisionByZero,

    /// A vector length does not match the expected length.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A crossover probability lies outside (0, 1 - 1/q).
    #[error("crossover probability {rho} outside (0, 1 - 1/{q})")]
    InvalidCrossover { rho: f64, q: u32 },

    /// The code has dimension zero (or the construction would force it).
    #[error("code has dimension zero")]
    ZeroCode,

    /// An enumeration would exceed the configured budget.
    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    /// A distance parameter lies outside its admissible range.
    #[error("distance {d} outside admissible range [{min}, {max}]")]
    InvalidDistance { d: u64, min: u64, max: u64 },

    /// A dimension parameter lies outside its admissible range.
    #[error("dimension {k} outside admissible range [{min}, {max}]")]
    InvalidDimension { k: usize, min: usize, max: usize },

    /// A MacWilliams transform produced a non-integral or negative count.
    #[error("transform produced a non-integral or negative coefficient")]
    NonIntegralTransform,

    /// A parameter violates a precondition not covered by a dedicated variant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A Reed-Solomon length exceeds the field size.
    #[error("length {n} exceeds field size {q}")]
    LengthExceedsField { n: usize, q: u32 },

    /// The syndrome decoder has no table entry for the observed syndrome.
    #[error("uncorrectable syndrome")]
    DecodeFailure,
}

impl Error {
    /// Stable identifier for machine consumption (the variant name).
    pub fn name(&self) -> &'static str {
        match self {
            Error::CompositeModulus { .. } => "CompositeModulus",
            Error::DivisionByZero => "DivisionByZero",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InvalidCrossover { .. } => "InvalidCrossover",
            Error::ZeroCode => "ZeroCode",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidDistance { .. } => "InvalidDistance",
            Error::InvalidDimension { .. } => "InvalidDimension",
            Error::NonIntegralTransform => "NonIntegralTransform",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::LengthExceedsField { .. } => "LengthExceedsField",
            Error::DecodeFailure => "DecodeFailure",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_variants() {
        assert_eq!(Error::DivisionByZero.name(), "DivisionByZero");
        assert_eq!(Error::CompositeModulus { q: 6 }.name(), "CompositeModulus");
        assert_eq!(
            Error::BudgetExceeded { needed: 1 << 30, budget: 1 << 24 }.name(),
            "BudgetExceeded"
        );
    }

    #[test]
    fn display_is_single_line() {
        let errs = [
            Error::CompositeModulus { q: 6 },
            Error::LengthMismatch { expected: 8, got: 7 },
            Error::InvalidCrossover { rho: 0.5, q: 2 },
            Error::InvalidParameter("n1 must be at least 5".into()),
        ];
        for e in errs {
            assert!(!e.to_string().contains('\n'));
        }
    }
}
