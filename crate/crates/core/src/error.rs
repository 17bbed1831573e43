//! Crate-wide error type.
//!
//! Most operations in this crate are total on their documented domains; the
//! variants below are the ways a caller can leave those domains (or the way
//! a falsified identity surfaces from `exact_div`).

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `exact_div` found a nonzero remainder: the divisor does not divide
    /// the dividend in the Laurent polynomial ring. When the division comes
    /// from an identity (q-Catalan numbers, division-free Lucas terms) this
    /// signals a falsified identity rather than a usage problem.
    NonExactDivision,
    /// A substitution raised a target to a negative power, but the target's
    /// coefficient is not a unit (±1), so the result would leave the ring.
    NonInvertibleTarget,
    /// Series inversion requires the constant term to be +1 or -1.
    NonUnitConstantTerm,
    /// A polynomial-to-series conversion or theta sum would contribute a
    /// term below q^0; truncated series carry only nonnegative exponents.
    NegativeExponent { exponent: i64 },
    /// A word enumeration was requested outside its hard bound.
    BoundExceeded { n: i64, bound: i64 },
    /// No closed-form table covers the requested (family, evaluation point)
    /// combination.
    UnsupportedSpec,
    /// The identity registry is closed; this id is not in it.
    UnknownIdentity(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonExactDivision => {
                write!(f, "polynomial division left a nonzero remainder")
            }
            Error::NonInvertibleTarget => write!(
                f,
                "negative power of a substitution target whose coefficient is not a unit"
            ),
            Error::NonUnitConstantTerm => {
                write!(f, "series inverse requires constant term +1 or -1")
            }
            Error::NegativeExponent { exponent } => {
                write!(f, "term with negative q-exponent {exponent} cannot enter a truncated series")
            }
            Error::BoundExceeded { n, bound } => {
                write!(f, "enumeration index {n} outside the supported range 0..={bound}")
            }
            Error::UnsupportedSpec => {
                write!(f, "no closed-form table for this family/evaluation combination")
            }
            Error::UnknownIdentity(id) => write!(f, "unknown identity id `{id}`"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
