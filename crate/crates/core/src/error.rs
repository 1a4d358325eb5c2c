//! Crate-wide error type. One enum keeps `Result` plumbing uniform across
//! the algebra, search and fusion layers.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Modulus is not an odd prime in the supported range.
    NotPrime(u64),
    /// Inversion of 0 in F_p.
    ZeroInverse,
    /// Polynomial or rational division by zero.
    DivisionByZeroPoly,
    /// Two operands live over different primes.
    PrimeMismatch,
    /// Two operators live in different gauges.
    GaugeMismatch,
    /// Right division by the zero operator.
    ZeroDivisor,
    /// Conjugation by the zero rational function.
    ZeroTwist,
    /// Operator is expected monic (leading coefficient 1).
    NotMonic,
    /// Operator order is outside the range a routine supports.
    OrderOutOfRange { order: usize, min: usize, max: usize },
    /// Truncation window too small for the kernel profile to stabilize.
    DegreeBoundTooSmall,
    /// Operator does not right-divide the central element.
    NotDormant,
    /// Indicial polynomial does not split over F_p.
    IndicialNotSplit,
    /// Indicial polynomial has a repeated root.
    MultipleRoots,
    /// Coefficients fall outside first-order pole growth at the point:
    /// the local expansion has no degree-n leading part.
    IrregularSingularity,
    /// No point of F_p avoids every coefficient pole.
    NoOrdinaryPoint,
    /// Complement of a full exponent set (n = p) requested.
    FullSet,
    /// An exponent value appears twice.
    DuplicateElements,
    /// Projected grid size exceeds the configured budget.
    BudgetExceeded { needed: u64, budget: u64 },
    /// Radii filter contradicts the search spec (arity, cardinality, symmetry).
    InconsistentRadiiFilter(String),
    /// Order bookkeeping of a B/C pair is off: p - 1 != 2(ell + m).
    ArityMismatch { p: u64, ell: usize, m: usize },
    /// Operator is not self-dual although the routine requires it.
    NotSelfDual,
    /// Degree table is missing a key over the chosen basis.
    IncompleteTable(String),
    /// Degree table carries two keys with the same unordered content.
    AsymmetricTable(String),
    /// Structure constants fail associativity.
    AssociativityFailure(String),
    /// Multiplication matrices could not be simultaneously split.
    DegenerateEigenproblem,
    /// A degree that must be a nonnegative integer is not, within tolerance.
    NonIntegralResult { raw: String },
    /// Two oracles that must agree disagreed; indicates an internal bug.
    OracleDisagreement(String),
    /// A JSON document violates the interchange format.
    InvalidDocument(String),
    /// A search or ring specification is malformed.
    InvalidSpec(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not an odd prime in [3, 2^31]"),
            Error::ZeroInverse => write!(f, "inverse of zero in F_p"),
            Error::DivisionByZeroPoly => write!(f, "polynomial division by zero"),
            Error::PrimeMismatch => write!(f, "operands have different primes"),
            Error::GaugeMismatch => write!(f, "operands have different gauges"),
            Error::ZeroDivisor => write!(f, "right division by the zero operator"),
            Error::ZeroTwist => write!(f, "twist by the zero rational function"),
            Error::NotMonic => write!(f, "operator is not monic"),
            Error::OrderOutOfRange { order, min, max } => {
                write!(f, "operator order {order} outside supported range [{min}, {max}]")
            }
            Error::DegreeBoundTooSmall => {
                write!(f, "degree bound too small: kernel profile not stabilized")
            }
            Error::NotDormant => write!(f, "operator is not dormant"),
            Error::IndicialNotSplit => write!(f, "indicial polynomial does not split over F_p"),
            Error::MultipleRoots => write!(f, "indicial polynomial has a repeated root"),
            Error::IrregularSingularity => {
                write!(f, "point is an irregular singularity of the operator")
            }
            Error::NoOrdinaryPoint => {
                write!(f, "no point of F_p avoids all coefficient poles")
            }
            Error::FullSet => write!(f, "complement of a full exponent set is empty"),
            Error::DuplicateElements => write!(f, "exponent set has a repeated element"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "search needs {needed} evaluations, budget is {budget}")
            }
            Error::InconsistentRadiiFilter(msg) => write!(f, "inconsistent radii filter: {msg}"),
            Error::ArityMismatch { p, ell, m } => {
                write!(f, "p - 1 = {} but 2(ell + m) = {}", p - 1, 2 * (ell + m))
            }
            Error::NotSelfDual => write!(f, "operator is not self-dual"),
            Error::IncompleteTable(key) => write!(f, "degree table is missing key {key}"),
            Error::AsymmetricTable(key) => {
                write!(f, "degree table has conflicting entries for unordered key {key}")
            }
            Error::AssociativityFailure(msg) => write!(f, "associativity fails: {msg}"),
            Error::DegenerateEigenproblem => {
                write!(f, "multiplication matrices could not be split into characters")
            }
            Error::NonIntegralResult { raw } => {
                write!(f, "degree {raw} does not round to a nonnegative integer")
            }
            Error::OracleDisagreement(msg) => write!(f, "oracle disagreement: {msg}"),
            Error::InvalidDocument(msg) => write!(f, "invalid document: {msg}"),
            Error::InvalidSpec(msg) => write!(f, "invalid spec: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
