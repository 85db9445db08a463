//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by the arithmetic and geometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("invalid field parameters: {0}")]
    BadField(String),
    #[error("no q^{n}-th root exists for the given element")]
    NoRoot { n: i64 },
    #[error("enumeration of {size} elements exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("function has a pole at the evaluation point")]
    PoleAtPoint,
    #[error("divisor has nonzero degree {0}")]
    NonzeroDegree(i64),
    #[error("cannot factor a function with genuine tau-dependence and no retained factorization")]
    Unfactorable,
    #[error("field of {0} elements is too small to split the closed point")]
    FieldTooSmall(u64),
    #[error("function has a pole on the conductor")]
    PoleOnConductor,
    #[error("divisor support meets the conductor")]
    SupportMeetsConductor,
    #[error("alpha and beta must both be nonzero")]
    ZeroAlphaBeta,
    #[error("zero principal part")]
    ZeroAlpha,
    #[error("deg E = {deg_e} is outside the {want} regime")]
    WrongRegime { deg_e: i64, want: &'static str },
    #[error("deg E = {deg_e} lies in the undefined gap [-deg D, 2g-2] = [{lo}, -2]")]
    UndefinedRegime { deg_e: i64, lo: i64 },
    #[error("the residue functional vanishes identically (internal consistency failure)")]
    DegenerateFunctional,
    #[error("shtuka divisor has degree {0}, expected g - 1 = -1")]
    BadDegree(i64),
    #[error("shtuka relation E - E^(1) ~_D -xi^(1) + eta fails")]
    RelationFails,
    #[error("basepoint must have genuine tau-dependence")]
    NonGenericBasepoint,
    #[error("linear solve failed (violates the expected cohomology vanishing)")]
    SolveFailed,
    #[error("no admissible E = E1 - E2 decomposition: {0}")]
    NoDecomposition(String),
    #[error("degenerate shtuka")]
    Degenerate,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
