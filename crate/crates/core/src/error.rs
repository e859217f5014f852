//! Crate-wide error type.
//!
//! Only data-dependent failures are represented here (bad user input,
//! exhausted budgets, failed gates). Violations of documented call
//! preconditions — mixing elements of different fields, dividing by the
//! zero polynomial, `gcd(0, 0)`, a constant modulus — are programming
//! errors and panic instead.

use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The modulus handed to `FieldSpec::new` is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Zero has no multiplicative inverse.
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    /// Integer factorization ran out of budget; the remaining composite
    /// cofactor is reported so the caller can decide what to do.
    #[error("integer factorization budget exhausted (composite cofactor has {} bits)", cofactor.bits())]
    FactorizationTimeout { cofactor: BigUint },

    /// Polynomial text could not be parsed; `position` is a byte offset
    /// into the input.
    #[error("parse error at byte {position}: {message}")]
    ParseError { position: usize, message: String },

    /// The operation needs a polynomial of degree at least 1.
    #[error("operation requires a polynomial of degree >= 1")]
    ConstantInput,

    /// Multiplicative order is only defined for polynomials with nonzero
    /// constant term.
    #[error("polynomial order requires a nonzero constant term")]
    ZeroConstantTerm,

    /// The operation needs an irreducible polynomial.
    #[error("polynomial is not irreducible")]
    NotIrreducible,

    /// Computing the order would require factoring an integer beyond the
    /// configured budget.
    #[error("order computation exceeded its budget: {0}")]
    OrderBudgetExceeded(String),

    /// The residue gate rejected the prime: tower construction requires
    /// p = 2 or 5 (mod 9).
    #[error("residue gate failed: {p} = {residue9} (mod 9), need 2 or 5")]
    GateFailed { p: u64, residue9: u64 },

    /// A constructed or discovered polynomial would exceed the degree cap.
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    /// A closure seed (or probe base) failed the irreducibility check.
    #[error("seed polynomial {poly} is not irreducible")]
    SeedNotIrreducible { poly: String },

    /// A closure seed (or probe base) is not monic.
    #[error("seed polynomial {poly} is not monic")]
    SeedNotMonic { poly: String },

    /// The tower family failed its own closedness scan. This cannot happen
    /// unless the implementation is wrong, so it aborts loudly instead of
    /// being reported as an ordinary verdict.
    #[error("closedness failure: {0}")]
    ClosednessFailure(String),
}
