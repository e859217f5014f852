//! Construction and machine verification of F-sets of monic irreducible
//! polynomials over prime fields F_p.
//!
//! An F-set is a set S of monic irreducibles with the closure property:
//! whenever P is in S and P has constant term a, every monic irreducible
//! factor of P - a is also in S. Sets of linear polynomials are closed
//! trivially; the interesting question is whether an F-set can contain a
//! member of degree >= 2 and stay closed forever.
//!
//! For primes p = 2 or 5 (mod 9) this crate builds an explicit infinite
//! family with that property — two towers of trinomials f0(x^(3^l)) and
//! g0(x^(3^l)) over f0 = x^2+x+1 and g0 = x^2-x+1, plus up to three
//! linears — and verifies every claimed property of a finite truncation
//! by direct computation: irreducibility, the multiplicative orders, an
//! exact factorization identity for each member minus its constant term,
//! and closedness of the truncated set. A search harness probes the same
//! construction pattern from other starting polynomials.
//!
//! Module map:
//!
//! * [`field`] — prime-field arithmetic, primality, integer factoring;
//! * [`poly`] — dense polynomials: ring operations, parsing, display;
//! * [`factor`] — irreducibility testing, squarefree/distinct-degree/
//!   equal-degree factorization, multiplicative order;
//! * [`construct`] — the tower family, the substitution criterion, the
//!   per-level verification report;
//! * [`fset`] — closure computation, closedness checking, the bounded
//!   search probe;
//! * [`oracle`] — brute-force reference implementations used by tests;
//! * [`config`] — default budgets and degree caps.

pub mod config;
pub mod construct;
pub mod error;
pub mod factor;
pub mod field;
pub mod fset;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
