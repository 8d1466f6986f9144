//! Explicit effective bounds for the superelliptic equation `b·y^m = f(x)` over
//! the S-integers of a number field, with the exact arithmetic they consume:
//! heights, places, S-norms and prime-ideal valuations, plus a brute-force
//! solver over `Q` that checks the bounds against real solutions.
//!
//! Module map:
//!
//! * [`arith`]: big rationals, factorization, perfect powers, `lcm(1..n)`.
//! * [`poly`]: polynomials over `Q`, resultants, discriminants, irreducibility,
//!   certified complex roots.
//! * [`field`]: number fields `Q[X]/(g)`, elements, norms, prime ideals, `ord_P`.
//! * [`places`]: normalized absolute values, Weil heights, `ĥ`, S-norms, `Q_S`, `P_S`.
//! * [`bounds`]: every explicit bound evaluated in the natural-log domain.
//! * [`solver`]: S-integer enumeration and exhaustive search over `Q`.
//! * [`cli`]: configuration, dispatch, JSON reports.

pub mod arith;
pub mod bounds;
pub mod cli;
mod error;
pub mod field;
pub mod places;
pub mod poly;
pub mod selftest;
pub mod solver;

pub use arith::Rational;
pub use error::{Error, Result};
