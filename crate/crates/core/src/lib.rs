//! Exact computation of the dimension of twisted Jacquet modules of cuspidal
//! representations of `GL(2n, F_q)`, with every supporting q-identity and
//! counting formula cross-checked against exhaustive enumeration.
//!
//! The q-combinatorics in [`qcalc`], [`cuspchar`] and [`jacquet`] are generic
//! over [`Scalar`]; [`ExactInt`] and [`Rational`] are the types everything is
//! verified in.

pub mod acceptance;
pub mod cuspchar;
mod error;
pub mod ffmat;
pub mod jacquet;
pub mod qcalc;
pub mod report;
mod scalar;

pub use error::{Error, Result};
pub use scalar::{binom2, pow, sign, Scalar};

/// Arbitrary-precision signed integer.
pub type ExactInt = num_bigint::BigInt;

/// Canonical arbitrary-precision rational (`gcd(num, den) = 1`, `den > 0`).
pub type Rational = num_rational::BigRational;
