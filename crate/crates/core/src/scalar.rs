//! Scalar types the q-combinatorics can be evaluated over.
//!
//! Every formula in [`crate::qcalc`] is a polynomial (or, for Chu-Vandermonde
//! and the literal Landsberg count, a rational function) in its parameters,
//! so it can be evaluated in any commutative ring that supports the handful of
//! exact divisions the identities need. [`crate::ExactInt`] is the default;
//! [`crate::Rational`] is required for the identities involving `q^{-n}`;
//! machine integers and floats are accepted for quick experiments.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, Zero};

pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;

    /// `self / rhs` if the quotient exists in this type, `None` otherwise.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

macro_rules! impl_scalar_int {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn exact_div(&self, rhs: &Self) -> Option<Self> {
                if *rhs == 0 || self % rhs != 0 {
                    return None;
                }
                Some(self / rhs)
            }
        }
    )*};
}

impl_scalar_int!(i64, i128);

macro_rules! impl_scalar_float {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn exact_div(&self, rhs: &Self) -> Option<Self> {
                if *rhs == 0.0 {
                    None
                } else {
                    Some(self / rhs)
                }
            }
        }
    )*};
}

impl_scalar_float!(f32, f64);

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (quot, rem) = self.div_rem(rhs);
        rem.is_zero().then_some(quot)
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Scalar>(base: &T, exp: usize) -> T {
    num_traits::pow(base.clone(), exp)
}

/// `(-1)^exp`.
pub fn sign<T: Scalar>(exp: usize) -> T {
    if exp % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `C(i, 2)`, with `C(0, 2) = C(1, 2) = 0`.
pub fn binom2(i: usize) -> usize {
    i * i.saturating_sub(1) / 2
}
