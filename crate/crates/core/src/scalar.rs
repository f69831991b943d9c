//! Exact coefficient fields.
//!
//! Everything in this crate that does polynomial or linear algebra is generic
//! over [`Scalar`]. Only exact fields implement it: gcd-based normal forms
//! are meaningless over floating point, so `f32`/`f64` are deliberately left
//! out.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Signed;

/// An exact field usable as a coefficient type.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Signed
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Denominator in lowest terms, as a big integer.
    fn denom_big(&self) -> BigInt;

    /// Numerator in lowest terms, as a big integer.
    fn numer_big(&self) -> BigInt;

    fn is_integer_value(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn denom_big(&self) -> BigInt {
        self.denom().clone()
    }

    fn numer_big(&self) -> BigInt {
        self.numer().clone()
    }

    fn is_integer_value(&self) -> bool {
        self.is_integer()
    }
}

macro_rules! impl_small_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_i64(n: i64) -> Self {
                Ratio::from_integer(<$t>::try_from(n).expect("integer out of range"))
            }

            fn denom_big(&self) -> BigInt {
                BigInt::from(*self.denom())
            }

            fn numer_big(&self) -> BigInt {
                BigInt::from(*self.numer())
            }

            fn is_integer_value(&self) -> bool {
                self.is_integer()
            }
        }
    )*};
}

// Fixed-width rationals are exact until they overflow (which panics). Useful
// for small hand-sized inputs and for cross-checking the big-integer path.
impl_small_ratio!(i64, i128);
