//! Scalar traits the algebra code is generic over.
//!
//! Everything below the bundle layer only needs exact field arithmetic
//! ([`Field`]); the bundle constructions additionally need roots of unity
//! ([`RootField`]). [`BigRational`] implements the former, [`CycNum`]
//! implements both.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::CycNum;

/// An exact field: equality is decidable and every nonzero element is invertible.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

/// A field containing the roots of unity the bundle constructions multiply by.
pub trait RootField: Field {
    /// `ζ_n^k` with `ζ_n = e^{2πi/n}`.
    fn root_of_unity(n: u32, k: i64) -> Self;
}

impl Field for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for CycNum {
    fn from_ratio(num: i64, den: i64) -> Self {
        CycNum::from_rational(BigRational::from_ratio(num, den))
    }

    fn inverse(&self) -> Option<Self> {
        self.checked_inv()
    }
}

impl RootField for CycNum {
    fn root_of_unity(n: u32, k: i64) -> Self {
        CycNum::root_of_unity(n, k).expect("conductor must be positive")
    }
}
