//! Coefficient fields.
//!
//! Everything downstream of the integer lattice computations (cohomology,
//! Novikov series, normal forms) is generic over a [`Scalar`]: an exact
//! field with characteristic zero. Floating point types are deliberately
//! not implemented; every certificate in this crate is a test for exact
//! vanishing.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive};

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Embeds an arbitrary-precision integer.
    ///
    /// Fixed-width rationals panic when `n` does not fit.
    fn from_bigint(n: &BigInt) -> Self;

    /// `Some(n)` when the value is an integer.
    fn to_bigint(&self) -> Option<BigInt>;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

macro_rules! fixed_ratio {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_i64(n: i64) -> Self {
                Ratio::from_integer(<$t>::try_from(n).expect("integer overflows scalar type"))
            }

            fn from_bigint(n: &BigInt) -> Self {
                let v = n.to_i128().and_then(|v| <$t>::try_from(v).ok());
                Ratio::from_integer(v.expect("integer overflows scalar type"))
            }

            fn to_bigint(&self) -> Option<BigInt> {
                self.is_integer().then(|| BigInt::from(self.to_integer()))
            }
        }
    };
}

fixed_ratio!(i64);
fixed_ratio!(i128);
