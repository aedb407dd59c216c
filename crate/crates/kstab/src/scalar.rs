//! Exact scalar fields the library is generic over.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive};

/// An ordered field with exact arithmetic and integer rounding.
///
/// Fixed-width ratios are accepted for small inputs; conversions from
/// integers that do not fit panic.
pub trait Field: Clone + Debug + Display + Ord + Signed + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn from_frac(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }
    fn numer_bigint(&self) -> BigInt;
    fn denom_bigint(&self) -> BigInt;
    fn floor_bigint(&self) -> BigInt;
    fn ceil_bigint(&self) -> BigInt;

    fn is_integral(&self) -> bool {
        self.denom_bigint() == BigInt::from(1)
    }
}

impl Field for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn numer_bigint(&self) -> BigInt {
        self.numer().clone()
    }
    fn denom_bigint(&self) -> BigInt {
        self.denom().clone()
    }
    fn floor_bigint(&self) -> BigInt {
        self.floor().to_integer()
    }
    fn ceil_bigint(&self) -> BigInt {
        self.ceil().to_integer()
    }
}

macro_rules! fixed_ratio_field {
    ($t:ty, $to:ident) => {
        impl Field for Ratio<$t> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $t)
            }
            fn from_bigint(v: &BigInt) -> Self {
                Ratio::from_integer(v.$to().expect("integer out of range for fixed-width ratio"))
            }
            fn numer_bigint(&self) -> BigInt {
                BigInt::from(*self.numer())
            }
            fn denom_bigint(&self) -> BigInt {
                BigInt::from(*self.denom())
            }
            fn floor_bigint(&self) -> BigInt {
                BigInt::from(self.numer().div_floor(self.denom()))
            }
            fn ceil_bigint(&self) -> BigInt {
                BigInt::from(self.numer().div_ceil(self.denom()))
            }
        }
    };
}

fixed_ratio_field!(i64, to_i64);
fixed_ratio_field!(i128, to_i128);

pub(crate) fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn lcm_denoms<'a, F: Field + 'a>(vals: impl IntoIterator<Item = &'a F>) -> BigInt {
    vals.into_iter()
        .fold(BigInt::from(1), |acc, v| acc.lcm(&v.denom_bigint()))
}

pub(crate) fn factorial<F: Field>(n: usize) -> F {
    (1..=n as i64).fold(F::one(), |acc, i| acc * F::from_int(i))
}

