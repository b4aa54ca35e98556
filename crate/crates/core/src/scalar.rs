use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer type backing phases and lattices.
///
/// Anything that behaves like a signed integer ring with exact division works;
/// `i64`, `i128` and `BigInt` are the intended choices.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Rationals over a scalar.
pub type Rational<I> = Ratio<I>;

/// The default scalar: arbitrary precision, so no computation can overflow.
pub type Exact = BigInt;

pub(crate) fn int<I: Scalar>(v: i64) -> I {
    I::from_i64(v).expect("integer out of range for scalar type")
}

pub(crate) fn rat<I: Scalar>(n: i64, d: i64) -> Rational<I> {
    Ratio::new(int(n), int(d))
}

/// Least common multiple of the denominators of a list of rationals.
pub(crate) fn common_denominator<'a, I: Scalar>(
    values: impl IntoIterator<Item = &'a Rational<I>>,
) -> I {
    values
        .into_iter()
        .fold(I::one(), |acc, q| acc.lcm(q.denom()))
}
