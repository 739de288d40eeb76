//! Integer scalars the algebras are built over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer type usable as the coordinate ring of the chains and
/// as the numerator/denominator type of the piecewise-linear functions.
///
/// Implemented for every type satisfying the bounds, in particular `i64`,
/// `i128` and [`num_bigint::BigInt`]. Machine integers overflow silently in
/// release builds, so prefer `BigInt` unless the values are known to be small.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_u64_lossless(v: u64) -> Self {
        Self::from_u64(v).expect("scalar cannot represent index")
    }

    fn from_i64_lossless(v: i64) -> Self {
        Self::from_i64(v).expect("scalar cannot represent value")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn ratio<S: Scalar>(num: i64, den: i64) -> Ratio<S> {
    Ratio::new(S::from_i64_lossless(num), S::from_i64_lossless(den))
}

pub(crate) fn int_ratio<S: Scalar>(v: S) -> Ratio<S> {
    Ratio::from_integer(v)
}

/// Prints a rational the way the L-notation expects: `3/4`, `1`, `0`.
pub(crate) fn fmt_ratio<S: Scalar>(q: &Ratio<S>) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
