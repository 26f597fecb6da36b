use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{NumRef, Signed};

/// Coefficient field for every algebra in the crate.
///
/// All structure constants are integers, so a scalar only needs to embed
/// `i64` and support field arithmetic. The crate never compares scalars up
/// to a tolerance, so only exact types implement this trait.
pub trait Scalar:
    NumRef + Signed + Clone + Default + Debug + Display + FromStr + PartialEq + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
}

impl Scalar for Ratio<BigInt> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

/// Binomial coefficient `C(n, k)` as a scalar.
pub(crate) fn binomial<S: Scalar>(n: u32, k: u32) -> S {
    let mut acc = S::one();
    for t in 0..k {
        acc = acc * S::from_i64((n - t) as i64) / S::from_i64((t + 1) as i64);
    }
    acc
}
