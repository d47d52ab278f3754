//! Exact scalar abstraction.
//!
//! Every formula in the crate is written against [`Scalar`], which is
//! implemented for `num_rational::Ratio<T>` over any signed integer type.
//! The crate root exposes [`crate::Rational`] (arbitrary precision, the
//! default everywhere) and [`crate::Rational64`] (machine-word backed,
//! panics on overflow in debug builds). There is deliberately no
//! floating-point implementation.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field element with integer rounding.
pub trait Scalar:
    Clone + Ord + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
    /// Embeds an integer.
    fn from_int(n: i64) -> Self;

    /// Builds `num / den`. Panics if `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self;

    /// Embeds an arbitrary-precision integer. Returns `None` when the backing
    /// integer type cannot hold it.
    fn from_bigint(n: &BigInt) -> Option<Self>;

    /// Largest integer `<= self`.
    fn floor_int(&self) -> BigInt;

    /// Smallest integer `>= self`.
    fn ceil_int(&self) -> BigInt;

    /// `Some(n)` iff `self` is the integer `n`.
    fn as_integer(&self) -> Option<BigInt>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + FromPrimitive
        + ToBigInt
        + Debug
        + Display
        + Send
        + Sync
        + FromStr
        + 'static,
    Ratio<T>: FromStr,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits the backing type"))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Ratio::new(
            T::from_i64(num).expect("numerator fits the backing type"),
            T::from_i64(den).expect("denominator fits the backing type"),
        )
    }

    fn from_bigint(n: &BigInt) -> Option<Self> {
        // Round-trip through the decimal representation; avoids requiring a
        // FromBigInt bound that the primitive integers do not share with BigInt.
        n.to_string().parse::<T>().ok().map(Ratio::from_integer)
    }

    fn floor_int(&self) -> BigInt {
        self.floor()
            .to_integer()
            .to_bigint()
            .expect("integer converts to BigInt")
    }

    fn ceil_int(&self) -> BigInt {
        self.ceil()
            .to_integer()
            .to_bigint()
            .expect("integer converts to BigInt")
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer()
            .then(|| self.to_integer().to_bigint().expect("integer converts to BigInt"))
    }
}

/// Serde adapter rendering a scalar as its exact `"p/q"` (or `"p"`) string.
pub mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S, Q>(value: &Q, serializer: S) -> Result<S::Ok, S::Error>
    where
        S: Serializer,
        Q: Display,
    {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D, Q>(deserializer: D) -> Result<Q, D::Error>
    where
        D: Deserializer<'de>,
        Q: FromStr,
    {
        let raw = String::deserialize(deserializer)?;
        raw.trim()
            .parse()
            .map_err(|_| D::Error::custom(format!("invalid rational {raw:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, Rational64};
    use proptest::prelude::*;

    #[test]
    fn renders_integers_without_denominator() {
        assert_eq!(Rational::from_frac(4, 2).to_string(), "2");
        assert_eq!(Rational::from_frac(-2, 6).to_string(), "-1/3");
        assert_eq!(Rational64::from_frac(52, 15).to_string(), "52/15");
    }

    #[test]
    fn rounding_at_integer_boundaries() {
        let x = Rational::from_int(7);
        assert_eq!(x.floor_int(), BigInt::from(7));
        assert_eq!(x.ceil_int(), BigInt::from(7));
        let y = Rational::from_frac(-5, 3);
        assert_eq!(y.floor_int(), BigInt::from(-2));
        assert_eq!(y.ceil_int(), BigInt::from(-1));
        assert_eq!(y.as_integer(), None);
        assert_eq!(x.as_integer(), Some(BigInt::from(7)));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn from_bigint_respects_backing_width() {
        let big = BigInt::from(i64::MAX) * 4;
        assert!(Rational64::from_bigint(&big).is_none());
        assert_eq!(Rational::from_bigint(&big).unwrap().to_string(), big.to_string());
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
            let x = Rational::from_frac(num, den);
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert!(x.denom() > &BigInt::from(0));
            prop_assert_eq!(num_integer::Integer::gcd(x.numer(), x.denom()), BigInt::from(1));
        }

        #[test]
        fn floor_ceil_bracket(num in -10_000i64..10_000, den in 1i64..500) {
            let x = Rational64::from_frac(num, den);
            let f = Rational64::from_bigint(&x.floor_int()).unwrap();
            let c = Rational64::from_bigint(&x.ceil_int()).unwrap();
            prop_assert!(f <= x && x <= c);
            prop_assert!(c.clone() - f.clone() <= Rational64::from_int(1));
        }
    }
}
