//! Exact integer and rational arithmetic used by the bound formulas.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `C(a, b)` with `C(a, b) = 0` whenever `a < b`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    // acc * (a - b + i) is divisible by i after each step
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

/// Signed variant of [`binomial`], convenient inside formulas with subtraction.
pub fn binom(a: u64, b: u64) -> BigInt {
    BigInt::from(binomial(a, b))
}

/// An exact rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rational {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Rational {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Largest integer not above the value (rounds toward negative infinity).
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Floor as a machine integer; panics only for values far outside any bound this crate produces.
    pub fn floor_i64(&self) -> i64 {
        i64::try_from(self.floor()).expect("bound floor fits in i64")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rational::new(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, k| acc * k)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(30, 0), BigUint::one());
        assert_eq!(binomial(30, 3), BigUint::from(4060u32));
        assert_eq!(binomial(30, 3), factorial(30) / (factorial(3) * factorial(27)));
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn pascal_rule_up_to_forty() {
        for a in 1..=40u64 {
            for b in 1..=a {
                assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b), "C({a},{b})");
            }
        }
    }

    #[test]
    fn binomial_is_exact_beyond_u64() {
        // C(100, 50) overflows u64
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn rational_normalizes() {
        let r = Rational::new(3871, 336) + Rational::from(2);
        assert_eq!(r.to_string(), "649/48");
        assert_eq!(r.floor_i64(), 13);
        assert_eq!(Rational::new(0, 5).to_string(), "0/1");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::new(-7, 2).floor_i64(), -4);
    }

    proptest! {
        #[test]
        fn rational_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = Rational::new(n, d);
            let back: Rational = r.to_string().parse().unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
