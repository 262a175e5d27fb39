//! Exact rationals and extended endpoints.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
/// Serializes as the string `"num/den"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den == BigInt::from(0) {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn half(&self) -> Self {
        Rational(&self.0 / BigInt::from(2))
    }

    pub fn abs(&self) -> Self {
        if self.0 < BigRational::from_integer(0.into()) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        self.0 < BigRational::from_integer(0.into())
    }

    pub fn is_zero(&self) -> bool {
        self.0 == BigRational::from_integer(0.into())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> Self {
        Rational(self.0.floor())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = Error;
    /// Accepts `"n/d"` or a bare integer `"n"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{s}` is not a rational"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Rational::new(n, d).map_err(|_| bad())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An interval endpoint: a rational or one of the two infinities.
/// Serializes as `"-inf"`, `"+inf"` or `"num/den"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// `self < x`.
    pub fn lt(&self, x: &Rational) -> bool {
        match self {
            Bound::NegInf => true,
            Bound::Finite(r) => r < x,
            Bound::PosInf => false,
        }
    }

    /// `self <= x`.
    pub fn le(&self, x: &Rational) -> bool {
        match self {
            Bound::NegInf => true,
            Bound::Finite(r) => r <= x,
            Bound::PosInf => false,
        }
    }

    /// `x < self`.
    pub fn gt(&self, x: &Rational) -> bool {
        match self {
            Bound::NegInf => false,
            Bound::Finite(r) => x < r,
            Bound::PosInf => true,
        }
    }

    /// `x <= self`.
    pub fn ge(&self, x: &Rational) -> bool {
        match self {
            Bound::NegInf => false,
            Bound::Finite(r) => x <= r,
            Bound::PosInf => true,
        }
    }
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(r) => r.fmt(f),
            Bound::PosInf => f.write_str("+inf"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(Bound::NegInf),
            "+inf" | "inf" => Ok(Bound::PosInf),
            other => Ok(Bound::Finite(other.parse()?)),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(r("2/-4"), r("-1/2"));
        assert_eq!(r("-1/2").to_string(), "-1/2");
        assert_eq!(r("3").to_string(), "3/1");
        assert!(Rational::new(1, 0).is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&r("1/3") + &r("1/6"), r("1/2"));
        assert_eq!(&r("1/3") - &r("1/2"), r("-1/6"));
        assert_eq!(r("3/4").half(), r("3/8"));
        assert_eq!(r("-5/2").abs(), r("5/2"));
        assert_eq!(r("-5/2").floor(), r("-3"));
        assert_eq!(r("2/3").recip(), r("3/2"));
    }

    #[test]
    fn bounds_order_and_round_trip() {
        let b = [Bound::NegInf, Bound::Finite(r("-7")), Bound::Finite(r("1/2")), Bound::PosInf];
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        for x in &b {
            let s = serde_json::to_string(x).unwrap();
            assert_eq!(&serde_json::from_str::<Bound>(&s).unwrap(), x);
        }
        assert!(Bound::NegInf.lt(&r("0")) && !Bound::PosInf.lt(&r("0")));
        assert!(Bound::Finite(r("0")).le(&r("0")) && !Bound::Finite(r("0")).lt(&r("0")));
    }
}
