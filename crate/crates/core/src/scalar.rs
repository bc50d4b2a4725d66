//! Exact rational scalars with a canonical `p/q` text form.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactScalar(BigRational::from_integer(n))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        ExactScalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Self {
        ExactScalar(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }

    /// `n^exp` for a nonnegative integer base.
    pub fn int_pow(n: u32, exp: usize) -> Self {
        ExactScalar::from_bigint(num_traits::pow(BigInt::from(n), exp))
    }

    pub fn recip(&self) -> Self {
        ExactScalar(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if s.starts_with('-') && digits == "0" {
        return None;
    }
    s.parse().ok()
}

/// Strict parser: accepts only the canonical form produced by `Display`
/// (`"3"`, `"-1/3"`); rejects `"2/4"`, `"1/1"`, `"+3"`, `"-0"`, `"3/-4"`.
impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a canonical rational: {s:?}"));
        match s.split_once('/') {
            None => parse_integer(s, true).map(ExactScalar::from_bigint).ok_or_else(bad),
            Some((p, q)) => {
                let p = parse_integer(p, true).ok_or_else(bad)?;
                let q = parse_integer(q, false).ok_or_else(bad)?;
                if q <= BigInt::one() || p.is_zero() {
                    return Err(bad());
                }
                let r = BigRational::new(p.clone(), q.clone());
                if r.numer() != &p || r.denom() != &q {
                    return Err(bad());
                }
                Ok(ExactScalar(r))
            }
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'b ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl<'a> AddAssign<&'a ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &'a ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        self.0 += rhs.0;
    }
}

impl<'a> SubAssign<&'a ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &'a ExactScalar) {
        self.0 -= &rhs.0;
    }
}

impl<'a> MulAssign<&'a ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &'a ExactScalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_canonical() {
        assert_eq!(ExactScalar::ratio(2, 4).to_string(), "1/2");
        assert_eq!(ExactScalar::ratio(-3, 9).to_string(), "-1/3");
        assert_eq!(ExactScalar::ratio(8, 1).to_string(), "8");
        assert_eq!(ExactScalar::ratio(1, -2).to_string(), "-1/2");
        assert_eq!(ExactScalar::zero().to_string(), "0");
    }

    #[test]
    fn parse_accepts_canonical_only() {
        for ok in ["0", "7", "-7", "1/3", "-22/7", "123456789012345678901234567890"] {
            let v: ExactScalar = ok.parse().unwrap();
            assert_eq!(v.to_string(), ok);
        }
        for bad in ["", "-", "+3", "-0", "03", "2/4", "1/1", "3/-4", "0/5", "1/0", "1/", "/2", "1.5", " 1", "1/2/3"] {
            assert!(bad.parse::<ExactScalar>().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn serde_uses_strings() {
        let v = ExactScalar::ratio(-1, 6);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "\"-1/6\"");
        let back: ExactScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn arithmetic() {
        let a = ExactScalar::ratio(1, 6);
        let b = ExactScalar::ratio(-1, 6);
        assert!((&a + &b).is_zero());
        assert_eq!(&a * &ExactScalar::from_int(6), ExactScalar::one());
        assert_eq!(ExactScalar::int_pow(3, 4), ExactScalar::from_int(81));
        assert_eq!(ExactScalar::ratio(2, 3).pow(3), ExactScalar::ratio(8, 27));
    }
}
