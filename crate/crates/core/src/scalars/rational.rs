use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{forward_ops, Scalar};
use crate::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn pow(&self, e: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, e))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Residue modulo a prime `p`, or `None` when `p` divides the denominator.
    pub fn mod_prime(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let num = self.numer().mod_floor(&pb).to_u64().unwrap();
        let den = self.denom().mod_floor(&pb).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        let inv = super::prime::pow_mod(den, p - 2, p);
        Some(((num as u128 * inv as u128) % p as u128) as u64)
    }

    fn add_ref(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    fn neg_ref(&self) -> Self {
        Rational(-&self.0)
    }
}

forward_ops!(Rational);

impl Scalar for Rational {
    const DOMAIN: &'static str = "rational";

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Rational::integer(v)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    fn sparse_rank(rows: Vec<Vec<(u32, Self)>>, ncols: usize) -> usize {
        crate::linalg::rational_rank(rows, ncols)
    }

    fn sparse_rank_mod_p(rows: Vec<Vec<(u32, Self)>>, ncols: usize, p: u64) -> Result<usize> {
        crate::linalg::rank_mod_p(rows, ncols, p)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(v) => Ok(Rational::integer(v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_reduce() {
        let a: Rational = "1/3".parse().unwrap();
        let b: Rational = "1/6".parse().unwrap();
        assert_eq!((a + b).to_string(), "1/2");
    }

    #[test]
    fn canonical_forms() {
        let r = Rational::new(4, -6).unwrap();
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(Rational::new(0, 5).unwrap().to_string(), "0");
        assert!(Rational::new(1, 0).is_err());
        assert!(Rational::zero().inv().is_err());
    }

    #[test]
    fn serde_strings() {
        let r: Rational = "-7/4".parse().unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-7/4\"");
        let back: Rational = serde_json::from_str("\"-7/4\"").unwrap();
        assert_eq!(back, r);
        let int: Rational = serde_json::from_str("3").unwrap();
        assert_eq!(int.to_string(), "3");
    }

    #[test]
    fn reduction_mod_prime() {
        let r: Rational = "1/2".parse().unwrap();
        assert_eq!(r.mod_prime(7), Some(4));
        let r: Rational = "1/7".parse().unwrap();
        assert_eq!(r.mod_prime(7), None);
    }
}
