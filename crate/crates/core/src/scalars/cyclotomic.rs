use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{forward_ops, Rational, Scalar};
use crate::{Error, Result};

/// Element `a + bθ` of Q(θ), θ a primitive sixth root of unity.
///
/// θ satisfies θ² = θ − 1, so θ⁻¹ = 1 − θ and θ³ = −1.
///
/// Serialized as a plain rational when b = 0 and as `{"a": …, "b": …}`
/// otherwise; either shape is accepted on input.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic6 {
    pub a: Rational,
    pub b: Rational,
}

impl Cyclotomic6 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Cyclotomic6 { a, b }
    }

    pub fn theta() -> Self {
        Cyclotomic6::new(Rational::zero(), Rational::one())
    }

    /// θ⁻¹ = 1 − θ.
    pub fn theta_inv() -> Self {
        Cyclotomic6::new(Rational::one(), Rational::from_i64(-1))
    }

    /// Field norm a² + ab + b².
    pub fn norm(&self) -> Rational {
        self.a.clone() * &self.a + &(self.a.clone() * &self.b) + &(self.b.clone() * &self.b)
    }

    /// Galois conjugate θ ↦ θ⁻¹: (a + b) − bθ.
    pub fn conj(&self) -> Self {
        Cyclotomic6::new(self.a.clone() + &self.b, -self.b.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic6::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    fn add_ref(&self, o: &Self) -> Self {
        Cyclotomic6::new(self.a.clone() + &o.a, self.b.clone() + &o.b)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Cyclotomic6::new(self.a.clone() - &o.a, self.b.clone() - &o.b)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        // (a + bθ)(c + dθ) = ac + (ad + bc)θ + bd(θ − 1)
        let bd = self.b.clone() * &o.b;
        let a = self.a.clone() * &o.a - &bd;
        let b = self.a.clone() * &o.b + &(self.b.clone() * &o.a) + &bd;
        Cyclotomic6::new(a, b)
    }
    fn neg_ref(&self) -> Self {
        Cyclotomic6::new(-self.a.clone(), -self.b.clone())
    }
}

forward_ops!(Cyclotomic6);

impl Scalar for Cyclotomic6 {
    const DOMAIN: &'static str = "cyclotomic6";

    fn zero() -> Self {
        Cyclotomic6::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        Cyclotomic6::new(Rational::one(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Cyclotomic6::new(Rational::from_i64(v), Rational::zero())
    }
    fn from_rational(r: &Rational) -> Self {
        Cyclotomic6::new(r.clone(), Rational::zero())
    }
    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.inv()?;
        let c = self.conj();
        Ok(Cyclotomic6::new(c.a * &ninv, c.b * &ninv))
    }
}

impl Serialize for Cyclotomic6 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair<'a> {
            a: &'a Rational,
            b: &'a Rational,
        }
        if self.b.is_zero() {
            self.a.serialize(s)
        } else {
            Pair {
                a: &self.a,
                b: &self.b,
            }
            .serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Cyclotomic6 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Plain(Rational),
            Pair { a: Rational, b: Rational },
        }
        Ok(match Repr::deserialize(d)? {
            Repr::Plain(a) => Cyclotomic6::from_rational(&a),
            Repr::Pair { a, b } => Cyclotomic6::new(a, b),
        })
    }
}

impl fmt::Display for Cyclotomic6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}θ", self.b),
            (false, false) => write!(f, "({} + {}θ)", self.a, self.b),
        }
    }
}

impl fmt::Debug for Cyclotomic6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64, b: i64) -> Cyclotomic6 {
        Cyclotomic6::new(Rational::from_i64(a), Rational::from_i64(b))
    }

    #[test]
    fn theta_identities() {
        let t = Cyclotomic6::theta();
        assert!((t.clone() * &Cyclotomic6::theta_inv()).is_one());
        assert_eq!(t.pow(3), c(-1, 0));
        assert!(t.pow(6).is_one());
        assert_eq!(t.clone() * &t, t.clone() - &Cyclotomic6::one());
    }

    #[test]
    fn theta_cubed_by_repeated_multiplication() {
        // θ² = θ − 1, θ³ = θ² − θ = −1
        let t = Cyclotomic6::theta();
        let t2 = t.clone() * &t;
        assert_eq!(t2, c(-1, 1));
        assert_eq!(t2 * &t, c(-1, 0));
    }

    #[test]
    fn inverse_and_norm() {
        let x = c(2, -3);
        let y = x.inv().unwrap();
        assert!((x.clone() * &y).is_one());
        assert_eq!(x.norm(), Rational::from_i64(4 - 6 + 9));
        assert!(Cyclotomic6::zero().inv().is_err());
    }

    #[test]
    fn json_shape() {
        let x = Cyclotomic6::new("1/2".parse().unwrap(), Rational::from_i64(-1));
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"a":"1/2","b":"-1"}"#
        );
        assert_eq!(serde_json::to_string(&c(-3, 0)).unwrap(), r#""-3""#);
        for s in [
            r#"{"a":"1/2","b":"-1"}"#,
            r#""-3""#,
            "7",
            r#"{"a":0,"b":1}"#,
        ] {
            let y: Cyclotomic6 = serde_json::from_str(s).unwrap();
            let back: Cyclotomic6 =
                serde_json::from_str(&serde_json::to_string(&y).unwrap()).unwrap();
            assert_eq!(y, back);
        }
    }
}
