//! Exact scalar domains.
//!
//! Every certificate-grade computation runs over [`Rational`] or
//! [`Cyclotomic6`]. [`PrimeField`] arithmetic is only used for fast previews
//! and cross-checks of ranks. [`UniPoly`] and [`UniRationalFunction`] carry
//! the one-parameter family of forms.

mod cyclotomic;
mod prime;
mod rational;
mod unipoly;

pub use cyclotomic::Cyclotomic6;
pub(crate) use prime::{mul_mod, pow_mod};
pub use prime::{Fp, PrimeField};
pub use rational::Rational;
pub use unipoly::{coprime_basis, rational_roots, UniPoly, UniRationalFunction};

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::Result;

/// An exact field whose elements need no runtime context.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Short name used in reports ("rational", "cyclotomic6", ...).
    const DOMAIN: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn inv(&self) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.inv()?)
    }

    /// Rank of a sparse matrix given as rows of `(column, entry)` pairs.
    fn sparse_rank(rows: Vec<Vec<(u32, Self)>>, ncols: usize) -> usize {
        crate::linalg::field_rank(rows, ncols)
    }

    /// Rank of the reduction modulo a prime, where that makes sense.
    fn sparse_rank_mod_p(rows: Vec<Vec<(u32, Self)>>, ncols: usize, p: u64) -> Result<usize> {
        let _ = (rows, ncols);
        Err(crate::Error::Unsupported(format!(
            "{} entries modulo {p}",
            Self::DOMAIN
        )))
    }
}

/// Implements the by-value and by-reference arithmetic operators in terms of
/// `add_ref`, `sub_ref`, `mul_ref` and `neg_ref` inherent methods.
macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self.add_ref(&rhs)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl<'a, 'b> std::ops::Add<&'b $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'b $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self.sub_ref(&rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl<'a, 'b> std::ops::Sub<&'b $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'b $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self.mul_ref(&rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl<'a, 'b> std::ops::Mul<&'b $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'b $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}
pub(crate) use forward_ops;
