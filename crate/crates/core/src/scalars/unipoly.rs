use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{forward_ops, Rational, Scalar};
use crate::{Error, Result};

/// Dense univariate polynomial over Q in the parameter λ.
///
/// `coeffs[i]` is the coefficient of λ^i; the vector never ends in a zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The indeterminate λ.
    pub fn lambda() -> Self {
        UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        UniPoly::from_coeffs(cs.iter().map(|&c| Rational::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv().expect("nonzero leading coefficient"))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &Rational::from_i64(i as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.leading().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - &(c.clone() * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree(&self) -> UniPoly {
        if self.is_constant() {
            return UniPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Integer polynomial with coprime coefficients and positive leading
    /// coefficient, proportional to `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if !g.is_zero() {
            if ints.last().is_some_and(|c| c.is_negative()) {
                g = -g;
            }
            for c in ints.iter_mut() {
                *c = &*c / &g;
            }
        }
        ints
    }

    fn add_ref(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = Rational::zero();
        UniPoly::from_coeffs(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero).clone() + o.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UniPoly::from_coeffs(out)
    }
    fn neg_ref(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

forward_ops!(UniPoly);

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}λ", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}λ^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sign variations of a Sturm chain at `x`, skipping zeros.
fn sign_variations(chain: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    fn floor(r: &Rational) -> BigInt {
        r.numer().div_floor(r.denom())
    }
    if lo.is_negative() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = floor(lo);
    let fl_r = Rational::integer(fl.clone());
    if fl_r == *lo {
        return fl_r;
    }
    if Rational::integer(fl.clone() + 1) <= *hi {
        return Rational::integer(fl + 1);
    }
    // lo and hi share the integer part; recurse on the reciprocals of the
    // fractional parts.
    let lo_f = lo.clone() - &fl_r;
    let hi_f = hi.clone() - &fl_r;
    let inner = simplest_between(&hi_f.inv().unwrap(), &lo_f.inv().unwrap());
    fl_r + &inner.inv().unwrap()
}

/// All distinct rational roots of a nonzero polynomial, ascending.
///
/// Roots are isolated with a Sturm chain and each isolating interval is
/// shrunk below `1/lc²` (`lc` the leading coefficient of the primitive
/// integer form), so that it contains at most one fraction whose denominator
/// can divide `lc`; that fraction is the simplest rational in the interval
/// and is tested exactly.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    if p.is_constant() {
        return Vec::new();
    }
    let sf = p.squarefree();
    let mut roots = Vec::new();
    let mut sf = sf;
    if sf.eval(&Rational::zero()).is_zero() {
        roots.push(Rational::zero());
        sf = sf.div_exact(&UniPoly::lambda());
    }
    if sf.is_constant() {
        return roots;
    }
    let ints = sf.primitive_integer();
    let lc = ints.last().unwrap().abs();
    let eps = Rational::new(1, &lc * &lc).unwrap();
    let mut bound = Rational::zero();
    let lead = sf.leading();
    for c in sf.coeffs() {
        let q = (c.clone() * &lead.inv().unwrap()).abs();
        if q > bound {
            bound = q;
        }
    }
    bound = bound + &Rational::one();

    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).unwrap().1;
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }

    let lo = -bound.clone() - &Rational::one();
    let hi = bound;
    let total = sign_variations(&chain, &lo) - sign_variations(&chain, &hi);
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 && b.clone() - &a < eps {
            let cand = simplest_between(&a, &b);
            if sf.eval(&cand).is_zero() {
                roots.push(cand);
            }
            continue;
        }
        let m = (a.clone() + &b) * &Rational::new(1, 2).unwrap();
        let left = sign_variations(&chain, &a) - sign_variations(&chain, &m);
        stack.push((a, m.clone(), left));
        stack.push((m, b, count - left));
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Pairwise coprime, squarefree, monic polynomials with the same set of
/// roots (over the algebraic closure) as the union of the inputs' roots.
pub fn coprime_basis(polys: &[UniPoly]) -> Vec<UniPoly> {
    let mut basis: Vec<UniPoly> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let mut q = p.squarefree();
        let mut refined = Vec::new();
        for f in basis.drain(..) {
            let g = f.gcd(&q);
            if g.is_constant() {
                refined.push(f);
                continue;
            }
            q = q.div_exact(&g);
            let rest = f.div_exact(&g);
            refined.push(g);
            if !rest.is_constant() {
                refined.push(rest.monic());
            }
        }
        basis = refined;
        if !q.is_constant() {
            basis.push(q.monic());
        }
    }
    basis.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    basis
}

/// Element of Q(λ): `numerator / denominator` with a monic denominator and
/// coprime numerator and denominator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniRationalFunction {
    numerator: UniPoly,
    denominator: UniPoly,
}

impl UniRationalFunction {
    pub fn new(numerator: UniPoly, denominator: UniPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if numerator.is_zero() {
            return Ok(Self::from_poly(UniPoly::zero()));
        }
        let g = numerator.gcd(&denominator);
        let (mut n, mut d) = (numerator.div_exact(&g), denominator.div_exact(&g));
        let lc = d.leading().inv()?;
        n = n.scale(&lc);
        d = d.scale(&lc);
        Ok(UniRationalFunction {
            numerator: n,
            denominator: d,
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRationalFunction {
            numerator: p,
            denominator: UniPoly::one(),
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.denominator
    }

    /// Value at `x`, or a pole error naming `x`.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let d = self.denominator.eval(x);
        if d.is_zero() {
            return Err(Error::Pole {
                root: x.to_string(),
            });
        }
        self.numerator.eval(x).div(&d)
    }

    fn add_ref(&self, o: &Self) -> Self {
        let n =
            self.numerator.clone() * &o.denominator + &(o.numerator.clone() * &self.denominator);
        let d = self.denominator.clone() * &o.denominator;
        UniRationalFunction::new(n, d).expect("nonzero denominator")
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let n = self.numerator.clone() * &o.numerator;
        let d = self.denominator.clone() * &o.denominator;
        UniRationalFunction::new(n, d).expect("nonzero denominator")
    }
    fn neg_ref(&self) -> Self {
        UniRationalFunction {
            numerator: -self.numerator.clone(),
            denominator: self.denominator.clone(),
        }
    }
}

forward_ops!(UniRationalFunction);

impl Scalar for UniRationalFunction {
    const DOMAIN: &'static str = "rational-function";

    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Self::from_poly(UniPoly::constant(Rational::from_i64(v)))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(UniPoly::constant(r.clone()))
    }
    fn inv(&self) -> Result<Self> {
        UniRationalFunction::new(self.denominator.clone(), self.numerator.clone())
    }
}

impl fmt::Display for UniRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_constant() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

impl fmt::Debug for UniRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let lam = UniPoly::lambda();
        let f = UniRationalFunction::new(lam.clone(), lam.clone() + &UniPoly::one()).unwrap();
        assert_eq!(f.evaluate(&q("1")).unwrap(), q("1/2"));

        // (λ² − 1)/(λ − 1) reduces to λ + 1
        let g = UniRationalFunction::new(
            UniPoly::from_i64s(&[-1, 0, 1]),
            UniPoly::from_i64s(&[-1, 1]),
        )
        .unwrap();
        assert_eq!(g.denominator(), &UniPoly::one());
        assert_eq!(g.evaluate(&q("2")).unwrap(), q("3"));

        let h = UniRationalFunction::new(UniPoly::one(), lam).unwrap();
        match h.evaluate(&q("0")) {
            Err(Error::Pole { root }) => assert_eq!(root, "0"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn denominators_are_monic() {
        let f = UniRationalFunction::new(UniPoly::from_i64s(&[1]), UniPoly::from_i64s(&[2, 4]))
            .unwrap();
        assert_eq!(f.denominator().leading(), Rational::one());
        assert_eq!(f.numerator(), &UniPoly::constant(q("1/4")));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (λ − 1)²(λ + 2)
        let p = UniPoly::from_i64s(&[-1, 1])
            * UniPoly::from_i64s(&[-1, 1])
            * UniPoly::from_i64s(&[2, 1]);
        assert_eq!(p.squarefree(), UniPoly::from_i64s(&[-2, 1, 1]));
        let g = p.gcd(&UniPoly::from_i64s(&[-1, 1]));
        assert_eq!(g, UniPoly::from_i64s(&[-1, 1]));
    }

    #[test]
    fn finds_rational_roots_only() {
        // (6λ − 1)(λ + 3)(λ² − 2)λ
        let p = UniPoly::from_i64s(&[-1, 6])
            * UniPoly::from_i64s(&[3, 1])
            * UniPoly::from_i64s(&[-2, 0, 1])
            * UniPoly::lambda();
        assert_eq!(rational_roots(&p), vec![q("-3"), q("0"), q("1/6")]);
        assert!(rational_roots(&UniPoly::from_i64s(&[1, 0, 1])).is_empty());
        assert_eq!(
            rational_roots(&UniPoly::from_i64s(&[-7, 9])),
            vec![q("7/9")]
        );
    }

    #[test]
    fn close_rational_roots_are_separated() {
        // roots 100/101 and 99/100
        let p = UniPoly::from_i64s(&[-100, 101]) * UniPoly::from_i64s(&[-99, 100]);
        assert_eq!(rational_roots(&p), vec![q("99/100"), q("100/101")]);
    }

    #[test]
    fn coprime_basis_merges_shared_roots() {
        let a = UniPoly::from_i64s(&[-1, 1]) * UniPoly::from_i64s(&[2, 1]);
        let b = UniPoly::from_i64s(&[-1, 1]) * UniPoly::from_i64s(&[-2, 0, 1]);
        let basis = coprime_basis(&[a, b, UniPoly::one()]);
        let total: usize = basis.iter().map(|p| p.degree().unwrap()).sum();
        assert_eq!(total, 4);
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                assert!(x.gcd(y).is_constant());
            }
        }
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&q("1/3"), &q("1/2")), q("1/2"));
        assert_eq!(simplest_between(&q("3/10"), &q("4/10")), q("1/3"));
        assert_eq!(simplest_between(&q("-1/2"), &q("1/2")), q("0"));
        assert_eq!(simplest_between(&q("-4/10"), &q("-3/10")), q("-1/3"));
    }
}
