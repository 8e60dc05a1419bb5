use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::scalars::Scalar;
use crate::{Error, Result};

/// Sparse polynomial in `n_vars` variables over the scalar domain `C`.
///
/// The same type represents forms in S = k[x₁,…,xₙ] and differential
/// operators in the dual ring T = k[y₁,…,yₙ].
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C> {
    n_vars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero(n_vars: usize) -> Self {
        assert!(n_vars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: C) -> Self {
        Poly::term(Monomial::one(n_vars), c)
    }

    /// The variable with 0-based index `i`.
    pub fn var(n_vars: usize, i: usize) -> Self {
        Poly::term(Monomial::var(n_vars, i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Poly::zero(m.n_vars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(n_vars);
        for (m, c) in terms {
            if m.n_vars() != n_vars {
                return Err(Error::VarCountMismatch {
                    left: n_vars,
                    right: m.n_vars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending degree-reverse-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    /// Terms sorted in descending `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Common degree of all terms, or `None` for zero and inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Result<u32> {
        self.homogeneous_degree().ok_or(Error::NotHomogeneous)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut p = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(self.n_vars, C::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_vars(&self, o: &Self) -> Result<()> {
        if self.n_vars != o.n_vars {
            return Err(Error::VarCountMismatch {
                left: self.n_vars,
                right: o.n_vars,
            });
        }
        Ok(())
    }

    /// Apolarity action `self ∘ f`, with `self` read in the dual variables.
    pub fn contract(&self, f: &Poly<C>) -> Result<Poly<C>> {
        self.check_vars(f)?;
        let mut out = Poly::zero(self.n_vars);
        for (a, ca) in &self.terms {
            for (b, cb) in &f.terms {
                if let Some((m, k)) = a.contract(b) {
                    out.add_term(m, ca.clone() * cb * &C::from_i64(k as i64));
                }
            }
        }
        Ok(out)
    }

    /// Substitutes `xᵢ ↦ Σⱼ M[i][j] xⱼ`.
    pub fn substitute(&self, change: &LinearChange<C>) -> Result<Poly<C>> {
        if change.size() != self.n_vars {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} change on {} variables",
                change.size(),
                change.size(),
                self.n_vars
            )));
        }
        let n = self.n_vars;
        let images: Vec<Poly<C>> = (0..n)
            .map(|i| {
                let mut p = Poly::zero(n);
                for j in 0..n {
                    p.add_term(Monomial::var(n, j), change.matrix[i][j].clone());
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<Poly<C>>> = vec![vec![Poly::constant(n, C::one())]; n];
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out = out + t;
        }
        Ok(out)
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.n_vars
            )));
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t * x;
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    fn add_ref(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars, o.n_vars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    fn sub_ref(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars, o.n_vars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }

    fn mul_ref(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars, o.n_vars, "variable count mismatch");
        let mut p = Poly::zero(self.n_vars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                p.add_term(a.mul(b), ca.clone() * cb);
            }
        }
        p
    }

    fn neg_ref(&self) -> Self {
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! poly_ops {
    ($($tr:ident $f:ident $r:ident),*) => {$(
        impl<C: Scalar> std::ops::$tr for Poly<C> {
            type Output = Poly<C>;
            fn $f(self, o: Poly<C>) -> Poly<C> {
                self.$r(&o)
            }
        }
        impl<'a, C: Scalar> std::ops::$tr<&'a Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $f(self, o: &'a Poly<C>) -> Poly<C> {
                self.$r(o)
            }
        }
        impl<'a, 'b, C: Scalar> std::ops::$tr<&'b Poly<C>> for &'a Poly<C> {
            type Output = Poly<C>;
            fn $f(self, o: &'b Poly<C>) -> Poly<C> {
                self.$r(o)
            }
        }
    )*};
}
poly_ops!(Add add add_ref, Sub sub sub_ref, Mul mul mul_ref);

impl<C: Scalar> std::ops::Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

impl<C: Scalar> std::ops::Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self
            .sorted_terms(MonomialOrder::DegRevLex)
            .into_iter()
            .enumerate()
        {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<C> {
    exps: Vec<u32>,
    coeff: C,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr<C> {
    n_vars: usize,
    terms: Vec<TermRepr<C>>,
}

impl<C: Scalar> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            n_vars: self.n_vars,
            terms: self
                .sorted_terms(MonomialOrder::DegRevLex)
                .into_iter()
                .map(|(m, c)| TermRepr {
                    exps: m.exps().iter().map(|&e| e as u32).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolyRepr::<C>::deserialize(d)?;
        if r.n_vars > MAX_VARS {
            return Err(D::Error::custom(format!("at most {MAX_VARS} variables")));
        }
        let mut terms = Vec::with_capacity(r.terms.len());
        for t in r.terms {
            if t.exps.len() != r.n_vars {
                return Err(D::Error::custom(
                    "exponent vector length differs from n_vars",
                ));
            }
            terms.push((Monomial::new(&t.exps).map_err(D::Error::custom)?, t.coeff));
        }
        Poly::from_terms(r.n_vars, terms).map_err(D::Error::custom)
    }
}

/// A square matrix acting on the variables by `xᵢ ↦ Σⱼ M[i][j] xⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange<C> {
    pub matrix: Vec<Vec<C>>,
}

impl<C: Scalar> LinearChange<C> {
    pub fn new(matrix: Vec<Vec<C>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "linear change must be square".into(),
            ));
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearChange {
            matrix: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { C::one() } else { C::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// The change on d×d matrix space (row-major variables) induced by
    /// X ↦ s₁ X s₂.
    pub fn matrix_space(s1: &[Vec<C>], s2: &[Vec<C>]) -> Result<Self> {
        let d = s1.len();
        if s2.len() != d || s1.iter().chain(s2).any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch("s1 and s2 must be d×d".into()));
        }
        let mut m = vec![vec![C::zero(); d * d]; d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        m[i * d + j][k * d + l] = s1[i][k].clone() * &s2[l][j];
                    }
                }
            }
        }
        Ok(LinearChange { matrix: m })
    }
}
