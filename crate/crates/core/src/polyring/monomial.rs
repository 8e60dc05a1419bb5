use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Largest number of variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 16;

/// Term orders on monomials of a fixed degree and variable count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Degree, then lexicographic with x₁ > x₂ > ….
    DegLex,
    /// Degree, then reverse lexicographic.
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        a.deg.cmp(&b.deg).then_with(|| match self {
            MonomialOrder::DegLex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => {
                for i in (0..MAX_VARS).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        })
    }
}

/// A monomial in at most [`MAX_VARS`] variables with packed exponents.
///
/// The derived ordering is degree-reverse-lex, so ordered containers iterate
/// in the default term order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    n: u8,
    deg: u16,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::DegRevLex
            .cmp(self, other)
            .then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::OutOfRange {
                what: "variable count",
                detail: format!("{} > {MAX_VARS}", exps.len()),
            });
        }
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            let e = u8::try_from(e).map_err(|_| Error::OutOfRange {
                what: "exponent",
                detail: e.to_string(),
            })?;
            m.exps[i] = e;
            m.deg += e as u16;
        }
        Ok(m)
    }

    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial {
            exps: [0; MAX_VARS],
            n: n as u8,
            deg: 0,
        }
    }

    /// The variable with 0-based index `i`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut m = Monomial::one(n);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn n_vars(&self) -> usize {
        self.n as usize
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps[..self.n as usize]
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, o.n);
        let mut m = *self;
        for i in 0..self.n as usize {
            m.exps[i] += o.exps[i];
        }
        m.deg += o.deg;
        m
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] += 1;
        m.deg += 1;
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..self.n as usize).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `o / self`, if `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        let mut m = *o;
        for i in 0..self.n as usize {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    /// Apolarity action of `self` on `o`: the monomial `o / self` and the
    /// coefficient ∏ oᵢ!/(oᵢ − sᵢ)!.
    pub fn contract(&self, o: &Monomial) -> Option<(Monomial, u64)> {
        let q = self.quotient_of(o)?;
        let mut c = 1u64;
        for i in 0..self.n as usize {
            for k in 0..self.exps[i] as u64 {
                c = c
                    .checked_mul(o.exps[i] as u64 - k)
                    .expect("contraction coefficient exceeds u64");
            }
        }
        Some((q, c))
    }

    /// 1-based index of the largest variable present, 0 for the unit.
    pub fn max_var(&self) -> usize {
        (0..self.n as usize)
            .rev()
            .find(|&i| self.exps[i] > 0)
            .map_or(0, |i| i + 1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// All monomials of degree `d` in `n` variables, in descending degree-lex
    /// order (x₁ᵈ first).
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = Monomial::one(n);
        fn rec(out: &mut Vec<Monomial>, cur: &mut Monomial, i: usize, left: u32) {
            let n = cur.n as usize;
            if i + 1 == n || n == 0 {
                if n == 0 {
                    if left == 0 {
                        out.push(*cur);
                    }
                    return;
                }
                cur.exps[i] = left as u8;
                cur.deg += left as u16;
                out.push(*cur);
                cur.deg -= left as u16;
                cur.exps[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur.exps[i] = e as u8;
                cur.deg += e as u16;
                rec(out, cur, i + 1, left - e);
                cur.deg -= e as u16;
            }
            cur.exps[i] = 0;
        }
        rec(&mut out, &mut cur, 0, d);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..self.n as usize {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(n as u64 + d as u64 - 1, d as u64) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn orders() {
        // x1*x3 vs x2^2 in three variables
        let a = m(&[1, 0, 1]);
        let b = m(&[0, 2, 0]);
        assert_eq!(MonomialOrder::DegLex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(
            MonomialOrder::DegLex.cmp(&m(&[0, 0, 3]), &a),
            Ordering::Greater
        );
    }

    #[test]
    fn enumeration_is_deglex_descending() {
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), monomial_count(3, 2));
        for w in all.windows(2) {
            assert_eq!(MonomialOrder::DegLex.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(all[0], m(&[2, 0, 0]));
        assert_eq!(Monomial::all_of_degree(4, 0).len(), 1);
    }

    #[test]
    fn contraction_coefficients() {
        assert_eq!(m(&[1]).contract(&m(&[4])), Some((m(&[3]), 4)));
        assert_eq!(m(&[2, 1]).contract(&m(&[3, 1])), Some((m(&[1, 0]), 6)));
        assert_eq!(m(&[2, 0]).contract(&m(&[1, 3])), None);
    }

    #[test]
    fn max_var_and_binomials() {
        assert_eq!(m(&[1, 0, 2, 0]).max_var(), 3);
        assert_eq!(Monomial::one(4).max_var(), 0);
        assert_eq!(binomial(9, 2), 36);
        assert_eq!(monomial_count(9, 3), 165);
    }
}
