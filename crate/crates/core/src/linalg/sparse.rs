//! Sparse fraction-free elimination over integral domains.
//!
//! Rows are `(column, entry)` lists sorted by column. The pivot row is the
//! shortest active row; within it the pivot column minimises the Markowitz
//! fill-in estimate, preferring unit entries. Unit pivots are normalised to
//! one and eliminated directly; non-unit pivots use the fraction-free update
//! `row ← p·row − a·pivot_row` followed by removal of the row content.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalars::{Scalar, UniPoly};

pub type SparseRow<E> = Vec<(u32, E)>;

/// Arithmetic needed by [`eliminate`].
pub trait EliminationDomain {
    type Elem: Clone;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of `a` when `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// A non-unit common divisor of all entries, if one should be removed.
    fn content(&self, entries: &[(u32, Self::Elem)]) -> Option<Self::Elem>;
    fn div_exact(&self, a: &Self::Elem, d: &Self::Elem) -> Self::Elem;
    /// Size estimate used to break pivot ties.
    fn size(&self, a: &Self::Elem) -> usize;
}

/// Outcome of an elimination: the rank plus every non-unit pivot and every
/// removed row content, in the order they were used.
#[derive(Clone, Debug)]
pub struct Elimination<E> {
    pub rank: usize,
    pub nonunit_pivots: Vec<E>,
    pub contents: Vec<E>,
}

fn combine<D: EliminationDomain>(
    dom: &D,
    row: &[(u32, D::Elem)],
    scale: Option<&D::Elem>,
    factor: &D::Elem,
    pivot_row: &[(u32, D::Elem)],
    fill: &mut Vec<u32>,
) -> SparseRow<D::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    let scaled = |e: &D::Elem| match scale {
        Some(s) => dom.mul(s, e),
        None => e.clone(),
    };
    while i < row.len() || j < pivot_row.len() {
        let ci = row.get(i).map_or(u32::MAX, |x| x.0);
        let cj = pivot_row.get(j).map_or(u32::MAX, |x| x.0);
        if ci < cj {
            out.push((ci, scaled(&row[i].1)));
            i += 1;
        } else if cj < ci {
            let v = dom.neg(&dom.mul(factor, &pivot_row[j].1));
            if !dom.is_zero(&v) {
                out.push((cj, v));
                fill.push(cj);
            }
            j += 1;
        } else {
            let v = dom.sub(&scaled(&row[i].1), &dom.mul(factor, &pivot_row[j].1));
            if !dom.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the row space of `rows` (entries in columns `< ncols`).
pub fn eliminate<D: EliminationDomain>(
    dom: &D,
    rows: Vec<SparseRow<D::Elem>>,
    ncols: usize,
) -> Elimination<D::Elem> {
    let mut report = Elimination {
        rank: 0,
        nonunit_pivots: Vec::new(),
        contents: Vec::new(),
    };
    let mut active: Vec<Option<SparseRow<D::Elem>>> = Vec::with_capacity(rows.len());
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for row in rows {
        let mut row: SparseRow<D::Elem> =
            row.into_iter().filter(|(_, e)| !dom.is_zero(e)).collect();
        if row.is_empty() {
            continue;
        }
        row.sort_by_key(|x| x.0);
        if let Some(c) = dom.content(&row) {
            for e in row.iter_mut() {
                e.1 = dom.div_exact(&e.1, &c);
            }
            report.contents.push(c);
        }
        let idx = active.len() as u32;
        for (c, _) in &row {
            col_rows[*c as usize].push(idx);
        }
        active.push(Some(row));
    }

    let mut fill = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (i, r) in active.iter().enumerate() {
            if let Some(r) = r {
                if best.is_none_or(|(_, len)| r.len() < len) {
                    best = Some((i, r.len()));
                    if r.len() == 1 {
                        break;
                    }
                }
            }
        }
        let Some((pr, _)) = best else { break };
        let mut pivot_row = active[pr].take().unwrap();

        let (pos, _) = pivot_row
            .iter()
            .enumerate()
            .min_by_key(|(_, (c, e))| {
                (
                    dom.unit_inverse(e).is_none(),
                    col_rows[*c as usize].len(),
                    dom.size(e),
                    *c,
                )
            })
            .unwrap();
        let pc = pivot_row[pos].0;
        report.rank += 1;

        let unit = dom.unit_inverse(&pivot_row[pos].1);
        let pivot_val = match &unit {
            Some(inv) => {
                for e in pivot_row.iter_mut() {
                    e.1 = dom.mul(&e.1, inv);
                }
                None
            }
            None => {
                report.nonunit_pivots.push(pivot_row[pos].1.clone());
                Some(pivot_row[pos].1.clone())
            }
        };

        let users = std::mem::take(&mut col_rows[pc as usize]);
        for i in users {
            let i = i as usize;
            let Some(row) = active[i].as_ref() else {
                continue;
            };
            let Ok(k) = row.binary_search_by_key(&pc, |x| x.0) else {
                continue;
            };
            let factor = row[k].1.clone();
            fill.clear();
            let mut new_row = combine(dom, row, pivot_val.as_ref(), &factor, &pivot_row, &mut fill);
            if pivot_val.is_some() && !new_row.is_empty() {
                if let Some(c) = dom.content(&new_row) {
                    for e in new_row.iter_mut() {
                        e.1 = dom.div_exact(&e.1, &c);
                    }
                    report.contents.push(c);
                }
            }
            for &c in &fill {
                col_rows[c as usize].push(i as u32);
            }
            active[i] = if new_row.is_empty() {
                None
            } else {
                Some(new_row)
            };
        }
    }
    report
}

/// Row echelon form built one vector at a time.
///
/// Each stored row has a distinct leading column, its smallest. Unit leaders are
/// normalised to one; non-unit leaders are kept and reported.
pub struct IncrementalEchelon<'d, D: EliminationDomain> {
    dom: &'d D,
    rows: Vec<SparseRow<D::Elem>>,
    by_lead: std::collections::HashMap<u32, usize>,
    pub nonunit_pivots: Vec<D::Elem>,
    pub contents: Vec<D::Elem>,
}

impl<'d, D: EliminationDomain> IncrementalEchelon<'d, D> {
    pub fn new(dom: &'d D) -> Self {
        IncrementalEchelon {
            dom,
            rows: Vec::new(),
            by_lead: Default::default(),
            nonunit_pivots: Vec::new(),
            contents: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the remainder is zero exactly
    /// when `v` lies in their span.
    pub fn reduce(&self, v: SparseRow<D::Elem>) -> (SparseRow<D::Elem>, Vec<D::Elem>) {
        let dom = self.dom;
        let mut v: SparseRow<D::Elem> = v.into_iter().filter(|(_, e)| !dom.is_zero(e)).collect();
        v.sort_by_key(|x| x.0);
        let mut start = 0;
        let mut used = Vec::new();
        let mut fill = Vec::new();
        while start < v.len() {
            let (c, a) = (v[start].0, v[start].1.clone());
            let Some(&r) = self.by_lead.get(&c) else {
                start += 1;
                continue;
            };
            let row = &self.rows[r];
            let lead = &row[0].1;
            let scale = dom.unit_inverse(lead).is_none().then(|| lead.clone());
            if let Some(p) = &scale {
                used.push(p.clone());
            }
            v = combine(dom, &v, scale.as_ref(), &a, row, &mut fill);
            if scale.is_some() {
                if let Some(g) = dom.content(&v) {
                    for e in v.iter_mut() {
                        e.1 = dom.div_exact(&e.1, &g);
                    }
                }
            }
            start = v.partition_point(|x| x.0 <= c);
        }
        (v, used)
    }

    /// Inserts `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseRow<D::Elem>) -> bool {
        let (mut v, _) = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let dom = self.dom;
        if let Some(g) = dom.content(&v) {
            for e in v.iter_mut() {
                e.1 = dom.div_exact(&e.1, &g);
            }
            self.contents.push(g);
        }
        let lead_col = v[0].0;
        let lead = v[0].1.clone();
        if let Some(inv) = dom.unit_inverse(&lead) {
            for e in v.iter_mut() {
                e.1 = dom.mul(&e.1, &inv);
            }
        } else {
            self.nonunit_pivots.push(lead);
        }
        self.by_lead.insert(lead_col, self.rows.len());
        self.rows.push(v);
        true
    }
}

/// Integers, used for rank over Q after clearing denominators.
pub struct IntegerDomain;

impl EliminationDomain for IntegerDomain {
    type Elem = BigInt;

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.is_one() || (-a).is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn content(&self, entries: &[(u32, BigInt)]) -> Option<BigInt> {
        let mut g = BigInt::zero();
        for (_, e) in entries {
            g = g.gcd(e);
            if g.is_one() {
                return None;
            }
        }
        (g > BigInt::one()).then_some(g)
    }
    fn div_exact(&self, a: &BigInt, d: &BigInt) -> BigInt {
        a / d
    }
    fn size(&self, a: &BigInt) -> usize {
        a.bits() as usize
    }
}

/// F_p with residues stored as `u64`.
pub struct PrimeDomain {
    pub p: u64,
}

impl EliminationDomain for PrimeDomain {
    type Elem = u64;

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| crate::scalars::pow_mod(*a, self.p - 2, self.p))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        crate::scalars::mul_mod(*a, *b, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn content(&self, _: &[(u32, u64)]) -> Option<u64> {
        None
    }
    fn div_exact(&self, a: &u64, d: &u64) -> u64 {
        self.mul(a, &self.unit_inverse(d).unwrap())
    }
    fn size(&self, _: &u64) -> usize {
        0
    }
}

/// Any exact field implementing [`Scalar`].
pub struct FieldDomain<C>(std::marker::PhantomData<C>);

impl<C> Default for FieldDomain<C> {
    fn default() -> Self {
        FieldDomain(std::marker::PhantomData)
    }
}

impl<C: Scalar> EliminationDomain for FieldDomain<C> {
    type Elem = C;

    fn is_zero(&self, a: &C) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &C) -> Option<C> {
        a.inv().ok()
    }
    fn mul(&self, a: &C, b: &C) -> C {
        a.clone() * b
    }
    fn sub(&self, a: &C, b: &C) -> C {
        a.clone() - b
    }
    fn neg(&self, a: &C) -> C {
        -a.clone()
    }
    fn content(&self, _: &[(u32, C)]) -> Option<C> {
        None
    }
    fn div_exact(&self, a: &C, d: &C) -> C {
        a.div(d).unwrap()
    }
    fn size(&self, _: &C) -> usize {
        0
    }
}

/// Q[λ]: nonzero constants are the units; contents are monic gcds.
pub struct PolyDomain;

impl EliminationDomain for PolyDomain {
    type Elem = UniPoly;

    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &UniPoly) -> Option<UniPoly> {
        (a.degree() == Some(0)).then(|| UniPoly::constant(a.leading().inv().unwrap()))
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.clone() * b
    }
    fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.clone() - b
    }
    fn neg(&self, a: &UniPoly) -> UniPoly {
        -a.clone()
    }
    fn content(&self, entries: &[(u32, UniPoly)]) -> Option<UniPoly> {
        let mut g = UniPoly::zero();
        for (_, e) in entries {
            if e.is_constant() {
                return None;
            }
            g = g.gcd(e);
            if g.is_constant() {
                return None;
            }
        }
        (!g.is_constant()).then_some(g)
    }
    fn div_exact(&self, a: &UniPoly, d: &UniPoly) -> UniPoly {
        a.div_exact(d)
    }
    fn size(&self, a: &UniPoly) -> usize {
        a.degree().unwrap_or(0) * 64
            + a.coeffs()
                .iter()
                .map(|c| (c.numer().bits() + c.denom().bits()) as usize)
                .sum::<usize>()
    }
}

/// Scales a rational row to coprime integers.
pub fn integer_row(row: SparseRow<crate::scalars::Rational>) -> SparseRow<BigInt> {
    let mut lcm = BigInt::one();
    for (_, e) in &row {
        lcm = lcm.lcm(e.denom());
    }
    row.into_iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(c, e)| (c, e.numer() * (&lcm / e.denom())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn int_rows(rows: &[&[i64]]) -> Vec<SparseRow<BigInt>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, &x)| (c as u32, BigInt::from(x)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn integer_rank_small() {
        let rows = int_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 3, 5], &[2, 7, 11]]);
        assert_eq!(eliminate(&IntegerDomain, rows, 3).rank, 2);
        let rows = int_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(eliminate(&IntegerDomain, rows, 3).rank, 3);
    }

    #[test]
    fn incremental_echelon_detects_dependence() {
        let mut e = IncrementalEchelon::new(&IntegerDomain);
        let r = |v: &[i64]| int_rows(&[v]).pop().unwrap();
        assert!(e.insert(r(&[0, 2, 4])));
        assert!(e.insert(r(&[3, 0, 1])));
        assert!(!e.insert(r(&[3, 4, 9])));
        assert!(e.insert(r(&[0, 0, 1])));
        assert!(!e.insert(r(&[5, 7, 11])));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn prime_rank_drops_mod_p() {
        let rows = vec![vec![(0, 1u64), (1, 2)], vec![(0, 3), (1, 1)]];
        // det = 1 − 6 = −5 vanishes mod 5
        assert_eq!(eliminate(&PrimeDomain { p: 5 }, rows.clone(), 2).rank, 1);
        assert_eq!(eliminate(&PrimeDomain { p: 7 }, rows, 2).rank, 2);
    }

    #[test]
    fn poly_pivots_capture_special_values() {
        // [[λ, 1], [1, λ]] has determinant λ² − 1
        let l = UniPoly::lambda();
        let one = UniPoly::one();
        let rows = vec![
            vec![(0, l.clone()), (1, one.clone())],
            vec![(0, one), (1, l)],
        ];
        let rep = eliminate(&PolyDomain, rows, 2);
        assert_eq!(rep.rank, 2);
        let all: Vec<UniPoly> = rep
            .nonunit_pivots
            .iter()
            .chain(&rep.contents)
            .cloned()
            .collect();
        let roots: Vec<Rational> = all
            .iter()
            .flat_map(crate::scalars::rational_roots)
            .collect();
        assert!(roots.contains(&Rational::from_i64(1)));
        assert!(roots.contains(&Rational::from_i64(-1)));
    }
}
