use std::collections::HashMap;
use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::apolar::monomials_desc;
use crate::linalg::{
    DenseMatrix, EliminationDomain, FieldDomain, IncrementalEchelon, SpanSolver, SparseRow,
};
use crate::polyring::{Monomial, MonomialOrder, Poly};
use crate::scalars::{Rational, Scalar, UniPoly};
use crate::{Error, Result};

/// Multidegree attached to basis vectors and coordinates.
pub type Weight = Vec<i64>;

/// Entries the strand engine can place in a matrix.
pub trait RingElem: Clone + Send + Sync + Debug {
    fn elem_is_zero(&self) -> bool;
    fn elem_neg(&self) -> Self;
    fn elem_mul_int(&self, k: u64) -> Self;
}

impl<C: Scalar> RingElem for C {
    fn elem_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn elem_neg(&self) -> Self {
        -self.clone()
    }
    fn elem_mul_int(&self, k: u64) -> Self {
        self.clone() * &C::from_i64(k as i64)
    }
}

impl RingElem for UniPoly {
    fn elem_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn elem_neg(&self) -> Self {
        -self.clone()
    }
    fn elem_mul_int(&self, k: u64) -> Self {
        self.scale(&Rational::from_i64(k as i64))
    }
}

/// Multiplication by each variable, from one graded piece into the ambient
/// coordinates of the next.
#[derive(Clone, Debug)]
pub struct Products<E> {
    /// `rows[b][k]` is y_k · (basis vector b).
    pub rows: Vec<Vec<SparseRow<E>>>,
    pub target_dim: usize,
    pub target_weights: Vec<Weight>,
}

/// One graded piece A_j, realised inside an ambient coordinate space.
#[derive(Clone, Debug)]
pub struct Piece<E> {
    pub ambient_dim: usize,
    pub basis: Vec<SparseRow<E>>,
    pub basis_weights: Vec<Weight>,
    /// Human-readable names of the basis vectors.
    pub labels: Vec<String>,
    pub products: Option<Products<E>>,
}

impl<E> Piece<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A standard graded quotient T/I given by finitely many graded pieces and
/// multiplication by the variables.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<E> {
    pub n_vars: usize,
    pub pieces: Vec<Piece<E>>,
    /// True when every piece beyond the stored ones is zero.
    pub closed: bool,
    /// Per-variable weights of a grading refining the standard one.
    pub variable_weights: Vec<Weight>,
    pub description: String,
}

impl<E: RingElem> GradedAlgebra<E> {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// dim A_j, or `None` when the piece was not computed.
    pub fn dim(&self, j: usize) -> Option<usize> {
        match self.pieces.get(j) {
            Some(p) => Some(p.dim()),
            None if self.closed => Some(0),
            None => None,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim()).collect()
    }

    pub fn weight_rank(&self) -> usize {
        self.variable_weights.first().map_or(0, |w| w.len())
    }

    pub fn piece(&self, j: usize) -> Result<&Piece<E>> {
        self.pieces.get(j).ok_or_else(|| Error::OutOfRange {
            what: "graded piece",
            detail: format!("degree {j} not computed (have 0..{})", self.pieces.len()),
        })
    }

    pub fn products(&self, j: usize) -> Result<&Products<E>> {
        self.piece(j)?
            .products
            .as_ref()
            .ok_or_else(|| Error::OutOfRange {
                what: "multiplication",
                detail: format!("degree {j} → {} not available", j + 1),
            })
    }
}

impl<C: Scalar> GradedAlgebra<C> {
    /// Matrix of multiplication by y_k from A_j to A_{j+1} in basis
    /// coordinates, acting on column vectors.
    pub fn multiplication_matrix(&self, k: usize, j: usize) -> Result<DenseMatrix<C>> {
        let src = self.piece(j)?;
        let prod = self.products(j)?;
        let tgt_dim = self.dim(j + 1).ok_or_else(|| Error::OutOfRange {
            what: "graded piece",
            detail: format!("degree {}", j + 1),
        })?;
        let mut m = DenseMatrix::zeros(tgt_dim, src.dim());
        if tgt_dim == 0 {
            return Ok(m);
        }
        let tgt = self.piece(j + 1)?;
        let dense_basis: Vec<Vec<C>> = tgt
            .basis
            .iter()
            .map(|r| densify(r, tgt.ambient_dim))
            .collect();
        let solver = SpanSolver::new(&dense_basis)
            .ok_or_else(|| Error::Degenerate("dependent basis".into()))?;
        for b in 0..src.dim() {
            let v = densify(&prod.rows[b][k], prod.target_dim);
            let coords = solver
                .coordinates(&v)
                .ok_or_else(|| Error::Degenerate(format!("y{}·b{b} leaves A_{}", k + 1, j + 1)))?;
            for (r, c) in coords.into_iter().enumerate() {
                m[(r, b)] = c;
            }
        }
        Ok(m)
    }

    /// Checks y_k y_l = y_l y_k as maps A_j → A_{j+2} for all computable j.
    pub fn check_commutativity(&self) -> Result<bool> {
        let n = self.n_vars;
        for j in 0..self.pieces.len().saturating_sub(2) {
            let mats: Vec<DenseMatrix<C>> = (0..n)
                .map(|k| self.multiplication_matrix(k, j))
                .collect::<Result<_>>()?;
            let next: Vec<DenseMatrix<C>> = (0..n)
                .map(|k| self.multiplication_matrix(k, j + 1))
                .collect::<Result<_>>()?;
            for k in 0..n {
                for l in k + 1..n {
                    if next[k].mul(&mats[l]) != next[l].mul(&mats[k]) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub(crate) fn densify<C: Scalar>(row: &SparseRow<C>, dim: usize) -> Vec<C> {
    let mut v = vec![C::zero(); dim];
    for (c, e) in row {
        v[*c as usize] = e.clone();
    }
    v
}

fn weight_of(m: &Monomial, var_weights: &[Weight], rank: usize) -> Weight {
    let mut w = vec![0i64; rank];
    for (k, vw) in var_weights.iter().enumerate() {
        let e = m.exp(k) as i64;
        if e != 0 {
            for (x, y) in w.iter_mut().zip(vw) {
                *x += e * y;
            }
        }
    }
    w
}

/// Integer weights of the variables spanning all gradings under which every
/// monomial of `support` has the same degree.
pub fn support_weights(n: usize, support: &[Monomial]) -> Vec<Weight> {
    let identity = || {
        (0..n)
            .map(|k| (0..n).map(|l| i64::from(k == l)).collect())
            .collect()
    };
    let Some(first) = support.first() else {
        return identity();
    };
    if support.len() == 1 {
        return identity();
    }
    let diffs: Vec<Vec<Rational>> = support[1..]
        .iter()
        .map(|m| {
            (0..n)
                .map(|k| Rational::from_i64(m.exp(k) as i64 - first.exp(k) as i64))
                .collect()
        })
        .collect();
    let kernel: Vec<Vec<i64>> = DenseMatrix::from_rows(diffs)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut l = num_bigint::BigInt::one();
            for x in &v {
                l = l.lcm(x.denom());
            }
            v.iter()
                .map(|x| {
                    (x.numer() * (&l / x.denom()))
                        .to_i64()
                        .expect("weight overflow")
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|k| kernel.iter().map(|v| v[k]).collect())
        .collect()
}

pub(crate) type AlgebraWithCandidates<E> = (GradedAlgebra<E>, Vec<E>);

/// Builds the apolar algebra T/F^⊥ ≅ Derivs(F) over an elimination domain.
///
/// A_a has as basis the images θ∘F of a greedily chosen set of degree-`a`
/// monomials θ, written in the monomial coordinates of S_{d−a}. Returns the
/// non-unit pivots and contents met while choosing the monomials.
pub(crate) fn apolar_algebra_over<D>(
    dom: &D,
    n: usize,
    terms: &[(Monomial, D::Elem)],
    description: String,
) -> Result<AlgebraWithCandidates<D::Elem>>
where
    D: EliminationDomain,
    D::Elem: RingElem,
{
    let Some(d) = terms.first().map(|t| t.0.degree()) else {
        return Err(Error::Degenerate("zero form".into()));
    };
    if terms.iter().any(|t| t.0.degree() != d) {
        return Err(Error::NotHomogeneous);
    }
    let support: Vec<Monomial> = terms.iter().map(|t| t.0).collect();
    let var_weights = support_weights(n, &support);
    let rank = var_weights.first().map_or(0, |w| w.len());
    let form_weight = weight_of(&support[0], &var_weights, rank);

    let ambient: Vec<Vec<Monomial>> = (0..=d)
        .map(|a| monomials_desc(n, d - a, MonomialOrder::DegRevLex))
        .collect();
    let index: Vec<HashMap<Monomial, u32>> = ambient
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect())
        .collect();
    let ambient_weights = |a: usize| -> Vec<Weight> {
        ambient[a]
            .iter()
            .map(|m| {
                let w = weight_of(m, &var_weights, rank);
                form_weight.iter().zip(&w).map(|(x, y)| x - y).collect()
            })
            .collect()
    };
    let image = |theta: &Monomial| -> SparseRow<D::Elem> {
        let a = theta.degree() as usize;
        let mut row: SparseRow<D::Elem> = terms
            .iter()
            .filter_map(|(m, c)| {
                let (q, k) = theta.contract(m)?;
                Some((index[a][&q], c.elem_mul_int(k)))
            })
            .collect();
        row.sort_by_key(|x| x.0);
        row
    };

    let mut candidates = Vec::new();
    let mut cobases: Vec<Vec<Monomial>> = Vec::new();
    let mut bases: Vec<Vec<SparseRow<D::Elem>>> = Vec::new();
    for a in 0..=d {
        let mut ech = IncrementalEchelon::new(dom);
        let mut cob = Vec::new();
        let mut basis = Vec::new();
        for theta in monomials_desc(n, a, MonomialOrder::DegRevLex) {
            let row = image(&theta);
            if row.is_empty() {
                continue;
            }
            if ech.insert(row.clone()) {
                cob.push(theta);
                basis.push(row);
            }
        }
        candidates.extend(ech.nonunit_pivots);
        candidates.extend(ech.contents);
        cobases.push(cob);
        bases.push(basis);
    }

    let mut pieces = Vec::with_capacity(d as usize + 1);
    for a in 0..=d as usize {
        let products = if a < d as usize {
            Products {
                rows: cobases[a]
                    .iter()
                    .map(|theta| (0..n).map(|k| image(&theta.mul_var(k))).collect())
                    .collect(),
                target_dim: ambient[a + 1].len(),
                target_weights: ambient_weights(a + 1),
            }
        } else {
            Products {
                rows: cobases[a].iter().map(|_| vec![Vec::new(); n]).collect(),
                target_dim: 0,
                target_weights: Vec::new(),
            }
        };
        pieces.push(Piece {
            ambient_dim: ambient[a].len(),
            basis: std::mem::take(&mut bases[a]),
            basis_weights: cobases[a]
                .iter()
                .map(|m| weight_of(m, &var_weights, rank))
                .collect(),
            labels: cobases[a]
                .iter()
                .map(|m| format!("{m}∘F").replace('x', "y"))
                .collect(),
            products: Some(products),
        });
    }
    let alg = GradedAlgebra {
        n_vars: n,
        pieces,
        closed: true,
        variable_weights: var_weights,
        description,
    };
    Ok((alg, candidates))
}

/// T/F^⊥ for a homogeneous form F.
pub fn algebra_from_apolar<C: Scalar>(f: &Poly<C>) -> Result<GradedAlgebra<C>> {
    algebra_from_apolar_named(f, format!("T/F^perp, F = {f}"))
}

pub fn algebra_from_apolar_named<C: Scalar>(
    f: &Poly<C>,
    description: String,
) -> Result<GradedAlgebra<C>> {
    let terms: Vec<(Monomial, C)> = f.terms().map(|(m, c)| (*m, c.clone())).collect();
    let dom = FieldDomain::<C>::default();
    Ok(apolar_algebra_over(&dom, f.n_vars(), &terms, description)?.0)
}

/// T/I for a monomial ideal I, computed in degrees 0..=j_max.
pub fn algebra_from_monomial_quotient<C: Scalar>(
    generators: &[Monomial],
    n: usize,
    j_max: usize,
) -> Result<GradedAlgebra<C>> {
    if let Some(g) = generators.iter().find(|g| g.n_vars() != n) {
        return Err(Error::VarCountMismatch {
            left: n,
            right: g.n_vars(),
        });
    }
    let standard = |j: usize| -> Vec<Monomial> {
        monomials_desc(n, j as u32, MonomialOrder::DegRevLex)
            .into_iter()
            .filter(|m| !generators.iter().any(|g| g.divides(m)))
            .collect()
    };
    let weights: Vec<Weight> = (0..n)
        .map(|k| (0..n).map(|l| i64::from(k == l)).collect())
        .collect();
    let exps = |m: &Monomial| -> Weight { m.exps().iter().map(|&e| e as i64).collect() };
    let mut std_pieces: Vec<Vec<Monomial>> = Vec::new();
    let mut closed = false;
    for j in 0..=j_max + 1 {
        let s = standard(j);
        if s.is_empty() {
            closed = true;
            break;
        }
        std_pieces.push(s);
    }
    let stored = if closed { std_pieces.len() } else { j_max + 1 };
    let mut pieces = Vec::with_capacity(stored);
    for j in 0..stored {
        let next: &[Monomial] = std_pieces.get(j + 1).map_or(&[], |v| v.as_slice());
        let next_index: HashMap<Monomial, u32> = next
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        let cur = &std_pieces[j];
        pieces.push(Piece {
            ambient_dim: cur.len(),
            basis: (0..cur.len()).map(|i| vec![(i as u32, C::one())]).collect(),
            basis_weights: cur.iter().map(exps).collect(),
            labels: cur
                .iter()
                .map(|m| m.to_string().replace('x', "y"))
                .collect(),
            products: Some(Products {
                rows: cur
                    .iter()
                    .map(|m| {
                        (0..n)
                            .map(|k| match next_index.get(&m.mul_var(k)) {
                                Some(&c) => vec![(c, C::one())],
                                None => Vec::new(),
                            })
                            .collect()
                    })
                    .collect(),
                target_dim: next.len(),
                target_weights: next.iter().map(exps).collect(),
            }),
        });
    }
    Ok(GradedAlgebra {
        n_vars: n,
        pieces,
        closed,
        variable_weights: weights,
        description: format!(
            "T/({}) in {n} variables",
            generators
                .iter()
                .map(|g| g.to_string().replace('x', "y"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    })
}

/// Coordinate ring of a finite set of points of projective space,
/// computed in degrees 0..=j_max.
///
/// A_j is the image of evaluation S_j → k^N. Once it is all of k^N the
/// standard basis is used; multiplication by y_k scales coordinate p by the
/// k-th coordinate of point p.
pub fn algebra_from_points<C: Scalar>(points: &[Vec<C>], j_max: usize) -> Result<GradedAlgebra<C>> {
    let Some(n) = points.first().map(|p| p.len()) else {
        return Err(Error::Degenerate("no points".into()));
    };
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch(
            "points of different lengths".into(),
        ));
    }
    for (i, p) in points.iter().enumerate() {
        if p.iter().all(|x| x.is_zero()) {
            return Err(Error::Degenerate(format!("point {i} is zero")));
        }
        for (j, q) in points.iter().enumerate().take(i) {
            if DenseMatrix::from_rows(vec![p.clone(), q.clone()]).rank() < 2 {
                return Err(Error::Degenerate(format!(
                    "points {j} and {i} are proportional"
                )));
            }
        }
    }
    let count = points.len();
    let eval = |m: &Monomial| -> SparseRow<C> {
        points
            .iter()
            .enumerate()
            .filter_map(|(p, pt)| {
                let mut v = C::one();
                for k in 0..n {
                    for _ in 0..m.exp(k) {
                        v = v * &pt[k];
                    }
                }
                (!v.is_zero()).then_some((p as u32, v))
            })
            .collect()
    };
    let dom = FieldDomain::<C>::default();
    let mut pieces = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let mut ech = IncrementalEchelon::new(&dom);
        let mut chosen = Vec::new();
        for m in monomials_desc(n, j as u32, MonomialOrder::DegRevLex) {
            if ech.rank() == count {
                break;
            }
            let row = eval(&m);
            if ech.insert(row.clone()) {
                chosen.push((m, row));
            }
        }
        let (basis, labels): (Vec<SparseRow<C>>, Vec<String>) = if chosen.len() == count {
            (0..count)
                .map(|p| (vec![(p as u32, C::one())], format!("e{}", p + 1)))
                .unzip()
        } else {
            chosen
                .into_iter()
                .map(|(m, row)| (row, m.to_string().replace('x', "y")))
                .unzip()
        };
        let rows = basis
            .iter()
            .map(|b| {
                (0..n)
                    .map(|k| {
                        b.iter()
                            .filter_map(|(p, v)| {
                                let w = v.clone() * &points[*p as usize][k];
                                (!w.is_zero()).then_some((*p, w))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        pieces.push(Piece {
            ambient_dim: count,
            basis_weights: vec![Vec::new(); basis.len()],
            basis,
            labels,
            products: Some(Products {
                rows,
                target_dim: count,
                target_weights: vec![Vec::new(); count],
            }),
        });
    }
    Ok(GradedAlgebra {
        n_vars: n,
        pieces,
        closed: false,
        variable_weights: vec![Vec::new(); n],
        description: format!("coordinate ring of {count} points in P^{}", n - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{det_poly, per_poly};

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn apolar_dims() {
        let det3 = det_poly::<Rational>(3);
        let a = algebra_from_apolar(&det3).unwrap();
        assert_eq!(a.dims(), vec![1, 9, 9, 1]);
        assert_eq!(a.weight_rank(), 5);
        let xyz = Poly::term(mono(&[1, 1, 1]), q(1));
        assert_eq!(algebra_from_apolar(&xyz).unwrap().dims(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn apolar_multiplication_commutes() {
        let per3 = per_poly::<Rational>(3);
        assert!(algebra_from_apolar(&per3)
            .unwrap()
            .check_commutativity()
            .unwrap());
    }

    #[test]
    fn monomial_quotient_dims() {
        let i = [mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 1, 1])];
        let a = algebra_from_monomial_quotient::<Rational>(&i, 3, 5).unwrap();
        assert_eq!(a.dims(), vec![1, 3, 3, 3, 3, 3]);
        assert!(!a.closed);
        let sq = [mono(&[2, 0, 0]), mono(&[0, 2, 0]), mono(&[0, 0, 2])];
        let a = algebra_from_monomial_quotient::<Rational>(&sq, 3, 6).unwrap();
        assert_eq!(a.dims(), vec![1, 3, 3, 1]);
        assert!(a.closed);
        assert!(a.check_commutativity().unwrap());
        let all2 = [mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])];
        assert_eq!(
            algebra_from_monomial_quotient::<Rational>(&all2, 2, 4)
                .unwrap()
                .dims(),
            vec![1, 2]
        );
    }

    #[test]
    fn point_dims() {
        let one = vec![vec![q(1), q(2), q(3)]];
        assert_eq!(algebra_from_points(&one, 4).unwrap().dims(), vec![1; 5]);
        let collinear = vec![
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(1), q(1), q(0)],
        ];
        assert_eq!(
            algebra_from_points(&collinear, 3).unwrap().dims(),
            vec![1, 2, 3, 3]
        );
        let proportional = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(matches!(
            algebra_from_points(&proportional, 2),
            Err(Error::Degenerate(_))
        ));
        let a = algebra_from_points(&collinear, 3).unwrap();
        assert!(a.check_commutativity().unwrap());
    }

    #[test]
    fn support_weight_lattice() {
        // x1x2 and x3² : weights w with w1 + w2 = 2 w3
        let w = support_weights(3, &[mono(&[1, 1, 0]), mono(&[0, 0, 2])]);
        assert_eq!(w[0].len(), 2);
        for k in 0..2 {
            assert_eq!(w[0][k] + w[1][k], 2 * w[2][k]);
        }
    }
}
