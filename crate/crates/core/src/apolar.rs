//! Catalecticants, apolar ideals and conciseness.
//!
//! `(F^⊥)_j` is stored degree by degree as a kernel basis in reduced row
//! echelon form, with columns indexed by the degree-`j` monomials of the dual
//! ring in descending degree-reverse-lex order.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::linalg::{DenseMatrix, FieldDomain, IncrementalEchelon, SparseRow};
use crate::polyring::{det_poly, monomial_count, per_poly, Monomial, MonomialOrder, Poly};
use crate::scalars::{Rational, Scalar};
use crate::{Error, Result};

/// Monomials of degree `d` in `n` variables, descending in `order`.
pub fn monomials_desc(n: usize, d: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut v = Monomial::all_of_degree(n, d);
    v.sort_by(|a, b| order.cmp(b, a));
    v
}

/// Matrix of `θ ↦ θ∘F` from T_a to S_{d−a}.
#[derive(Clone, Debug)]
pub struct Catalecticant<C> {
    pub a: u32,
    pub row_monomials: Vec<Monomial>,
    pub col_monomials: Vec<Monomial>,
    pub rows: Vec<SparseRow<C>>,
}

impl<C: Scalar> Catalecticant<C> {
    pub fn rank(&self) -> usize {
        C::sparse_rank(self.rows.clone(), self.col_monomials.len())
    }

    pub fn to_dense(&self) -> DenseMatrix<C> {
        let mut m = DenseMatrix::zeros(self.row_monomials.len(), self.col_monomials.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m[(i, *c as usize)] = v.clone();
            }
        }
        m
    }
}

pub fn catalecticant<C: Scalar>(f: &Poly<C>, a: u32) -> Result<Catalecticant<C>> {
    let d = f.degree()?;
    if a > d {
        return Err(Error::OutOfRange {
            what: "catalecticant degree",
            detail: format!("{a} > {d}"),
        });
    }
    let n = f.n_vars();
    let row_monomials = monomials_desc(n, a, MonomialOrder::DegRevLex);
    let col_monomials = monomials_desc(n, d - a, MonomialOrder::DegRevLex);
    let col_index: HashMap<Monomial, u32> = col_monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i as u32))
        .collect();
    let rows = row_monomials
        .iter()
        .map(|r| {
            let mut row: SparseRow<C> = f
                .terms()
                .filter_map(|(m, c)| {
                    let (q, k) = r.contract(m)?;
                    Some((col_index[&q], c.clone() * &C::from_i64(k as i64)))
                })
                .collect();
            row.sort_by_key(|x| x.0);
            row
        })
        .collect();
    Ok(Catalecticant {
        a,
        row_monomials,
        col_monomials,
        rows,
    })
}

/// (rank Cat₀, …, rank Cat_d): the Hilbert function of T/F^⊥.
pub fn hilbert_function<C: Scalar>(f: &Poly<C>) -> Result<Vec<usize>> {
    let d = f.degree()?;
    (0..=d).map(|a| Ok(catalecticant(f, a)?.rank())).collect()
}

pub fn essential_variable_count<C: Scalar>(f: &Poly<C>) -> Result<usize> {
    if f.degree()? == 0 {
        return Ok(0);
    }
    Ok(catalecticant(f, 1)?.rank())
}

pub fn is_concise<C: Scalar>(f: &Poly<C>) -> Result<bool> {
    Ok(essential_variable_count(f)? == f.n_vars())
}

/// max_a rank Cat_a(F).
pub fn catalecticant_lower_bound<C: Scalar>(f: &Poly<C>) -> Result<usize> {
    Ok(hilbert_function(f)?.into_iter().max().unwrap_or(0))
}

/// One graded piece of F^⊥.
#[derive(Clone, Debug)]
pub struct ApolarPiece<C> {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    /// Reduced row echelon basis; `None` when the piece is all of T_j.
    pub basis: Option<Vec<Vec<C>>>,
}

impl<C: Scalar> ApolarPiece<C> {
    pub fn dim(&self) -> usize {
        self.basis
            .as_ref()
            .map_or(self.monomials.len(), |b| b.len())
    }

    pub fn vector_to_poly(&self, n: usize, v: &[C]) -> Poly<C> {
        let mut p = Poly::zero(n);
        for (m, c) in self.monomials.iter().zip(v) {
            p.add_term(*m, c.clone());
        }
        p
    }

    fn sparse_basis(&self) -> Vec<SparseRow<C>> {
        match &self.basis {
            Some(b) => b
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (i as u32, c.clone()))
                        .collect()
                })
                .collect(),
            None => (0..self.monomials.len())
                .map(|i| vec![(i as u32, C::one())])
                .collect(),
        }
    }
}

/// F^⊥ in degrees 0..=d+1 together with a minimal generating set.
#[derive(Clone, Debug)]
pub struct ApolarIdeal<C> {
    pub n_vars: usize,
    pub form_degree: u32,
    pub pieces: Vec<ApolarPiece<C>>,
    pub generators: Vec<Poly<C>>,
}

impl<C: Scalar> ApolarIdeal<C> {
    pub fn basis(&self, j: u32) -> Vec<Poly<C>> {
        let piece = &self.pieces[j as usize];
        piece
            .sparse_basis()
            .into_iter()
            .map(|row| {
                let mut p = Poly::zero(self.n_vars);
                for (c, v) in row {
                    p.add_term(piece.monomials[c as usize], v);
                }
                p
            })
            .collect()
    }

    /// Number of minimal generators in each degree.
    pub fn generator_degrees(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            *out.entry(g.degree().unwrap()).or_insert(0) += 1;
        }
        out
    }
}

/// Left kernel of a catalecticant, in reduced row echelon form.
fn apolar_piece<C: Scalar>(f: &Poly<C>, j: u32) -> Result<ApolarPiece<C>> {
    let cat = catalecticant(f, j)?;
    let kernel = cat.to_dense().transpose().kernel();
    let basis = if kernel.is_empty() {
        kernel
    } else {
        let mut k = DenseMatrix::from_rows(kernel);
        let r = k.rref().len();
        (0..r).map(|i| k.row(i).to_vec()).collect()
    };
    Ok(ApolarPiece {
        degree: j,
        monomials: cat.row_monomials,
        basis: Some(basis),
    })
}

pub fn apolar_generators<C: Scalar>(f: &Poly<C>) -> Result<ApolarIdeal<C>> {
    let d = f.degree()?;
    let n = f.n_vars();
    let mut pieces: Vec<ApolarPiece<C>> = Vec::new();
    for j in 0..=d {
        pieces.push(apolar_piece(f, j)?);
    }
    pieces.push(ApolarPiece {
        degree: d + 1,
        monomials: monomials_desc(n, d + 1, MonomialOrder::DegRevLex),
        basis: None,
    });

    let mut generators = Vec::new();
    for j in 1..=d + 1 {
        let (lower, piece) = (&pieces[j as usize - 1], &pieces[j as usize]);
        if piece.dim() == 0 {
            continue;
        }
        let index: HashMap<Monomial, u32> = piece
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        let mut products = Vec::new();
        for row in lower.sparse_basis() {
            for k in 0..n {
                let mut p: SparseRow<C> = row
                    .iter()
                    .map(|(c, v)| (index[&lower.monomials[*c as usize].mul_var(k)], v.clone()))
                    .collect();
                p.sort_by_key(|x| x.0);
                products.push(p);
            }
        }
        let spanned = C::sparse_rank(products.clone(), piece.monomials.len());
        let missing = piece.dim() - spanned;
        if missing == 0 {
            continue;
        }
        let dom = FieldDomain::<C>::default();
        let mut ech = IncrementalEchelon::new(&dom);
        for p in products {
            ech.insert(p);
        }
        let mut found = 0;
        for row in piece.sparse_basis() {
            if found == missing {
                break;
            }
            if ech.insert(row.clone()) {
                let mut g = Poly::zero(n);
                for (c, v) in row {
                    g.add_term(piece.monomials[c as usize], v);
                }
                generators.push(g);
                found += 1;
            }
        }
    }
    Ok(ApolarIdeal {
        n_vars: n,
        form_degree: d,
        pieces,
        generators,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Conciseness {
    pub is_concise: bool,
    pub essential_variables: usize,
    pub n_vars: usize,
}

/// Summary of the apolar ideal of a form.
#[derive(Clone, Debug, Serialize)]
pub struct ApolarReport {
    pub form: String,
    pub hilbert_function: Vec<usize>,
    pub generator_degrees: BTreeMap<u32, usize>,
    pub conciseness: Conciseness,
    pub catalecticant_bound: usize,
}

pub fn apolar_report<C: Scalar>(name: &str, f: &Poly<C>) -> Result<ApolarReport> {
    let hilbert = hilbert_function(f)?;
    let ideal = apolar_generators(f)?;
    let essential = hilbert.get(1).copied().unwrap_or(0);
    Ok(ApolarReport {
        form: name.to_string(),
        catalecticant_bound: hilbert.iter().copied().max().unwrap_or(0),
        generator_degrees: ideal.generator_degrees(),
        conciseness: Conciseness {
            is_concise: essential == f.n_vars(),
            essential_variables: essential,
            n_vars: f.n_vars(),
        },
        hilbert_function: hilbert,
    })
}

/// Which of the two classical matrix forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixForm {
    Det,
    Per,
}

impl MatrixForm {
    pub fn poly<C: Scalar>(self, d: usize) -> Poly<C> {
        match self {
            MatrixForm::Det => det_poly(d),
            MatrixForm::Per => per_poly(d),
        }
    }
}

/// The quadrics y²ᵢⱼ, row products, column products, and 2×2 permanents
/// (for det) or determinants (for per) of the dual matrix Y.
pub fn matrix_form_quadrics<C: Scalar>(d: usize, which: MatrixForm) -> [Vec<Poly<C>>; 4] {
    let n = d * d;
    let y = |i: usize, j: usize| Monomial::var(n, i * d + j);
    let mono = |a: Monomial, b: Monomial| Poly::term(a.mul(&b), C::one());
    let mut squares = Vec::new();
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut minors = Vec::new();
    for i in 0..d {
        for j in 0..d {
            squares.push(mono(y(i, j), y(i, j)));
        }
    }
    for i in 0..d {
        for j1 in 0..d {
            for j2 in j1 + 1..d {
                rows.push(mono(y(i, j1), y(i, j2)));
                cols.push(mono(y(j1, i), y(j2, i)));
            }
        }
    }
    let sign = match which {
        MatrixForm::Det => C::one(),
        MatrixForm::Per => -C::one(),
    };
    for i in 0..d {
        for k in i + 1..d {
            for j in 0..d {
                for l in j + 1..d {
                    let a = mono(y(i, j), y(k, l));
                    let b = mono(y(i, l), y(k, j)).scale(&sign);
                    minors.push(a + b);
                }
            }
        }
    }
    [squares, rows, cols, minors]
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub d: usize,
    pub form: MatrixForm,
    pub family_sizes: [usize; 4],
    /// Generators with a nonzero contraction, as "generator -> contraction".
    pub failures: Vec<String>,
    pub span_dimension: usize,
    pub expected_dimension: usize,
    pub passed: bool,
}

/// Checks the four quadric families against the apolar ideal of det_d or per_d.
pub fn verify_shafiei_generators(d: usize, which: MatrixForm) -> Result<GeneratorCheck> {
    if !(2..=4).contains(&d) {
        return Err(Error::OutOfRange {
            what: "matrix size",
            detail: format!("{d} not in 2..=4"),
        });
    }
    let f: Poly<Rational> = which.poly(d);
    let n = d * d;
    let families = matrix_form_quadrics::<Rational>(d, which);
    let mut failures = Vec::new();
    for q in families.iter().flatten() {
        let c = q.contract(&f)?;
        if !c.is_zero() {
            failures.push(format!("{q} -> {c}"));
        }
    }
    let monomials = monomials_desc(n, 2, MonomialOrder::DegRevLex);
    let index: HashMap<Monomial, u32> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i as u32))
        .collect();
    let rows: Vec<SparseRow<Rational>> = families
        .iter()
        .flatten()
        .map(|q| {
            let mut r: SparseRow<Rational> =
                q.terms().map(|(m, c)| (index[m], c.clone())).collect();
            r.sort_by_key(|x| x.0);
            r
        })
        .collect();
    let span_dimension = Rational::sparse_rank(rows, monomials.len());
    let hilbert = hilbert_function(&f)?;
    let h2 = hilbert.get(2).copied().unwrap_or(0);
    let expected_dimension = monomial_count(n, 2) - h2;
    Ok(GeneratorCheck {
        d,
        form: which,
        family_sizes: [0, 1, 2, 3].map(|i| families[i].len()),
        passed: failures.is_empty() && span_dimension == expected_dimension,
        failures,
        span_dimension,
        expected_dimension,
    })
}

/// The 36 quadrics generating the apolar ideal of
/// μ·det₃ − λ(x₁ + x₅ + x₉)³, variables numbered row-major.
pub fn lambda_family_quadrics<C: Scalar>(mu: &C, lambda: &C) -> Vec<Poly<C>> {
    let y = |i: usize| Monomial::var(9, i - 1);
    let q = |terms: &[(i64, usize, usize)]| {
        let mut p = Poly::zero(9);
        for &(c, a, b) in terms {
            p.add_term(y(a).mul(&y(b)), C::from_i64(c));
        }
        p
    };
    let mut out = Vec::with_capacity(36);
    for i in [2, 3, 4, 6, 7, 8] {
        out.push(q(&[(1, i, i)]));
    }
    out.push(q(&[(1, 1, 1), (-1, 9, 9)]));
    out.push(q(&[(1, 5, 5), (-1, 9, 9)]));
    for (a, b) in [
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 7),
        (2, 3),
        (2, 5),
        (2, 8),
        (3, 6),
        (3, 9),
        (4, 5),
        (4, 6),
        (4, 7),
        (5, 6),
        (5, 8),
        (6, 9),
        (7, 8),
        (7, 9),
        (8, 9),
    ] {
        out.push(q(&[(1, a, b)]));
    }
    for (a, b, c, e) in [
        (1, 6, 3, 4),
        (1, 8, 2, 7),
        (2, 9, 3, 8),
        (2, 6, 3, 5),
        (4, 8, 5, 7),
        (4, 9, 6, 7),
    ] {
        out.push(q(&[(1, a, b), (1, c, e)]));
    }
    for (a, b, c, e) in [(1, 5, 2, 4), (1, 9, 3, 7), (5, 9, 6, 8)] {
        out.push(q(&[(1, a, b), (1, c, e), (-1, 9, 9)]));
    }
    let six_lambda = C::from_i64(-6) * lambda;
    let last = q(&[(1, 1, 1)]).scale(mu) + q(&[(1, 6, 8), (1, 3, 7), (1, 2, 4)]).scale(&six_lambda);
    out.push(last);
    out
}
