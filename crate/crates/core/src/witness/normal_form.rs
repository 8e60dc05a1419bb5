use serde::{Deserialize, Serialize};

use crate::linalg::DenseMatrix;
use crate::polyring::{det_poly, linear_form, matrix_substitute};
use crate::scalars::{Rational, Scalar};
use crate::{Error, Result};

/// Substitution X ↦ s₁ X s₂ with s₁, s₂ ∈ SL_d bringing ℓ_A to normal form.
///
/// The coefficient matrix of the transformed form is s₁ᵗ A s₂ᵗ, stored as
/// `reduced`. For k < d it is diag(1,…,1,0,…,0) and lambda = 1. For k = d
/// it is diag(1,…,1,λ) with λ = det A; over a field containing c = λ^{1/d}
/// a further diagonal SL change makes it c·I, which is not carried out.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalFormResult {
    pub d: usize,
    pub k: usize,
    pub lambda: Rational,
    pub s1: Vec<Vec<Rational>>,
    pub s2: Vec<Vec<Rational>>,
    pub reduced: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormCheck {
    pub s1_in_sl: bool,
    pub s2_in_sl: bool,
    pub det_invariant: bool,
    pub form_matches: bool,
}

impl NormalFormCheck {
    pub fn all(&self) -> bool {
        self.s1_in_sl && self.s2_in_sl && self.det_invariant && self.form_matches
    }
}

impl NormalFormResult {
    /// The expected normal-form matrix for (d, k, λ).
    pub fn expected(&self) -> Vec<Vec<Rational>> {
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| match () {
                        _ if i != j || i >= self.k => Rational::zero(),
                        _ if self.k == self.d && i == self.d - 1 => self.lambda.clone(),
                        _ => Rational::one(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Re-derives every claim by substitution into det_d and ℓ_A.
    pub fn check(&self, a: &[Vec<Rational>]) -> Result<NormalFormCheck> {
        let d = self.d;
        let det = |m: &[Vec<Rational>]| DenseMatrix::from_rows(m.to_vec()).determinant();
        let det_d = det_poly::<Rational>(d);
        let flat: Vec<Rational> = a.iter().flatten().cloned().collect();
        let moved = matrix_substitute(&linear_form(&flat), &self.s1, &self.s2)?;
        let expected = self.expected();
        let form_matches = (0..d * d).all(|v| {
            let m = crate::polyring::Monomial::var(d * d, v);
            moved.coeff(&m) == expected[v / d][v % d]
                && self.reduced[v / d][v % d] == expected[v / d][v % d]
        }) && moved.len()
            == expected.iter().flatten().filter(|x| !x.is_zero()).count();
        Ok(NormalFormCheck {
            s1_in_sl: det(&self.s1).is_one(),
            s2_in_sl: det(&self.s2).is_one(),
            det_invariant: matrix_substitute(&det_d, &self.s1, &self.s2)? == det_d,
            form_matches,
        })
    }

    pub fn describe(&self) -> String {
        let diag: Vec<String> = (1..=self.k).map(|i| format!("x{i}{i}")).collect();
        let sum = diag.join(" + ");
        if self.k == self.d {
            format!("ℓ ↦ λ^(1/{}) ({sum}), λ = {}", self.d, self.lambda)
        } else {
            format!("ℓ ↦ {sum}")
        }
    }
}

fn rows(m: &DenseMatrix<Rational>, col0: usize, ncols: usize) -> Vec<Vec<Rational>> {
    (0..m.rows)
        .map(|i| m.row(i)[col0..col0 + ncols].to_vec())
        .collect()
}

/// Left transform of the RREF: returns (R, P) with R = P·M reduced.
fn reduce(m: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let d = m.len();
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..d).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let mut dm = DenseMatrix::from_rows(aug);
    dm.rref();
    (rows(&dm, 0, m[0].len()), rows(&dm, m[0].len(), d))
}

fn transpose(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let x = DenseMatrix::from_rows(a.to_vec()).mul(&DenseMatrix::from_rows(b.to_vec()));
    rows(&x, 0, x.cols)
}

pub fn normalize_linear_form(a: &[Vec<Rational>]) -> Result<NormalFormResult> {
    let d = a.len();
    if d == 0 || a.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch(
            "coefficient matrix must be square".into(),
        ));
    }
    if a.iter().flatten().all(|x| x.is_zero()) {
        return Err(Error::ZeroMatrix);
    }
    let (r, mut p) = reduce(a);
    let (_, qt) = reduce(&transpose(&r));
    let mut q = transpose(&qt);
    let k = DenseMatrix::from_rows(a.to_vec()).rank();
    let last = d - 1;
    let dp = DenseMatrix::from_rows(p.clone()).determinant().inv()?;
    for x in p[last].iter_mut() {
        *x = x.clone() * &dp;
    }
    let dq = DenseMatrix::from_rows(q.clone()).determinant().inv()?;
    for row in q.iter_mut() {
        row[last] = row[last].clone() * &dq;
    }
    let reduced = mat_mul(&mat_mul(&p, a), &q);
    let lambda = if k == d {
        DenseMatrix::from_rows(a.to_vec()).determinant()
    } else {
        Rational::one()
    };
    Ok(NormalFormResult {
        d,
        k,
        lambda,
        s1: transpose(&p),
        s2: transpose(&q),
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(v: &[[i64; 3]; 3]) -> Vec<Vec<Rational>> {
        v.iter()
            .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn corner_and_identity() {
        let r = normalize_linear_form(&m(&[[1, 0, 0], [0, 0, 0], [0, 0, 0]])).unwrap();
        assert_eq!((r.k, r.lambda.clone()), (1, Rational::one()));
        assert_eq!(r.s1, m(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(r.s2, r.s1);
        let r = normalize_linear_form(&m(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert_eq!((r.k, r.lambda.clone()), (3, Rational::one()));
        assert!(r
            .check(&m(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
            .unwrap()
            .all());
        assert!(matches!(
            normalize_linear_form(&m(&[[0; 3]; 3])),
            Err(Error::ZeroMatrix)
        ));
    }

    /// Random matrices of each rank as products of random factors.
    #[test]
    fn random_by_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..=3usize {
            let mut seen = 0;
            while seen < 20 {
                let u: Vec<Vec<Rational>> = (0..3)
                    .map(|_| {
                        (0..k)
                            .map(|_| Rational::from_i64(rng.gen_range(-5..=5)))
                            .collect()
                    })
                    .collect();
                let v: Vec<Vec<Rational>> = (0..k)
                    .map(|_| {
                        (0..3)
                            .map(|_| Rational::from_i64(rng.gen_range(-5..=5)))
                            .collect()
                    })
                    .collect();
                let a = mat_mul(&u, &v);
                if DenseMatrix::from_rows(a.clone()).rank() != k {
                    continue;
                }
                seen += 1;
                let r = normalize_linear_form(&a).unwrap();
                assert_eq!(r.k, k);
                assert!(r.check(&a).unwrap().all(), "{a:?}");
                if k == 3 {
                    assert_eq!(r.lambda, DenseMatrix::from_rows(a).determinant());
                }
            }
        }
    }
}
