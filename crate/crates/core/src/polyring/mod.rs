//! Sparse homogeneous polynomials, the apolarity action and the classical
//! forms on matrix space.
//!
//! Matrix-space variables are flattened row-major: x₁,…,x₉ stand for
//! x₁₁, x₁₂, x₁₃, x₂₁, …, x₃₃.

mod monomial;
mod poly;

pub use monomial::{binomial, monomial_count, Monomial, MonomialOrder, MAX_VARS};
pub use poly::{LinearChange, Poly};

use crate::scalars::Scalar;
use crate::{Error, Result};

fn permutations(d: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(
        prefix: &mut Vec<usize>,
        used: &mut [bool],
        odd: bool,
        out: &mut Vec<(Vec<usize>, bool)>,
    ) {
        let d = used.len();
        if prefix.len() == d {
            out.push((prefix.clone(), odd));
            return;
        }
        for v in 0..d {
            if used[v] {
                continue;
            }
            let inversions = prefix.iter().filter(|&&p| p > v).count();
            used[v] = true;
            prefix.push(v);
            rec(prefix, used, odd ^ (inversions % 2 == 1), out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], false, &mut out);
    out
}

fn matrix_form<C: Scalar>(d: usize, signed: bool) -> Poly<C> {
    assert!(d >= 1 && d * d <= MAX_VARS, "matrix size out of range");
    let n = d * d;
    let mut p = Poly::zero(n);
    for (perm, odd) in permutations(d) {
        let mut exps = vec![0u32; n];
        for (i, &j) in perm.iter().enumerate() {
            exps[i * d + j] = 1;
        }
        let c = if signed && odd { -C::one() } else { C::one() };
        p.add_term(Monomial::new(&exps).unwrap(), c);
    }
    p
}

/// det(xᵢⱼ) for a d×d matrix of variables, d ≤ 4.
pub fn det_poly<C: Scalar>(d: usize) -> Poly<C> {
    matrix_form(d, true)
}

/// per(xᵢⱼ) for a d×d matrix of variables, d ≤ 4.
pub fn per_poly<C: Scalar>(d: usize) -> Poly<C> {
    matrix_form(d, false)
}

/// The linear form Σ cᵢxᵢ.
pub fn linear_form<C: Scalar>(coeffs: &[C]) -> Poly<C> {
    let n = coeffs.len();
    let mut p = Poly::zero(n);
    for (i, c) in coeffs.iter().enumerate() {
        p.add_term(Monomial::var(n, i), c.clone());
    }
    p
}

/// (Σ cᵢxᵢ)ᵈ.
pub fn power_of_linear_form<C: Scalar>(coeffs: &[C], d: u32) -> Poly<C> {
    linear_form(coeffs).pow(d)
}

/// F(s₁ X s₂) for F on d×d matrix space.
pub fn matrix_substitute<C: Scalar>(f: &Poly<C>, s1: &[Vec<C>], s2: &[Vec<C>]) -> Result<Poly<C>> {
    let d = s1.len();
    if d * d != f.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "{d}×{d} substitution on {} variables",
            f.n_vars()
        )));
    }
    f.substitute(&LinearChange::matrix_space(s1, s2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    type P = Poly<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn contraction_examples() {
        let y1 = P::var(1, 0);
        let x4 = P::term(mono(&[4]), q(1));
        assert_eq!(y1.contract(&x4).unwrap(), P::term(mono(&[3]), q(4)));
        let xyz = P::term(mono(&[1, 1, 1]), q(1));
        assert_eq!(xyz.contract(&xyz).unwrap(), P::constant(3, q(1)));
        let det3 = det_poly::<Rational>(3);
        assert_eq!(det3.contract(&det3).unwrap(), P::constant(9, q(6)));
        assert!(P::var(2, 0).contract(&P::var(3, 0)).is_err());
    }

    #[test]
    fn determinant_and_permanent_shapes() {
        assert_eq!(det_poly::<Rational>(1), P::var(1, 0));
        let det2 = det_poly::<Rational>(2);
        let expect = P::term(mono(&[1, 0, 0, 1]), q(1)) - P::term(mono(&[0, 1, 1, 0]), q(1));
        assert_eq!(det2, expect);
        assert_eq!(per_poly::<Rational>(3).len(), 6);
        assert_eq!(det_poly::<Rational>(4).len(), 24);
        assert_eq!(det_poly::<Rational>(3).degree().unwrap(), 3);
    }

    #[test]
    fn laplace_expansion_first_row() {
        for d in 2..=4usize {
            let det = det_poly::<Rational>(d);
            let n = d * d;
            let minor = det_poly::<Rational>(d - 1);
            let mut sum = P::zero(n);
            for j in 0..d {
                // minor with row 0 and column j deleted
                let mut terms = Vec::new();
                for (m, c) in minor.terms() {
                    let mut exps = vec![0u32; n];
                    for r in 0..d - 1 {
                        for cc in 0..d - 1 {
                            let col = if cc < j { cc } else { cc + 1 };
                            exps[(r + 1) * d + col] = m.exp(r * (d - 1) + cc);
                        }
                    }
                    terms.push((mono(&exps), c.clone()));
                }
                let embedded = P::from_terms(n, terms).unwrap();
                let sign = if j % 2 == 0 { q(1) } else { q(-1) };
                sum = sum + (P::var(n, j) * embedded).scale(&sign);
            }
            assert_eq!(sum, det);
        }
    }

    #[test]
    fn linear_form_powers() {
        let sq = power_of_linear_form(&[q(1), q(1)], 2);
        assert_eq!(sq.coeff(&mono(&[1, 1])), q(2));
        let quarter = Rational::new(1, 4).unwrap();
        let diff = power_of_linear_form(&[q(1), q(1)], 2).scale(&quarter)
            - power_of_linear_form(&[q(1), q(-1)], 2).scale(&quarter);
        assert_eq!(diff, P::term(mono(&[1, 1]), q(1)));
        let mut coeffs = vec![q(0); 9];
        coeffs[0] = q(1);
        coeffs[4] = q(1);
        coeffs[8] = q(1);
        let cube = power_of_linear_form(&coeffs, 3);
        assert_eq!(cube.coeff(&mono(&[1, 0, 0, 0, 1, 0, 0, 0, 1])), q(6));
    }

    #[test]
    fn substitution_identities() {
        let det3 = det_poly::<Rational>(3);
        assert_eq!(det3.substitute(&LinearChange::identity(9)).unwrap(), det3);
        let s1 = vec![
            vec![q(1), q(2), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(3), q(1), q(1)],
        ];
        let s2 = vec![
            vec![q(1), q(0), q(0)],
            vec![q(5), q(1), q(0)],
            vec![q(-2), q(7), q(1)],
        ];
        assert_eq!(matrix_substitute(&det3, &s1, &s2).unwrap(), det3);
        // ℓ = tr(A Xᵗ) goes to tr(s₁ᵗ A s₂ᵗ Xᵗ)
        let a = [[q(1), q(0), q(2)], [q(0), q(-1), q(0)], [q(4), q(0), q(3)]];
        let ell = linear_form(&a.iter().flatten().cloned().collect::<Vec<_>>());
        let got = matrix_substitute(&ell, &s1, &s2).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                let mut expect = q(0);
                for i in 0..3 {
                    for j in 0..3 {
                        expect = expect + s1[i][k].clone() * &a[i][j] * &s2[l][j];
                    }
                }
                assert_eq!(got.coeff(&Monomial::var(9, k * 3 + l)), expect);
            }
        }
    }

    #[test]
    fn json_round_trip_is_ordered() {
        let p =
            P::term(mono(&[0, 2]), q(3)) + P::term(mono(&[1, 1]), Rational::new(-1, 2).unwrap());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"n_vars":2,"terms":[{"exps":[1,1],"coeff":"-1/2"},{"exps":[0,2],"coeff":"3"}]}"#
        );
        let back: P = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
