use serde::{Deserialize, Serialize};

use crate::polyring::{det_poly, Monomial, Poly};
use crate::scalars::{Rational, Scalar};
use crate::{Error, Result};

/// Symbolic variable count for the generic linear form Σ aᵢxᵢ.
const SYMBOLIC_VARS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharObstructionReport {
    pub p: u64,
    /// Coefficient of x₁x₂x₃ in (a₁x₁ + … + aₙxₙ)³, in the aᵢ.
    pub squarefree_coefficient: String,
    /// Every x_i x_j x_k coefficient (i < j < k) equals 6·aᵢaⱼaₖ.
    pub all_squarefree_are_six: bool,
    pub six_mod_p: u64,
    /// det₃ has squarefree monomials with coefficients nonzero mod p.
    pub det3_has_unit_squarefree_terms: bool,
    pub rank_infinite: bool,
    pub statement: String,
}

/// The coefficient of x_S in (Σ aᵢxᵢ)³, as a polynomial in the aᵢ.
fn coefficient_in_a(cube: &Poly<Rational>, n: usize, s: &[usize]) -> Poly<Rational> {
    let mut out = Poly::zero(n);
    for (m, c) in cube.terms() {
        if (0..n).all(|i| m.exp(n + i) == u32::from(s.contains(&i))) {
            let a: Vec<u32> = (0..n).map(|i| m.exp(i)).collect();
            out.add_term(Monomial::new(&a).unwrap(), c.clone());
        }
    }
    out
}

pub fn char_obstruction_check(p: u64) -> Result<CharObstructionReport> {
    if p != 2 && p != 3 {
        return Err(Error::BadModulus(p));
    }
    let n = SYMBOLIC_VARS;
    // variables a₁..aₙ, x₁..xₙ
    let mut form = Poly::<Rational>::zero(2 * n);
    for i in 0..n {
        form.add_term(Monomial::var(2 * n, i).mul_var(n + i), Rational::one());
    }
    let cube = form.pow(3);
    let mut all_six = true;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = coefficient_in_a(&cube, n, &[i, j, k]);
                let mut e = vec![0u32; n];
                e[i] = 1;
                e[j] = 1;
                e[k] = 1;
                all_six &= c == Poly::term(Monomial::new(&e)?, Rational::from_i64(6));
            }
        }
    }
    let sample = coefficient_in_a(&cube, n, &[0, 1, 2])
        .terms()
        .map(|(m, c)| format!("{c}*{m}").replace('x', "a"))
        .collect::<Vec<_>>()
        .join(" + ");
    let det = det_poly::<Rational>(3);
    let det3_has_unit_squarefree_terms = det
        .terms()
        .any(|(m, c)| m.is_squarefree() && c.mod_prime(p).is_some_and(|r| r != 0));
    let rank_infinite = all_six && 6 % p == 0 && det3_has_unit_squarefree_terms;
    Ok(CharObstructionReport {
        p,
        squarefree_coefficient: sample,
        all_squarefree_are_six: all_six,
        six_mod_p: 6 % p,
        det3_has_unit_squarefree_terms,
        rank_infinite,
        statement: if rank_infinite {
            format!("in characteristic {p} every sum of cubes has zero squarefree coefficients, so rank(det3) = ∞")
        } else {
            format!("no obstruction found in characteristic {p}")
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn obstruction_in_small_characteristic() {
        for p in [2, 3] {
            let r = char_obstruction_check(p).unwrap();
            assert!(r.all_squarefree_are_six && r.rank_infinite);
            assert_eq!(r.six_mod_p, 0);
            assert_eq!(r.squarefree_coefficient, "6*a1*a2*a3");
        }
        assert!(char_obstruction_check(5).is_err());
    }
}
