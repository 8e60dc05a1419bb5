use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{algebra_from_apolar, apolar_algebra_over};
use super::koszul::{koszul_strand_betti, strand_map, ExteriorBasis};
use crate::linalg::{parametric_rank, PolyDomain};
use crate::polyring::{det_poly, power_of_linear_form, Monomial, Poly};
use crate::scalars::{coprime_basis, rational_roots, Rational, Scalar, UniPoly};
use crate::{Error, Result};

/// The pencil of forms F(λ) = G + λH.
#[derive(Clone, Debug)]
pub struct LambdaFamily {
    pub constant: Poly<Rational>,
    pub linear: Poly<Rational>,
    pub description: String,
}

impl LambdaFamily {
    pub fn new(
        constant: Poly<Rational>,
        linear: Poly<Rational>,
        description: impl Into<String>,
    ) -> Result<Self> {
        if constant.n_vars() != linear.n_vars() {
            return Err(Error::VarCountMismatch {
                left: constant.n_vars(),
                right: linear.n_vars(),
            });
        }
        let sum = constant.clone() + &linear;
        if !sum.is_homogeneous() || sum.is_zero() {
            return Err(Error::NotHomogeneous);
        }
        if let (Some(a), Some(b)) = (constant.homogeneous_degree(), linear.homogeneous_degree()) {
            if a != b {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(LambdaFamily {
            constant,
            linear,
            description: description.into(),
        })
    }

    /// det₃ − λ(x₁ + x₅ + x₉)³ on row-major matrix variables.
    pub fn det3_minus_trace_cube() -> Self {
        let mut ell = vec![Rational::zero(); 9];
        for k in [0, 4, 8] {
            ell[k] = Rational::one();
        }
        LambdaFamily {
            constant: det_poly(3),
            linear: -power_of_linear_form(&ell, 3),
            description: "det3 - lambda*(x1+x5+x9)^3".into(),
        }
    }

    pub fn at(&self, lambda: &Rational) -> Poly<Rational> {
        self.constant.clone() + self.linear.scale(lambda)
    }

    fn terms(&self) -> Vec<(Monomial, UniPoly)> {
        let mut monos: Vec<Monomial> = self
            .constant
            .terms()
            .chain(self.linear.terms())
            .map(|(m, _)| *m)
            .collect();
        monos.sort();
        monos.dedup();
        monos
            .into_iter()
            .map(|m| {
                (
                    m,
                    UniPoly::from_coeffs(vec![self.constant.coeff(&m), self.linear.coeff(&m)]),
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialValue {
    pub lambda: Rational,
    pub dims: Vec<usize>,
    pub value: usize,
}

/// A strand Betti number over Q(λ) together with the exceptional values of
/// λ where the specialised number could differ.
#[derive(Clone, Debug, Serialize)]
pub struct ParametricStrandResult {
    pub family: String,
    pub i: usize,
    pub j: usize,
    pub generic_dims: Vec<usize>,
    pub generic_value: usize,
    /// Pairwise coprime squarefree polynomials whose roots contain every λ
    /// where a rank or a graded dimension may drop.
    pub pivot_polynomials: Vec<UniPoly>,
    pub resolved_specials: Vec<SpecialValue>,
    /// Factors of the pivot polynomials with no rational root.
    pub unresolved_specials: Vec<UniPoly>,
    /// Special values with the generic Hilbert function but a smaller Betti
    /// number; nonempty only on a defect.
    pub violations: Vec<Rational>,
}

impl ParametricStrandResult {
    pub fn max_value(&self) -> usize {
        self.resolved_specials
            .iter()
            .map(|s| s.value)
            .chain(std::iter::once(self.generic_value))
            .max()
            .unwrap()
    }

    pub fn fully_resolved(&self) -> bool {
        self.unresolved_specials.is_empty()
    }
}

/// β_{i,j} of T/F(λ)^⊥ for generic λ, with every rational exceptional value
/// recomputed exactly.
pub fn parametric_strand_betti(
    family: &LambdaFamily,
    i: usize,
    j: usize,
) -> Result<ParametricStrandResult> {
    let n = family.constant.n_vars();
    if i > n {
        return Err(Error::OutOfRange {
            what: "homological degree",
            detail: format!("{i} > {n}"),
        });
    }
    let (alg, mut candidates) =
        apolar_algebra_over(&PolyDomain, n, &family.terms(), family.description.clone())?;
    let dims = alg.dims();
    let mut generic_value = 0;
    if j >= i && dims.get(j - i).copied().unwrap_or(0) > 0 {
        let a = j - i;
        let ext = ExteriorBasis::new(n);
        let mut maps = vec![strand_map(&alg, &ext, i, a)?];
        if a >= 1 && i < n {
            maps.push(strand_map(&alg, &ext, i + 1, a - 1)?);
        }
        let mut ranks = 0;
        for map in maps {
            let results: Vec<_> = map
                .blocks
                .into_par_iter()
                .map(|(rows, ncols)| parametric_rank(rows, ncols))
                .collect();
            for r in results {
                ranks += r.rank;
                candidates.extend(r.nonunit_pivots);
                candidates.extend(r.contents);
            }
        }
        generic_value = ext.dim(i) * dims[a] - ranks;
    }

    let mut polys: Vec<UniPoly> = candidates
        .into_iter()
        .filter(|p| !p.is_constant())
        .map(|p| p.squarefree().monic())
        .collect();
    polys.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    polys.dedup();
    let basis = coprime_basis(&polys);

    let mut resolved = Vec::new();
    let mut unresolved = Vec::new();
    for f in &basis {
        let roots = rational_roots(f);
        let mut rest = f.clone();
        for r in &roots {
            rest = rest.div_exact(&UniPoly::from_coeffs(vec![-r.clone(), Rational::one()]));
            resolved.push(r.clone());
        }
        if !rest.is_constant() {
            unresolved.push(rest.monic());
        }
    }
    resolved.sort();
    resolved.dedup();
    let specials: Vec<Result<SpecialValue>> = resolved
        .par_iter()
        .map(|l| {
            let alg = algebra_from_apolar(&family.at(l))?;
            Ok(SpecialValue {
                lambda: l.clone(),
                dims: alg.dims(),
                value: koszul_strand_betti(&alg, i, j)?,
            })
        })
        .collect();
    let specials: Vec<SpecialValue> = specials.into_iter().collect::<Result<_>>()?;
    let violations = specials
        .iter()
        .filter(|s| s.dims == dims && s.value < generic_value)
        .map(|s| s.lambda.clone())
        .collect();
    Ok(ParametricStrandResult {
        family: family.description.clone(),
        i,
        j,
        generic_dims: dims,
        generic_value,
        pivot_polynomials: basis,
        resolved_specials: specials,
        unresolved_specials: unresolved,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn constant_family_has_no_candidates() {
        let xyz = Poly::term(Monomial::new(&[1, 1, 1]).unwrap(), q(1));
        let fam = LambdaFamily::new(xyz.clone(), Poly::zero(3), "xyz").unwrap();
        let r = parametric_strand_betti(&fam, 1, 2).unwrap();
        assert!(r.pivot_polynomials.is_empty());
        let exact = koszul_strand_betti(&algebra_from_apolar(&xyz).unwrap(), 1, 2).unwrap();
        assert_eq!(r.generic_value, exact);
        assert_eq!(exact, 3);
    }

    #[test]
    fn pencil_of_binary_cubics() {
        // x³ + λy³: a power when λ = 0, otherwise rank 2 with Hilbert function (1,2,2,1)
        let x3 = Poly::term(Monomial::new(&[3, 0]).unwrap(), q(1));
        let y3 = Poly::term(Monomial::new(&[0, 3]).unwrap(), q(1));
        let fam = LambdaFamily::new(x3, y3, "x^3 + lambda y^3").unwrap();
        let r = parametric_strand_betti(&fam, 1, 2).unwrap();
        assert_eq!(r.generic_dims, vec![1, 2, 2, 1]);
        assert_eq!(r.generic_value, 1);
        let zero = r
            .resolved_specials
            .iter()
            .find(|s| s.lambda == q(0))
            .unwrap();
        assert_eq!(zero.dims, vec![1, 1, 1, 1]);
        assert_eq!(zero.value, 0);
        assert!(r.violations.is_empty());
        assert!(r.fully_resolved());
    }
}
