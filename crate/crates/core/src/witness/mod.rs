//! Explicit decompositions certifying upper bounds on Waring rank, and
//! normal forms of linear forms on matrix space.

mod normal_form;
mod obstruction;

pub use normal_form::{normalize_linear_form, NormalFormCheck, NormalFormResult};
pub use obstruction::{char_obstruction_check, CharObstructionReport};

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polyring::{det_poly, linear_form, per_poly, Monomial, Poly};
use crate::scalars::{Cyclotomic6, Rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Det,
    Per,
    /// x₁⋯x_d in d variables.
    Monomial,
}

impl Target {
    pub fn n_vars(self, d: usize) -> usize {
        match self {
            Target::Det | Target::Per => d * d,
            Target::Monomial => d,
        }
    }

    pub fn poly<C: Scalar>(self, d: usize) -> Result<Poly<C>> {
        let n = self.n_vars(d);
        if d == 0 || n > crate::polyring::MAX_VARS {
            return Err(Error::OutOfRange {
                what: "witness size",
                detail: format!("d = {d}"),
            });
        }
        Ok(match self {
            Target::Det => det_poly(d),
            Target::Per => per_poly(d),
            Target::Monomial => Poly::term(Monomial::new(&vec![1; d])?, C::one()),
        })
    }

    pub fn name(self, d: usize) -> String {
        match self {
            Target::Det => format!("det{d}"),
            Target::Per => format!("per{d}"),
            Target::Monomial => format!("x1*...*x{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm<C> {
    pub coeff: C,
    pub linear_form: Vec<C>,
}

/// scale · target = Σ cᵢ ℓᵢᵈ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "C: Scalar")]
pub struct PowerSumDecomposition<C> {
    pub target: Target,
    pub d: usize,
    pub scale: C,
    pub terms: Vec<PowerTerm<C>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductTerm<C> {
    pub coeff: C,
    pub factors: Vec<Vec<C>>,
}

/// scale · target = Σ cᵢ ∏ⱼ ℓᵢⱼ, each product having d factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "C: Scalar")]
pub struct ProductDecomposition<C> {
    pub target: Target,
    pub d: usize,
    pub scale: C,
    pub terms: Vec<ProductTerm<C>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, bound = "C: Scalar")]
pub enum Witness<C> {
    PowerSum(PowerSumDecomposition<C>),
    Product(ProductDecomposition<C>),
}

#[derive(Clone, Debug)]
pub struct Verification<C> {
    pub holds: bool,
    /// scale · target − Σ (terms).
    pub residual: Poly<C>,
    pub term_count: usize,
}

fn check_form<C>(form: &[C], n: usize) -> Result<()> {
    if form.len() != n {
        return Err(Error::MalformedWitness(format!(
            "linear form has {} coefficients, expected {n}",
            form.len()
        )));
    }
    Ok(())
}

fn finish<C: Scalar>(target: Poly<C>, scale: &C, parts: Vec<Poly<C>>) -> Verification<C> {
    let term_count = parts.len();
    let residual = parts
        .into_iter()
        .fold(target.scale(scale), |acc, p| acc - p);
    Verification {
        holds: residual.is_zero(),
        residual,
        term_count,
    }
}

impl<C: Scalar> PowerSumDecomposition<C> {
    pub fn rank_bound(&self) -> usize {
        self.terms.len()
    }

    pub fn verify(&self) -> Result<Verification<C>> {
        verify_decomposition(self)
    }

    /// Every copy of `self` with one coefficient (scale, term coefficient or
    /// linear-form entry) increased by 1.
    pub fn single_coefficient_perturbations(&self) -> Vec<Self> {
        let one = C::one();
        let mut out = Vec::new();
        let mut w = self.clone();
        w.scale = w.scale.clone() + &one;
        out.push(w);
        for (t, term) in self.terms.iter().enumerate() {
            let mut w = self.clone();
            w.terms[t].coeff = term.coeff.clone() + &one;
            out.push(w);
            for k in 0..term.linear_form.len() {
                let mut w = self.clone();
                w.terms[t].linear_form[k] = term.linear_form[k].clone() + &one;
                out.push(w);
            }
        }
        out
    }
}

/// Exact check of scale · target = Σ cᵢ ℓᵢᵈ.
pub fn verify_decomposition<C: Scalar>(dec: &PowerSumDecomposition<C>) -> Result<Verification<C>> {
    let target = dec.target.poly::<C>(dec.d)?;
    let n = target.n_vars();
    for t in &dec.terms {
        check_form(&t.linear_form, n)?;
    }
    let parts: Vec<Poly<C>> = dec
        .terms
        .par_iter()
        .map(|t| {
            linear_form(&t.linear_form)
                .pow(dec.d as u32)
                .scale(&t.coeff)
        })
        .collect();
    Ok(finish(target, &dec.scale, parts))
}

impl<C: Scalar> ProductDecomposition<C> {
    fn validate(&self) -> Result<Poly<C>> {
        let target = self.target.poly::<C>(self.d)?;
        for t in &self.terms {
            if t.factors.len() != self.d {
                return Err(Error::MalformedWitness(format!(
                    "product has {} factors, expected {}",
                    t.factors.len(),
                    self.d
                )));
            }
            for f in &t.factors {
                check_form(f, target.n_vars())?;
            }
        }
        Ok(target)
    }

    pub fn verify(&self) -> Result<Verification<C>> {
        let target = self.validate()?;
        let n = target.n_vars();
        let parts: Vec<Poly<C>> = self
            .terms
            .par_iter()
            .map(|t| {
                t.factors
                    .iter()
                    .fold(Poly::constant(n, t.coeff.clone()), |acc, f| {
                        acc * linear_form(f)
                    })
            })
            .collect();
        Ok(finish(target, &self.scale, parts))
    }

    /// Rewrites every product ℓ₁⋯ℓ_d through the identity for x₁⋯x_d,
    /// giving 2^{d−1} powers per product.
    pub fn expand(&self) -> Result<PowerSumDecomposition<C>> {
        self.validate()?;
        let m = monomial_expansion::<C>(self.d)?;
        let mut terms = Vec::with_capacity(self.terms.len() * m.terms.len());
        for t in &self.terms {
            for mt in &m.terms {
                let n = t.factors[0].len();
                let form: Vec<C> = (0..n)
                    .map(|k| {
                        t.factors
                            .iter()
                            .zip(&mt.linear_form)
                            .fold(C::zero(), |acc, (f, e)| acc + &(f[k].clone() * e))
                    })
                    .collect();
                terms.push(PowerTerm {
                    coeff: t.coeff.clone() * &mt.coeff,
                    linear_form: form,
                });
            }
        }
        Ok(PowerSumDecomposition {
            target: self.target,
            d: self.d,
            scale: self.scale.clone() * &m.scale,
            terms,
        })
    }

    pub fn single_coefficient_perturbations(&self) -> Vec<Self> {
        let one = C::one();
        let mut out = Vec::new();
        let mut w = self.clone();
        w.scale = w.scale.clone() + &one;
        out.push(w);
        for (t, term) in self.terms.iter().enumerate() {
            let mut w = self.clone();
            w.terms[t].coeff = term.coeff.clone() + &one;
            out.push(w);
            for (f, factor) in term.factors.iter().enumerate() {
                for k in 0..factor.len() {
                    let mut w = self.clone();
                    w.terms[t].factors[f][k] = factor[k].clone() + &one;
                    out.push(w);
                }
            }
        }
        out
    }
}

impl<C: Scalar> Witness<C> {
    pub fn verify(&self) -> Result<Verification<C>> {
        match self {
            Witness::PowerSum(w) => w.verify(),
            Witness::Product(w) => w.verify(),
        }
    }

    pub fn target(&self) -> Target {
        match self {
            Witness::PowerSum(w) => w.target,
            Witness::Product(w) => w.target,
        }
    }

    pub fn d(&self) -> usize {
        match self {
            Witness::PowerSum(w) => w.d,
            Witness::Product(w) => w.d,
        }
    }

    /// Number of d-th powers the witness certifies after expansion.
    pub fn rank_bound(&self) -> Result<usize> {
        Ok(match self {
            Witness::PowerSum(w) => w.terms.len(),
            Witness::Product(w) => w.terms.len() << (w.d - 1),
        })
    }

    pub fn single_coefficient_perturbations(&self) -> Vec<Self> {
        match self {
            Witness::PowerSum(w) => w
                .single_coefficient_perturbations()
                .into_iter()
                .map(Witness::PowerSum)
                .collect(),
            Witness::Product(w) => w
                .single_coefficient_perturbations()
                .into_iter()
                .map(Witness::Product)
                .collect(),
        }
    }
}

/// A witness file parsed over the smallest scalar domain that reads it.
#[derive(Clone, Debug)]
pub enum LoadedWitness {
    Rational(Witness<Rational>),
    Cyclotomic6(Witness<Cyclotomic6>),
}

/// Outcome of checking one witness, independent of its scalar domain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessReport {
    pub target: String,
    pub field: String,
    pub kind: String,
    pub terms: usize,
    pub rank_bound: usize,
    pub holds: bool,
    pub residual_terms: usize,
    pub residual: String,
}

fn report<C: Scalar>(w: &Witness<C>) -> Result<WitnessReport> {
    let v = w.verify()?;
    Ok(WitnessReport {
        target: w.target().name(w.d()),
        field: C::DOMAIN.to_string(),
        kind: match w {
            Witness::PowerSum(_) => "power sum".into(),
            Witness::Product(_) => "products of linear forms".into(),
        },
        terms: v.term_count,
        rank_bound: w.rank_bound()?,
        holds: v.holds,
        residual_terms: v.residual.len(),
        residual: v.residual.to_string(),
    })
}

impl LoadedWitness {
    pub fn parse(json: &str) -> Result<Self> {
        if let Ok(w) = serde_json::from_str::<Witness<Rational>>(json) {
            return Ok(LoadedWitness::Rational(w));
        }
        serde_json::from_str::<Witness<Cyclotomic6>>(json)
            .map(LoadedWitness::Cyclotomic6)
            .map_err(|e| Error::MalformedWitness(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn verify(&self) -> Result<WitnessReport> {
        match self {
            LoadedWitness::Rational(w) => report(w),
            LoadedWitness::Cyclotomic6(w) => report(w),
        }
    }
}

pub const DET3_18_JSON: &str = include_str!("../../data/det3_18.json");
pub const KRISHNA_MAKAM_JSON: &str = include_str!("../../data/krishna_makam.json");
pub const GLYNN_PER3_JSON: &str = include_str!("../../data/glynn_per3.json");
pub const XYZ_JSON: &str = include_str!("../../data/xyz.json");

/// The shipped witness files, by name.
pub fn builtin_witnesses() -> Vec<(&'static str, &'static str)> {
    vec![
        ("xyz", XYZ_JSON),
        ("krishna_makam", KRISHNA_MAKAM_JSON),
        ("glynn_per3", GLYNN_PER3_JSON),
        ("det3_18", DET3_18_JSON),
    ]
}

/// The 18-term decomposition of 18·det₃ with entries in Q(θ).
pub fn det3_eighteen_terms() -> PowerSumDecomposition<Cyclotomic6> {
    match serde_json::from_str(DET3_18_JSON).expect("shipped witness parses") {
        Witness::PowerSum(w) => w,
        Witness::Product(_) => unreachable!("det3_18 is a power sum"),
    }
}

fn sign_vectors(d: usize) -> Vec<Vec<i64>> {
    (0..1usize << (d - 1))
        .map(|mask| {
            let mut eps = vec![1i64];
            eps.extend((1..d).map(|k| if mask >> (d - 1 - k) & 1 == 1 { -1 } else { 1 }));
            eps
        })
        .collect()
}

/// 2^{d−1} d! · x₁⋯x_d = Σ_{ε ∈ {±1}^d, ε₁ = 1} (∏ε) (Σ εᵢxᵢ)^d.
pub fn monomial_expansion<C: Scalar>(d: usize) -> Result<PowerSumDecomposition<C>> {
    if d == 0 {
        return Err(Error::OutOfRange {
            what: "degree",
            detail: "0".into(),
        });
    }
    let factorial: i64 = (1..=d as i64).product();
    let terms = sign_vectors(d)
        .into_iter()
        .map(|eps| PowerTerm {
            coeff: C::from_i64(eps.iter().product()),
            linear_form: eps.iter().map(|&e| C::from_i64(e)).collect(),
        })
        .collect();
    let dec = PowerSumDecomposition {
        target: Target::Monomial,
        d,
        scale: C::from_i64((1i64 << (d - 1)) * factorial),
        terms,
    };
    ensure_verified(&dec.verify()?, "monomial expansion")?;
    Ok(dec)
}

fn ensure_verified<C: Scalar>(v: &Verification<C>, what: &str) -> Result<()> {
    if v.holds {
        Ok(())
    } else {
        Err(Error::MalformedWitness(format!(
            "{what}: residual {}",
            v.residual
        )))
    }
}

/// Glynn's formula 2^{d−1} per_d = Σ_{ε₁ = 1} (∏ε) ∏ᵢ (Σⱼ εⱼ xᵢⱼ), verified,
/// together with its expansion into 2^{2d−2} d-th powers.
pub fn glynn_decomposition<C: Scalar>(
    d: usize,
) -> Result<(ProductDecomposition<C>, PowerSumDecomposition<C>)> {
    if d == 0 || d * d > crate::polyring::MAX_VARS {
        return Err(Error::OutOfRange {
            what: "matrix size",
            detail: d.to_string(),
        });
    }
    let terms = sign_vectors(d)
        .into_iter()
        .map(|eps| ProductTerm {
            coeff: C::from_i64(eps.iter().product()),
            factors: (0..d)
                .map(|i| {
                    let mut f = vec![C::zero(); d * d];
                    for j in 0..d {
                        f[i * d + j] = C::from_i64(eps[j]);
                    }
                    f
                })
                .collect(),
        })
        .collect();
    let products = ProductDecomposition {
        target: Target::Per,
        d,
        scale: C::from_i64(1 << (d - 1)),
        terms,
    };
    ensure_verified(&products.verify()?, "Glynn products")?;
    let powers = products.expand()?;
    ensure_verified(&powers.verify()?, "Glynn powers")?;
    Ok((products, powers))
}

/// d! signed products of coordinates, one per permutation.
pub fn laplace_products<C: Scalar>(target: Target, d: usize) -> Result<ProductDecomposition<C>> {
    let f = target.poly::<C>(d)?;
    let n = f.n_vars();
    let terms = f
        .terms()
        .map(|(m, c)| ProductTerm {
            coeff: c.clone(),
            factors: (0..n)
                .filter(|&k| m.exp(k) > 0)
                .map(|k| {
                    let mut v = vec![C::zero(); n];
                    v[k] = C::one();
                    v
                })
                .collect(),
        })
        .collect();
    Ok(ProductDecomposition {
        target,
        d,
        scale: C::one(),
        terms,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KrishnaMakamReport {
    pub products: usize,
    pub holds: bool,
    pub induced_cubes: usize,
    pub expansion_holds: bool,
    /// For each product, whether the identity fails once it is dropped.
    pub each_product_needed: Vec<bool>,
}

pub fn krishna_makam_products() -> ProductDecomposition<Rational> {
    match serde_json::from_str(KRISHNA_MAKAM_JSON).expect("shipped witness parses") {
        Witness::Product(w) => w,
        Witness::PowerSum(_) => unreachable!("Krishna–Makam is a product witness"),
    }
}

pub fn krishna_makam_witness() -> Result<KrishnaMakamReport> {
    let w = krishna_makam_products();
    let holds = w.verify()?.holds;
    let expanded = w.expand()?;
    let expansion_holds = expanded.verify()?.holds;
    let each_product_needed = (0..w.terms.len())
        .map(|k| {
            let mut sub = w.clone();
            sub.terms.remove(k);
            sub.verify().map(|v| !v.holds)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KrishnaMakamReport {
        products: w.terms.len(),
        holds,
        induced_cubes: expanded.terms.len(),
        expansion_holds,
        each_product_needed,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UpperBound {
    pub form: String,
    pub method: String,
    pub bound: usize,
    pub verified: bool,
}

/// Certified upper bounds for the 3×3 determinant and permanent.
pub fn upper_bound_summary() -> Result<Vec<UpperBound>> {
    let mut out = Vec::new();
    for (target, form) in [(Target::Det, "det3"), (Target::Per, "per3")] {
        let naive = laplace_products::<Rational>(target, 3)?.expand()?;
        out.push(UpperBound {
            form: form.into(),
            method: "Laplace expansion, 6 monomials of rank 4".into(),
            bound: naive.terms.len(),
            verified: naive.verify()?.holds,
        });
    }
    let km = krishna_makam_products().expand()?;
    out.push(UpperBound {
        form: "det3".into(),
        method: "Krishna–Makam, 5 products of rank 4".into(),
        bound: km.terms.len(),
        verified: km.verify()?.holds,
    });
    let eighteen = det3_eighteen_terms();
    out.push(UpperBound {
        form: "det3".into(),
        method: "explicit 18-term decomposition over Q(θ)".into(),
        bound: eighteen.terms.len(),
        verified: eighteen.verify()?.holds,
    });
    let (_, glynn) = glynn_decomposition::<Rational>(3)?;
    out.push(UpperBound {
        form: "per3".into(),
        method: "Glynn, 4 products of rank 4".into(),
        bound: glynn.terms.len(),
        verified: glynn.verify()?.holds,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn xy_and_xyz() {
        let m2 = monomial_expansion::<Rational>(2).unwrap();
        assert_eq!(m2.scale, q(4));
        assert_eq!(m2.terms.len(), 2);
        let m3 = monomial_expansion::<Rational>(3).unwrap();
        assert_eq!((m3.scale.clone(), m3.terms.len()), (q(24), 4));
        let m4 = monomial_expansion::<Rational>(4).unwrap();
        assert_eq!(m4.terms.len(), 8);
        let LoadedWitness::Rational(xyz) = LoadedWitness::parse(XYZ_JSON).unwrap() else {
            panic!("xyz is rational")
        };
        assert!(xyz.verify().unwrap().holds);
    }

    #[test]
    fn glynn() {
        let (p2, e2) = glynn_decomposition::<Rational>(2).unwrap();
        assert_eq!((p2.terms.len(), e2.terms.len()), (2, 4));
        let (p3, e3) = glynn_decomposition::<Rational>(3).unwrap();
        assert_eq!(e3.terms.len(), 16);
        let LoadedWitness::Rational(Witness::Product(shipped)) =
            LoadedWitness::parse(GLYNN_PER3_JSON).unwrap()
        else {
            panic!("Glynn file is a rational product witness")
        };
        assert_eq!(shipped, p3);
        let (_, e4) = glynn_decomposition::<Rational>(4).unwrap();
        assert_eq!(e4.terms.len(), 64);
    }

    #[test]
    fn krishna_makam() {
        let r = krishna_makam_witness().unwrap();
        assert!(r.holds && r.expansion_holds);
        assert_eq!((r.products, r.induced_cubes), (5, 20));
        assert!(r.each_product_needed.iter().all(|&b| b));
    }

    #[test]
    fn eighteen_terms() {
        let w = det3_eighteen_terms();
        let v = w.verify().unwrap();
        assert!(v.holds, "residual {}", v.residual);
        assert_eq!(v.term_count, 18);
    }

    #[test]
    fn upper_bounds() {
        let s = upper_bound_summary().unwrap();
        let bounds: Vec<(String, usize, bool)> = s
            .into_iter()
            .map(|u| (u.form, u.bound, u.verified))
            .collect();
        assert_eq!(
            bounds,
            vec![
                ("det3".into(), 24, true),
                ("per3".into(), 24, true),
                ("det3".into(), 20, true),
                ("det3".into(), 18, true),
                ("per3".into(), 16, true),
            ]
        );
    }

    #[test]
    fn perturbations_break_every_witness() {
        for (name, json) in builtin_witnesses() {
            let n = match LoadedWitness::parse(json).unwrap() {
                LoadedWitness::Rational(w) => {
                    let ps = w.single_coefficient_perturbations();
                    assert!(ps.iter().all(|p| !p.verify().unwrap().holds), "{name}");
                    ps.len()
                }
                LoadedWitness::Cyclotomic6(w) => {
                    let ps = w.single_coefficient_perturbations();
                    assert!(ps.iter().all(|p| !p.verify().unwrap().holds), "{name}");
                    ps.len()
                }
            };
            assert!(n > 1);
        }
    }

    #[test]
    fn malformed() {
        let bad =
            r#"{"target":"det","d":3,"scale":"1","terms":[{"coeff":"1","linear_form":["1","2"]}]}"#;
        let w = LoadedWitness::parse(bad).unwrap();
        assert!(matches!(w.verify(), Err(Error::MalformedWitness(_))));
        assert!(LoadedWitness::parse("{}").is_err());
    }
}
