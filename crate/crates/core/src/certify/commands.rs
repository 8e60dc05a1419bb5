use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, Evidence, FieldChoice, Step, Verdict};
use super::points::{points_betti_table, PointsRun};
use crate::apolar::{apolar_report, MatrixForm};
use crate::graded::{
    algebra_from_apolar_named, algebra_from_monomial_quotient, betti_table_over,
    koszul_strand_betti_over, parametric_strand_betti, BettiTable, LambdaFamily, RankField,
};
use crate::lexmac::{strand_threshold_report, ThresholdReport};
use crate::linalg::DenseMatrix;
use crate::polyring::{det_poly, power_of_linear_form, Monomial, Poly};
use crate::scalars::{Cyclotomic6, Rational, Scalar};
use crate::witness::{
    builtin_witnesses, char_obstruction_check, normalize_linear_form, upper_bound_summary,
    LoadedWitness, UpperBound, WitnessReport,
};
use crate::{Error, Result};

/// Number of points / degree bound refuted by the rank-14 argument.
pub const REFUTED_DEGREE: usize = 13;
const STRAND: (usize, usize) = (5, 6);

/// Shared settings for every command.
#[derive(Clone, Debug, Default)]
pub struct CertifyOptions {
    pub field: FieldChoice,
    pub seed: u64,
    /// Name of a certificate step to force to FAIL ("*" for all).
    pub inject_failure: Option<String>,
    pub i_max: Option<usize>,
    pub j_max: Option<usize>,
}

/// A form whose apolar algebra the `betti` command can resolve.
#[derive(Clone, Debug, PartialEq)]
pub enum BettiSource {
    /// T/F^⊥ for a named or loaded form.
    Form { name: String, poly: Poly<Rational> },
    /// T/I for a monomial ideal.
    MonomialIdeal {
        name: String,
        n_vars: usize,
        generators: Vec<Monomial>,
    },
}

impl BettiSource {
    /// det3, per3, xyz, tuv (the ideal (tu, tv, uv)) or a path to a JSON
    /// polynomial.
    pub fn parse(arg: &str) -> Result<Self> {
        let form = |name: &str, poly| {
            Ok(BettiSource::Form {
                name: name.into(),
                poly,
            })
        };
        match arg {
            "det3" => form("det3", MatrixForm::Det.poly(3)),
            "per3" => form("per3", MatrixForm::Per.poly(3)),
            "xyz" => form(
                "xyz",
                Poly::term(Monomial::new(&[1, 1, 1])?, Rational::one()),
            ),
            "tuv" => Ok(BettiSource::MonomialIdeal {
                name: "(tu, tv, uv)".into(),
                n_vars: 3,
                generators: vec![
                    Monomial::new(&[1, 1, 0])?,
                    Monomial::new(&[1, 0, 1])?,
                    Monomial::new(&[0, 1, 1])?,
                ],
            }),
            path => {
                let text = std::fs::read_to_string(PathBuf::from(path))
                    .map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))?;
                let poly: Poly<Rational> = serde_json::from_str(&text)?;
                form(path, poly)
            }
        }
    }

    fn n_vars(&self) -> usize {
        match self {
            BettiSource::Form { poly, .. } => poly.n_vars(),
            BettiSource::MonomialIdeal { n_vars, .. } => *n_vars,
        }
    }

    fn default_j_max(&self) -> Result<usize> {
        Ok(match self {
            BettiSource::Form { poly, .. } => self.n_vars() + poly.degree()? as usize,
            BettiSource::MonomialIdeal { .. } => self.n_vars() + 2,
        })
    }
}

fn rank_field(field: FieldChoice) -> RankField {
    match field {
        FieldChoice::Prime(p) => RankField::Prime(p),
        _ => RankField::Exact,
    }
}

/// Betti table of T/F^⊥ over the chosen field.
pub fn form_betti_table(
    name: &str,
    f: &Poly<Rational>,
    field: FieldChoice,
    i_max: usize,
    j_max: usize,
) -> Result<BettiTable> {
    let description = format!("T/F^perp, F = {name}");
    match field {
        FieldChoice::Cyclotomic6 => {
            let g = f.map_coeffs(Cyclotomic6::from_rational);
            betti_table_over(
                &algebra_from_apolar_named(&g, description)?,
                i_max,
                j_max,
                RankField::Exact,
            )
        }
        _ => betti_table_over(
            &algebra_from_apolar_named(f, description)?,
            i_max,
            j_max,
            rank_field(field),
        ),
    }
}

/// A single β_{i,j}(T/F^⊥) over the chosen field.
pub fn form_strand(f: &Poly<Rational>, i: usize, j: usize, field: FieldChoice) -> Result<usize> {
    match field {
        FieldChoice::Cyclotomic6 => {
            let g = f.map_coeffs(Cyclotomic6::from_rational);
            koszul_strand_betti_over(
                &algebra_from_apolar_named(&g, String::new())?,
                i,
                j,
                RankField::Exact,
            )
        }
        _ => koszul_strand_betti_over(
            &algebra_from_apolar_named(f, String::new())?,
            i,
            j,
            rank_field(field),
        ),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BettiOutput {
    Table(BettiTable),
    Strand {
        form: String,
        i: usize,
        j: usize,
        value: usize,
        field: String,
    },
}

pub fn cmd_betti(
    source: &BettiSource,
    strand: Option<(usize, usize)>,
    opts: &CertifyOptions,
) -> Result<BettiOutput> {
    let n = source.n_vars();
    let i_max = opts.i_max.unwrap_or(n);
    let j_max = opts.j_max.unwrap_or(source.default_j_max()?);
    match source {
        BettiSource::Form { name, poly } => match strand {
            Some((i, j)) => Ok(BettiOutput::Strand {
                form: name.clone(),
                i,
                j,
                value: form_strand(poly, i, j, opts.field)?,
                field: opts.field.to_string(),
            }),
            None => Ok(BettiOutput::Table(form_betti_table(
                name, poly, opts.field, i_max, j_max,
            )?)),
        },
        BettiSource::MonomialIdeal {
            name,
            n_vars,
            generators,
        } => {
            if opts.field == FieldChoice::Cyclotomic6 {
                return Err(Error::Unsupported(
                    "monomial ideals are resolved over Q or F_p".into(),
                ));
            }
            let alg = algebra_from_monomial_quotient::<Rational>(generators, *n_vars, j_max + 1)?;
            let field = rank_field(opts.field);
            match strand {
                Some((i, j)) => Ok(BettiOutput::Strand {
                    form: name.clone(),
                    i,
                    j,
                    value: koszul_strand_betti_over(&alg, i, j, field)?,
                    field: opts.field.to_string(),
                }),
                None => {
                    let mut t = betti_table_over(&alg, i_max, j_max, field)?;
                    t.description = format!("T/{name}");
                    Ok(BettiOutput::Table(t))
                }
            }
        }
    }
}

pub fn cmd_threshold(n: usize, degree: usize, i: usize) -> Result<ThresholdReport> {
    strand_threshold_report(n, degree, i)
}

fn concise_step(name: &str, label: &str, f: &Poly<Rational>) -> Result<Step> {
    let r = apolar_report(label, f)?;
    let c = &r.conciseness;
    Ok(Step::new(
        name,
        format!("{label} is concise, so its apolar ideal contains no linear form"),
        Evidence::Computed,
    )
    .input("form", label)
    .computed("hilbert_function", &r.hilbert_function)
    .computed("essential_variables", c.essential_variables)
    .outcome(
        format!(
            "{} essential variables of {}",
            c.essential_variables, c.n_vars
        ),
        Verdict::from_bool(c.is_concise),
    ))
}

fn threshold_step(n: usize) -> Result<(Step, u64)> {
    let r = strand_threshold_report(n, REFUTED_DEGREE, STRAND.0)?;
    let hs: Vec<String> = r
        .hvectors
        .iter()
        .map(|h| format!("{}: {}", h.h, h.bound))
        .collect();
    let step = Step::new(
        "threshold",
        format!(
            "every saturated ideal of {REFUTED_DEGREE} points in P^{} with no linear forms has beta_5,6 >= threshold \
             (lex ideal, Eliahou–Kervaire, consecutive cancellation after Peeva)",
            n - 1
        ),
        Evidence::Computed,
    )
    .input("embedding_dim", n)
    .input("degree", REFUTED_DEGREE)
    .computed("bounds_by_hvector", hs)
    .computed("threshold", r.threshold)
    .computed("argmin_h", r.argmin_h.to_string())
    .outcome(format!("threshold {}", r.threshold), Verdict::Pass);
    Ok((step, r.threshold))
}

fn monotonicity_step() -> Step {
    Step::new(
        "monotonicity",
        "if I ⊆ F^perp and I contains no linear form then beta_i,i+1(T/I) <= beta_i,i+1(T/F^perp)",
        Evidence::Cited,
    )
    .outcome("black-box inequality", Verdict::Pass)
}

/// PASS when β < threshold; the method says nothing otherwise.
pub fn compare_strand(beta: usize, threshold: u64) -> Verdict {
    if (beta as u64) < threshold {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    }
}

fn strand_step(
    name: &str,
    label: &str,
    f: &Poly<Rational>,
    threshold: u64,
    field: FieldChoice,
) -> Result<(Step, usize)> {
    let (i, j) = STRAND;
    let beta = form_strand(f, i, j, field)?;
    let verdict = compare_strand(beta, threshold);
    let rel = if verdict == Verdict::Pass { "<" } else { ">=" };
    let step = Step::new(
        name,
        format!("beta_{i},{j}(T/F^perp) for F = {label} is below the threshold"),
        Evidence::Computed,
    )
    .input("form", label)
    .input("field", field.to_string())
    .computed("beta_5_6", beta)
    .outcome(format!("{beta} {rel} {threshold}"), verdict);
    Ok((step, beta))
}

/// cactusrank(F) ≥ 14 for a form in 9 variables, when the strand argument applies.
pub fn rank14_certificate(
    label: &str,
    f: &Poly<Rational>,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let start = Instant::now();
    let mut cert = Certificate::new(
        format!(
            "rank({label}) >= cactusrank({label}) >= {}",
            REFUTED_DEGREE + 1
        ),
        &opts.field,
    );
    cert.push(concise_step("concise", label, f)?);
    let (t, threshold) = threshold_step(f.n_vars())?;
    let (s, _) = strand_step("betti", label, f, threshold, opts.field)?;
    cert.push(s);
    cert.push(t);
    cert.push(monotonicity_step());
    Ok(cert.finish(opts.inject_failure.as_deref(), start.elapsed()))
}

pub fn cmd_rank14(which: MatrixForm, opts: &CertifyOptions) -> Result<Certificate> {
    let label = match which {
        MatrixForm::Det => "det3",
        MatrixForm::Per => "per3",
    };
    rank14_certificate(label, &which.poly(3), opts)
}

fn trace_form(k: usize) -> Vec<Rational> {
    (0..9)
        .map(|v| Rational::from_i64(i64::from(v / 3 == v % 3 && v / 3 < k)))
        .collect()
}

fn normal_form_step(rng: &mut ChaCha8Rng, trials: usize) -> Result<Step> {
    let mut passed = [0usize; 3];
    for k in 1..=3usize {
        let mut done = 0;
        while done < trials {
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
            let a = DenseMatrix::from_rows(u).mul(&DenseMatrix::from_rows(v));
            if a.rank() != k {
                continue;
            }
            let rows: Vec<Vec<Rational>> = (0..3).map(|i| a.row(i).to_vec()).collect();
            let r = normalize_linear_form(&rows)?;
            done += 1;
            if r.k == k && r.check(&rows)?.all() {
                passed[k - 1] += 1;
            }
        }
    }
    let ok = passed.iter().all(|&p| p == trials);
    Ok(Step::new(
        "normal-form",
        "an SL3 x SL3 change of coordinates fixing det3 takes any nonzero linear form to x11, x11 + x22 \
         or lambda^(1/3) (x11 + x22 + x33)",
        Evidence::Computed,
    )
    .input("trials_per_rank", trials)
    .computed("passed_by_rank", passed)
    .outcome(format!("{}/{} trials verified exactly", passed.iter().sum::<usize>(), 3 * trials), Verdict::from_bool(ok)))
}

/// Number of random λ values checked exactly in the rank-15 chain.
pub const LAMBDA_SAMPLES: usize = 20;

/// rank(det₃) ≥ 15 via rank(det₃ − ℓ³) ≥ 14 for every linear form ℓ.
pub fn cmd_rank15(opts: &CertifyOptions) -> Result<Certificate> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let det = det_poly::<Rational>(3);
    let mut cert = Certificate::new("rank(det3) >= 15", &opts.field);

    let (threshold_s, threshold) = threshold_step(9)?;
    cert.push(threshold_s);
    cert.push(monotonicity_step());
    let (s, _) = strand_step("case-zero", "det3", &det, threshold, opts.field)?;
    cert.push(s);
    cert.push(normal_form_step(&mut rng, 20)?);

    for (k, name) in [(1usize, "case-rank1"), (2, "case-rank2")] {
        let label = if k == 1 {
            "det3 - x11^3"
        } else {
            "det3 - (x11 + x22)^3"
        };
        let f = det.clone() - power_of_linear_form(&trace_form(k), 3);
        let mut s = concise_step(&format!("{name}-concise"), label, &f)?;
        s.statement = format!("{label} is concise");
        cert.push(s);
        cert.push(strand_step(name, label, &f, threshold, opts.field)?.0);
    }

    let family = LambdaFamily::det3_minus_trace_cube();
    let par = parametric_strand_betti(&family, STRAND.0, STRAND.1)?;
    let generic_concise = par.generic_dims.get(1) == Some(&9);
    cert.push(
        Step::new(
            "case-rank3-generic",
            "beta_5,6 of T/F^perp for F = det3 - lambda (x11 + x22 + x33)^3 over Q(lambda), with F concise",
            Evidence::Computed,
        )
        .computed("hilbert_function", &par.generic_dims)
        .computed("beta_5_6", par.generic_value)
        .computed(
            "exceptional_polynomials",
            par.pivot_polynomials.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        )
        .outcome(
            format!("{} < {threshold}", par.generic_value),
            Verdict::from_bool(generic_concise && (par.generic_value as u64) < threshold),
        ),
    );
    let specials_ok = par.violations.is_empty()
        && par
            .resolved_specials
            .iter()
            .all(|s| s.dims.get(1) == Some(&9) && (s.value as u64) < threshold);
    let resolved: Vec<String> = par
        .resolved_specials
        .iter()
        .map(|s| {
            format!(
                "lambda = {}: {:?}, beta_5,6 = {}",
                s.lambda, s.dims, s.value
            )
        })
        .collect();
    cert.push(
        Step::new(
            "case-rank3-exceptional",
            "every rational lambda where a rank or the cobasis could drop is recomputed exactly",
            Evidence::Computed,
        )
        .computed("resolved", resolved)
        .computed(
            "unresolved",
            par.unresolved_specials
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>(),
        )
        .outcome(
            format!("max {} < {threshold}", par.max_value()),
            Verdict::from_bool(specials_ok),
        ),
    );

    let mut samples = Vec::new();
    let mut sample_ok = true;
    while samples.len() < LAMBDA_SAMPLES {
        let lambda = Rational::new(rng.gen_range(-50i64..=50), rng.gen_range(1i64..=12))?;
        if lambda.is_zero() {
            continue;
        }
        let f = family.at(&lambda);
        let beta = form_strand(&f, STRAND.0, STRAND.1, opts.field)?;
        let concise = crate::apolar::is_concise(&f)?;
        sample_ok &= concise && (beta as u64) < threshold;
        samples.push(format!("{lambda}: {beta}"));
    }
    cert.push(
        Step::new(
            "case-rank3-samples",
            "beta_5,6 at randomly sampled nonzero rational lambda",
            Evidence::Computed,
        )
        .input("seed", opts.seed)
        .input("field", opts.field.to_string())
        .computed("values", samples)
        .outcome(
            format!("all {LAMBDA_SAMPLES} samples concise and below {threshold}"),
            Verdict::from_bool(sample_ok),
        ),
    );
    cert.push(
        Step::new(
            "case-rank3-uniform",
            "the family is flat over k[lambda], so beta_5,6 <= 135 < 140 for every lambda",
            Evidence::PaperUniform,
        )
        .outcome("not recomputed", Verdict::Pass),
    );

    let mut char_ok = true;
    let mut char_notes = Vec::new();
    for p in [2, 3] {
        let r = char_obstruction_check(p)?;
        char_ok &= r.rank_infinite;
        char_notes.push(r.statement);
    }
    cert.push(
        Step::new(
            "characteristic",
            "the argument needs characteristic 0 or > 3; below that rank(det3) is infinite",
            Evidence::Computed,
        )
        .computed("notes", &char_notes)
        .outcome(
            "squarefree cubic coefficients of a cube are divisible by 6",
            Verdict::from_bool(char_ok),
        ),
    );

    if par.fully_resolved() {
        cert.label = Some("complete".into());
    } else {
        cert.label = Some("proof modulo flat-family step".into());
        cert.caveats.push(format!(
            "irrational exceptional lambda not checked: roots of {}",
            par.unresolved_specials
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    cert.caveats
        .push("valid in characteristic 0 or greater than 3".into());
    Ok(cert.finish(opts.inject_failure.as_deref(), start.elapsed()))
}

pub fn cmd_points(count: usize, opts: &CertifyOptions) -> Result<PointsRun> {
    let field = match opts.field {
        FieldChoice::Cyclotomic6 => {
            return Err(Error::Unsupported(
                "point sets are resolved over Q or F_p".into(),
            ))
        }
        f => rank_field(f),
    };
    let rows = opts.j_max.map_or(3, |j| {
        j.saturating_sub(crate::certify::POINT_SPACE_DIM).max(1)
    });
    points_betti_table(count, opts.seed, field, rows)
}

/// Verifies a witness file, or a shipped one given as `builtin:<name>`.
pub fn cmd_verify(arg: &str) -> Result<WitnessReport> {
    let w = match arg.strip_prefix("builtin:") {
        Some(name) => {
            let (_, json) = builtin_witnesses()
                .into_iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| Error::Parse(format!("no shipped witness named {name:?}")))?;
            LoadedWitness::parse(json)?
        }
        None => LoadedWitness::load(std::path::Path::new(arg))?,
    };
    w.verify()
}

pub fn cmd_upper_bounds() -> Result<Vec<UpperBound>> {
    upper_bound_summary()
}
