use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use waring_syzygy::apolar::{hilbert_function, is_concise};
use waring_syzygy::certify::points_betti_table;
use waring_syzygy::graded::{
    algebra_from_apolar, algebra_from_monomial_quotient, betti_table, betti_table_over,
    koszul_square_is_zero, GradedAlgebra, RankField,
};
use waring_syzygy::linalg::{rank_mod_p, rational_rank, DenseMatrix, SparseRow};
use waring_syzygy::polyring::{det_poly, per_poly, LinearChange, Monomial, Poly};
use waring_syzygy::scalars::{Cyclotomic6, Fp, PrimeField, Rational, Scalar};

const P: u64 = 32003;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic6> {
    (rational(), rational()).prop_map(|(a, b)| Cyclotomic6::new(a, b))
}

fn residue() -> impl Strategy<Value = Fp> {
    let f = PrimeField::new(P).unwrap();
    (0..P as i64).prop_map(move |v| f.elem(v))
}

fn field_laws<C: Scalar>(a: &C, b: &C, c: &C) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.clone() + b, b.clone() + a);
    prop_assert_eq!(a.clone() * b, b.clone() * a);
    prop_assert_eq!((a.clone() + b) + c, a.clone() + &(b.clone() + c));
    prop_assert_eq!((a.clone() * b) * c, a.clone() * &(b.clone() * c));
    prop_assert_eq!(
        a.clone() * &(b.clone() + c),
        a.clone() * b + &(a.clone() * c)
    );
    prop_assert_eq!(a.clone() - a, C::zero());
    if !a.is_zero() {
        prop_assert_eq!(a.clone() * &a.inv().unwrap(), C::one());
    }
    Ok(())
}

/// Up to 6 terms of degree ≤ `deg` in `n` variables with small integer coefficients.
fn small_poly(n: usize, deg: u32) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -4i64..=4), 0..6).prop_map(
        move |ts| {
            let mut p = Poly::zero(n);
            for (mut e, c) in ts {
                while e.iter().sum::<u32>() > deg {
                    let k = e.iter().position(|&x| x > 0).unwrap();
                    e[k] -= 1;
                }
                p.add_term(Monomial::new(&e).unwrap(), Rational::from_i64(c));
            }
            p
        },
    )
}

fn invertible_3x3() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(-3i64..=3, 9)
        .prop_map(|v| {
            (0..3)
                .map(|i| (0..3).map(|j| Rational::from_i64(v[3 * i + j])).collect())
                .collect::<Vec<_>>()
        })
        .prop_filter("singular", |m: &Vec<Vec<Rational>>| {
            !DenseMatrix::from_rows(m.clone()).determinant().is_zero()
        })
}

fn inverse(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let rows = (0..n)
        .map(|i| {
            let mut r = m[i].clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let mut aug = DenseMatrix::from_rows(rows);
    aug.rref();
    (0..n).map(|i| aug.row(i)[n..].to_vec()).collect()
}

fn dense_cubic(n: usize, coeffs: &[i64]) -> Poly<Rational> {
    let mut f = Poly::zero(n);
    for (m, &c) in Monomial::all_of_degree(n, 3).into_iter().zip(coeffs) {
        f.add_term(m, Rational::from_i64(c));
    }
    f
}

fn every_square_vanishes<C: Scalar>(alg: &GradedAlgebra<C>) -> bool {
    let n = alg.n_vars();
    let top = alg.dims().len();
    (1..n).all(|i| (1..top).all(|a| koszul_square_is_zero(alg, i, a).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        field_laws(&a, &b, &c)?;
    }

    #[test]
    fn cyclotomic_field_laws(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        field_laws(&a, &b, &c)?;
        prop_assert_eq!((a.clone() * &b).norm(), a.norm() * &b.norm());
    }

    #[test]
    fn prime_field_laws(a in residue(), b in residue(), c in residue()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a + b, b);
        if !a.is_zero() {
            prop_assert_eq!((a * a.inv().unwrap()).residue(), 1);
        }
    }

    #[test]
    fn contraction_is_bilinear(
        g in small_poly(3, 3), h in small_poly(3, 3), f in small_poly(3, 5), f2 in small_poly(3, 5), c in rational()
    ) {
        prop_assert_eq!((&g + &h).contract(&f).unwrap(), g.contract(&f).unwrap() + h.contract(&f).unwrap());
        prop_assert_eq!(g.contract(&(&f + &f2)).unwrap(), g.contract(&f).unwrap() + g.contract(&f2).unwrap());
        prop_assert_eq!(g.scale(&c).contract(&f).unwrap(), g.contract(&f).unwrap().scale(&c));
    }

    #[test]
    fn contraction_composes(g in small_poly(3, 2), h in small_poly(3, 2), f in small_poly(3, 6)) {
        prop_assert_eq!((&g * &h).contract(&f).unwrap(), g.contract(&h.contract(&f).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn substitution_is_undone_by_the_inverse(f in small_poly(3, 4), m in invertible_3x3()) {
        let fwd = LinearChange::new(m.clone()).unwrap();
        let back = LinearChange::new(inverse(&m)).unwrap();
        prop_assert_eq!(f.substitute(&fwd).unwrap().substitute(&back).unwrap(), f.clone());
    }

    #[test]
    fn rank_mod_p_never_exceeds_rational_rank(
        entries in prop::collection::vec((0u32..6, 0u32..6, -20i64..=20), 0..24)
    ) {
        let mut rows: Vec<SparseRow<Rational>> = vec![Vec::new(); 6];
        for (r, c, v) in entries {
            if v != 0 && !rows[r as usize].iter().any(|(k, _)| *k == c) {
                rows[r as usize].push((c, Rational::from_i64(v)));
            }
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|(k, _)| *k);
        }
        let exact = rational_rank(rows.clone(), 6);
        prop_assert!(rank_mod_p(rows.clone(), 6, 5).unwrap() <= exact);
        prop_assert!(rank_mod_p(rows, 6, P).unwrap() <= exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn hilbert_function_of_a_concise_cubic_is_palindromic(
        n in 1usize..=9, coeffs in prop::collection::vec(-3i64..=3, 165)
    ) {
        let f = dense_cubic(n, &coeffs);
        prop_assume!(!f.is_zero() && is_concise(&f).unwrap());
        let h = hilbert_function(&f).unwrap();
        prop_assert_eq!(h.clone(), vec![1, n, n, 1]);
        prop_assert!(h.iter().eq(h.iter().rev()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn koszul_differential_squares_to_zero_on_random_cubics(
        n in 2usize..=5, coeffs in prop::collection::vec(-2i64..=2, 35)
    ) {
        let f = dense_cubic(n, &coeffs);
        prop_assume!(!f.is_zero());
        let alg = algebra_from_apolar(&f).unwrap();
        prop_assert!(every_square_vanishes(&alg));
    }
}

#[test]
fn koszul_differential_squares_to_zero_on_named_algebras() {
    let x = |e: &[u32]| Monomial::new(e).unwrap();
    for f in [
        det_poly::<Rational>(3),
        per_poly(3),
        Poly::term(x(&[1, 1, 1]), Rational::one()),
    ] {
        assert!(every_square_vanishes(&algebra_from_apolar(&f).unwrap()));
    }
    let tuv = algebra_from_monomial_quotient::<Rational>(
        &[x(&[1, 1, 0]), x(&[1, 0, 1]), x(&[0, 1, 1])],
        3,
        4,
    )
    .unwrap();
    assert!(every_square_vanishes(&tuv));
}

#[test]
fn betti_tables_do_not_depend_on_thread_count() {
    let pool = |t| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .unwrap()
    };
    let tables = |t| {
        pool(t).install(|| {
            let det = betti_table(
                &algebra_from_apolar(&det_poly::<Rational>(3)).unwrap(),
                9,
                12,
            )
            .unwrap();
            let per = betti_table(
                &algebra_from_apolar(&per_poly::<Rational>(3)).unwrap(),
                9,
                12,
            )
            .unwrap();
            let points = points_betti_table(13, 1, RankField::Exact, 2)
                .unwrap()
                .table;
            (det, per, points)
        })
    };
    assert_eq!(tables(1), tables(4));
}

#[test]
fn prime_field_tables_agree_with_rational_ones() {
    for f in [det_poly::<Rational>(3), per_poly(3)] {
        let alg = algebra_from_apolar(&f).unwrap();
        let exact = betti_table(&alg, 9, 12).unwrap();
        let modp = betti_table_over(&alg, 9, 12, RankField::Prime(P)).unwrap();
        assert_eq!(exact.nonzero(), modp.nonzero());
    }
}
