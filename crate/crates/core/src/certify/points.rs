use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graded::{algebra_from_points, betti_table_over, BettiTable, RankField};
use crate::polyring::monomial_count;
use crate::scalars::{Rational, Scalar};
use crate::{Error, Result};

/// Ambient dimension of the point sets drawn by [`random_points`].
pub const POINT_SPACE_DIM: usize = 9;

const MAX_ATTEMPTS: usize = 100;

/// `count` points of P⁸ with rational coordinates. The first nine are the
/// coordinate points; any further points have random integer coordinates in
/// [−9, 9]. Since PGL acts transitively on frames, general point sets of
/// size ≥ 9 can always be moved to this shape.
pub fn random_points(count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    let n = POINT_SPACE_DIM;
    (0..count)
        .map(|p| {
            if p < n {
                (0..n)
                    .map(|k| Rational::from_i64(i64::from(k == p)))
                    .collect()
            } else {
                (0..n)
                    .map(|_| Rational::from_i64(rng.gen_range(-9..=9)))
                    .collect()
            }
        })
        .collect()
}

/// Betti table of a generic point set, with the draw that produced it.
#[derive(Clone, Debug)]
pub struct PointsRun {
    pub points: Vec<Vec<Rational>>,
    pub rerolls: usize,
    pub hilbert_function: Vec<usize>,
    pub table: BettiTable,
}

/// Draws `count` points from `seed`, re-rolling until their Hilbert
/// function is generic, and computes β_{i,j} for j − i ≤ `rows`.
pub fn points_betti_table(
    count: usize,
    seed: u64,
    field: RankField,
    rows: usize,
) -> Result<PointsRun> {
    if count == 0 {
        return Err(Error::OutOfRange {
            what: "point count",
            detail: "0".into(),
        });
    }
    let n = POINT_SPACE_DIM;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let points = random_points(count, &mut rng);
        let alg = match algebra_from_points(&points, rows) {
            Ok(a) => a,
            Err(Error::Degenerate(why)) => {
                log::warn!("seed {seed}, draw {attempt}: {why}; drawing again");
                continue;
            }
            Err(e) => return Err(e),
        };
        let dims = alg.dims();
        let generic = (0..=rows).all(|j| dims[j] == monomial_count(n, j as u32).min(count));
        if !generic {
            log::warn!("seed {seed}, draw {attempt}: Hilbert function {dims:?} is not generic; drawing again");
            continue;
        }
        let mut table = betti_table_over(&alg, n, n + rows, field)?;
        table.description = format!("{count} points in P^{}", n - 1);
        return Ok(PointsRun {
            points,
            rerolls: attempt,
            hilbert_function: dims,
            table,
        });
    }
    Err(Error::Degenerate(format!(
        "no generic draw in {MAX_ATTEMPTS} attempts"
    )))
}
