//! Exact linear algebra: small dense matrices and sparse rank computation.

mod dense;
mod sparse;

pub use dense::{DenseMatrix, SpanSolver};
pub use sparse::{
    eliminate, Elimination, EliminationDomain, FieldDomain, IncrementalEchelon, IntegerDomain,
    PolyDomain, PrimeDomain, SparseRow,
};

use crate::scalars::{Rational, Scalar, UniPoly};
use crate::{Error, Result};

/// Rank over an exact field.
pub fn field_rank<C: Scalar>(rows: Vec<SparseRow<C>>, ncols: usize) -> usize {
    eliminate(&FieldDomain::<C>::default(), rows, ncols).rank
}

/// Rank over Q, computed fraction-free over Z.
pub fn rational_rank(rows: Vec<SparseRow<Rational>>, ncols: usize) -> usize {
    let rows = rows.into_iter().map(sparse::integer_row).collect();
    eliminate(&IntegerDomain, rows, ncols).rank
}

/// Rank of the reduction modulo `p`. Fails if some denominator vanishes mod `p`.
pub fn rank_mod_p(rows: Vec<SparseRow<Rational>>, ncols: usize, p: u64) -> Result<usize> {
    let mut reduced = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(row.len());
        for (c, e) in row {
            let r = e.mod_prime(p).ok_or(Error::BadModulus(p))?;
            if r != 0 {
                out.push((c, r));
            }
        }
        reduced.push(out);
    }
    Ok(eliminate(&PrimeDomain { p }, reduced, ncols).rank)
}

/// Generic rank over Q(λ), with the polynomials whose roots may lower it.
pub fn parametric_rank(rows: Vec<SparseRow<UniPoly>>, ncols: usize) -> Elimination<UniPoly> {
    eliminate(&PolyDomain, rows, ncols)
}
