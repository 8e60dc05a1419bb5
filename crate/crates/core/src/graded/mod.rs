//! Graded quotients T/I and their Betti numbers via Koszul homology.
//!
//! β_{i,j}(T/I) is the homology of
//! Λ^{i+1} ⊗ A_{j−i−1} → Λ^i ⊗ A_{j−i} → Λ^{i−1} ⊗ A_{j−i+1}.
//! Each differential only needs multiplication by the variables into an
//! injective ambient copy of the next piece, so targets are written in
//! whatever coordinates the construction finds natural. Strands split into
//! blocks by the finest grading the presentation carries, and block ranks
//! are computed in parallel.

mod algebra;
mod family;
mod koszul;

pub use algebra::{
    algebra_from_apolar, algebra_from_apolar_named, algebra_from_monomial_quotient,
    algebra_from_points, support_weights, GradedAlgebra, Piece, Products, RingElem, Weight,
};
pub use family::{parametric_strand_betti, LambdaFamily, ParametricStrandResult, SpecialValue};
pub use koszul::{
    betti_table, betti_table_over, exterior_dim, koszul_square_is_zero, koszul_strand_betti,
    koszul_strand_betti_over, strand_map, strand_rank, BettiTable, ExteriorBasis, RankField,
    StrandMap,
};
