//! Reduction of a linear form ℓ = tr(AX) on 3×3 matrices to one of the
//! three normal forms under X ↦ s₁Xs₂ with s₁, s₂ ∈ SL₃.
//!
//! ```text
//! cargo run --release --example normal_form
//! ```

use waring_syzygy::scalars::{Rational, Scalar};
use waring_syzygy::witness::normalize_linear_form;

fn main() -> waring_syzygy::Result<()> {
    let m = |rows: [[i64; 3]; 3]| -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
            .collect()
    };
    for a in [
        m([[2, -4, 6], [1, -2, 3], [0, 0, 0]]),
        m([[1, 2, 0], [0, 1, 1], [1, 3, 1]]),
        m([[2, 1, 0], [0, 3, -1], [4, 0, 5]]),
    ] {
        let r = normalize_linear_form(&a)?;
        println!("{}", r.describe());
        println!("  checks: {:?}", r.check(&a)?);
    }
    Ok(())
}
