//! Apolar ideals of det_d and per_d: Hilbert functions, generator degrees,
//! and the four quadric families that generate them.
//!
//! ```text
//! cargo run --release --example apolar_ideal
//! ```

use waring_syzygy::apolar::{apolar_report, verify_shafiei_generators, MatrixForm};
use waring_syzygy::scalars::Rational;

fn main() -> waring_syzygy::Result<()> {
    for d in 2..=3 {
        for (which, name) in [(MatrixForm::Det, "det"), (MatrixForm::Per, "per")] {
            let r = apolar_report(&format!("{name}{d}"), &which.poly::<Rational>(d))?;
            println!(
                "{}: Hilbert function {:?}, generators by degree {:?}, concise {}",
                r.form, r.hilbert_function, r.generator_degrees, r.conciseness.is_concise
            );
            let g = verify_shafiei_generators(d, which)?;
            println!(
                "  squares/rows/cols/minors = {:?}, span {} of {}: {}",
                g.family_sizes,
                g.span_dimension,
                g.expected_dimension,
                if g.passed {
                    "generates (F^perp)_2"
                } else {
                    "MISMATCH"
                }
            );
        }
    }
    Ok(())
}
