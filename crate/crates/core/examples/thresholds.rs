//! Hilbert functions of 13 points in P^8, their lex ideals, and the
//! resulting lower bound on β₅,₆.
//!
//! ```text
//! cargo run --release --example thresholds
//! ```

use waring_syzygy::lexmac::{ek_betti, lex_segment_ideal, strand_threshold_report};

fn main() -> waring_syzygy::Result<()> {
    for degree in [13, 14] {
        let r = strand_threshold_report(9, degree, 5)?;
        println!("degree {degree}:");
        for b in &r.hvectors {
            println!(
                "  h = {:<16} beta_5,6 = {:>3}  beta_4,6 = {:>3}  bound {:>3}",
                b.h.to_string(),
                b.beta_i_i1,
                b.beta_im1_i1,
                b.bound
            );
        }
        println!("  threshold {} attained by {}\n", r.threshold, r.argmin_h);
    }
    let r = strand_threshold_report(9, 13, 5)?;
    let lex = lex_segment_ideal(&r.argmin_h)?;
    println!(
        "lex ideal of {} has {} generators",
        r.argmin_h,
        lex.generators.len()
    );
    print!("{}", ek_betti(&lex)?.render_text());
    Ok(())
}
