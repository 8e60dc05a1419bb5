//! β₅,₆ for the pencil det₃ − λ(x₁ + x₅ + x₉)³ over Q(λ), with every
//! rational exceptional λ recomputed exactly.
//!
//! ```text
//! cargo run --release --example lambda_family
//! ```

use std::time::Instant;

use waring_syzygy::graded::{parametric_strand_betti, LambdaFamily};

fn main() -> waring_syzygy::Result<()> {
    let family = LambdaFamily::det3_minus_trace_cube();
    let start = Instant::now();
    let r = parametric_strand_betti(&family, 5, 6)?;
    println!(
        "{}: generic beta_5,6 = {}  ({:.2?})",
        r.family,
        r.generic_value,
        start.elapsed()
    );
    println!("generic Hilbert function {:?}", r.generic_dims);
    println!("exceptional polynomials:");
    for p in &r.pivot_polynomials {
        println!("  {p}");
    }
    for s in &r.resolved_specials {
        println!(
            "  lambda = {:>6}: Hilbert function {:?}, beta_5,6 = {}",
            s.lambda.to_string(),
            s.dims,
            s.value
        );
    }
    if r.fully_resolved() {
        println!("every exceptional value is rational and was checked");
    } else {
        println!("unresolved factors:");
        for p in &r.unresolved_specials {
            println!("  {p}");
        }
    }
    Ok(())
}
