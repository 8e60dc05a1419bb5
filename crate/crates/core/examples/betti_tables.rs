//! Betti tables of the apolar algebras of det₃ and per₃.
//!
//! ```text
//! cargo run --release --example betti_tables
//! ```

use std::time::Instant;

use waring_syzygy::graded::{algebra_from_apolar_named, betti_table};
use waring_syzygy::polyring::{det_poly, per_poly};
use waring_syzygy::scalars::Rational;

fn main() -> waring_syzygy::Result<()> {
    for (name, f) in [
        ("det3", det_poly::<Rational>(3)),
        ("per3", per_poly::<Rational>(3)),
    ] {
        let start = Instant::now();
        let alg = algebra_from_apolar_named(&f, format!("T/{name}^perp"))?;
        let table = betti_table(&alg, 9, 12)?;
        println!("{}  ({:.2?})", table.description, start.elapsed());
        print!("{}", table.render_text());
        println!("beta_5,6 = {}\n", table.get(5, 6));
    }
    Ok(())
}
