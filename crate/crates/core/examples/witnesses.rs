//! Exact upper-bound witnesses: the monomial expansion, Krishna–Makam,
//! Glynn's formula and the 18-term decomposition of det₃.
//!
//! ```text
//! cargo run --release --example witnesses
//! ```

use waring_syzygy::scalars::Rational;
use waring_syzygy::witness::{
    builtin_witnesses, glynn_decomposition, krishna_makam_witness, upper_bound_summary,
    LoadedWitness,
};

fn main() -> waring_syzygy::Result<()> {
    for (name, json) in builtin_witnesses() {
        let r = LoadedWitness::parse(json)?.verify()?;
        println!(
            "{name:<14} {} {} terms over {}: holds = {}",
            r.kind, r.terms, r.field, r.holds
        );
    }

    let km = krishna_makam_witness()?;
    println!(
        "\nKrishna-Makam: {} products, {} cubes, every product needed: {}",
        km.products,
        km.induced_cubes,
        km.each_product_needed.iter().all(|&b| b)
    );
    for d in 2..=4 {
        let (products, powers) = glynn_decomposition::<Rational>(d)?;
        println!(
            "Glynn d = {d}: {} products, {} powers",
            products.terms.len(),
            powers.terms.len()
        );
    }

    println!();
    for u in upper_bound_summary()? {
        println!(
            "rank({}) <= {:>2}  {}  verified {}",
            u.form, u.bound, u.method, u.verified
        );
    }
    Ok(())
}
