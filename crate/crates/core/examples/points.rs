//! Betti numbers of 13 general points in P⁸.
//!
//! ```text
//! cargo run --release --example points -- 13 7
//! ```

use std::time::Instant;

use waring_syzygy::certify::points_betti_table;
use waring_syzygy::graded::RankField;

fn main() -> waring_syzygy::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(13, |s| s.parse().expect("point count"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));
    let start = Instant::now();
    let run = points_betti_table(count, seed, RankField::Exact, 3)?;
    println!(
        "{} (seed {seed}, {} re-rolls, {:.2?})",
        run.table.description,
        run.rerolls,
        start.elapsed()
    );
    print!("{}", run.table.render_text());
    Ok(())
}
