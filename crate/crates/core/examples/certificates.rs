//! The two certificate chains: cactus rank ≥ 14 for det₃ and per₃, and
//! rank(det₃) ≥ 15.
//!
//! ```text
//! cargo run --release --example certificates
//! ```

use waring_syzygy::apolar::MatrixForm;
use waring_syzygy::certify::{cmd_rank14, cmd_rank15, CertifyOptions};

fn main() -> waring_syzygy::Result<()> {
    let opts = CertifyOptions::default();
    for which in [MatrixForm::Det, MatrixForm::Per] {
        print!("{}", cmd_rank14(which, &opts)?.render_text());
        println!();
    }
    let c = cmd_rank15(&opts)?;
    print!("{}", c.render_text());
    std::process::exit(c.verdict.exit_code());
}
