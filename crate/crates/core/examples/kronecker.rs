//! The Kronecker quiver with valuation 2: both multiplication identities, literally
//! and through the general theorems.
//!
//! cargo run --release --example kronecker -- 3

use qca::ffrep::Bounds;
use qca::verify::kronecker_example;

fn main() -> qca::Result<()> {
    let q0: u32 = std::env::args().nth(1).map(|s| s.parse().expect("q0 is an integer")).unwrap_or(2);
    let k = kronecker_example(q0, Bounds::default())?;
    for line in &k.lines {
        println!("{line}");
    }
    println!("{}", k.report.summary_line());
    if !k.ok() {
        std::process::exit(1);
    }
    Ok(())
}
