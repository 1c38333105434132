//! Green's formula on a few quadruples of Kronecker modules over 𝔽₄, printing both
//! sides.

use std::sync::Arc;

use qca::ffrep::{Bounds, Catalog};
use qca::quiver::kronecker;
use qca::verify::{CheckConfig, Suite, Verifier};

fn main() -> qca::Result<()> {
    let cat = Arc::new(Catalog::new(Arc::new(kronecker(2)), Bounds::default())?);
    let (s1, s2) = (cat.simple(0), cat.simple(1));
    println!("Hall numbers F^E_(S1,S2) over the classes E of dimension (1,1):");
    for (e, eps) in cat.ext_profile(&s1, &s2)?.iter() {
        println!(
            "  E = {:<8} F = {}  extensions = {eps}  |Aut E| = {}",
            cat.describe(e),
            cat.hall_number(e, &s1, &s2)?,
            cat.aut_order(e)?
        );
    }
    println!("|Ext^1(S1,S2)| = {}^{}", cat.context().q0, cat.ext_count(&s1, &s2)?);

    let cfg = CheckConfig {
        cap: 2,
        total_cap: Some(2),
        ..CheckConfig::default()
    };
    let r = Verifier::new(cat, cfg).check(Suite::Green);
    println!("{}", r.summary_line());
    Ok(())
}
