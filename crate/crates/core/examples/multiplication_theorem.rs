//! The cluster multiplication theorem for one pair: extension terms, the strata of
//! maps `N → τM`, and both sides as torus elements.

use std::sync::Arc;

use qca::ffrep::{Bounds, Catalog};
use qca::quiver::a2_valued;
use qca::verify::{CheckConfig, Suite, Verifier};

fn main() -> qca::Result<()> {
    let cat = Arc::new(Catalog::new(Arc::new(a2_valued(2)), Bounds::default())?);
    let (m, n) = (cat.simple(0), cat.simple(1));
    println!("M = {}, N = {}, tau M = {}", cat.describe(&m), cat.describe(&n), cat.describe(&cat.tau(&m)?));
    for (e, eps) in cat.ext_counts(&m, &n)?.iter() {
        println!("  extension {:<10} count {eps}", cat.describe(e));
    }
    for (k, count) in cat.theta_strata(&n, &m)?.iter() {
        println!(
            "  maps N -> tau M with kernel {}, image part {}, injective cokernel {:?}: {count}",
            cat.describe(&k.d),
            cat.describe(&k.a),
            k.inj
        );
    }
    let ver = Verifier::new(cat, CheckConfig::default());
    for s in [Suite::ThmDdlz, Suite::Lemma73, Suite::Cor76] {
        println!("{}", ver.check(s).summary_line());
    }
    Ok(())
}
