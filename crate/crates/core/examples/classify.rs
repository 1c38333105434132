//! Isomorphism classes of small Kronecker representations over 𝔽₄, with
//! endomorphism dimensions, automorphism orders and Auslander-Reiten translates.

use std::sync::Arc;

use qca::ffrep::{Bounds, Catalog};
use qca::quiver::kronecker;

fn main() -> qca::Result<()> {
    let cat = Catalog::new(Arc::new(kronecker(2)), Bounds::default())?;
    for d in cat.dims_up_to(2, None) {
        let classes = cat.classes(&d)?;
        println!("dimension {d}: {} classes", classes.len());
        for c in classes {
            let indec = cat.is_indecomposable(&c)?;
            let mut line = format!(
                "  {:<8} {:<14} End {}  |Aut| {:>8}  orbit {:>6}",
                c.to_string(),
                cat.describe(&c),
                cat.end_dim(&c)?,
                cat.aut_order(&c)?,
                cat.orbit_size(&c)?.unwrap_or(0),
            );
            if indec && !cat.is_projective(&c)? {
                line += &format!("  tau = {}", cat.describe(&cat.tau(&c)?));
            } else if !indec {
                let parts: Vec<String> = cat.decompose(&c)?.iter().map(|p| cat.describe(p)).collect();
                line += &format!("  = {}", parts.join(" + "));
            }
            println!("{line}");
        }
    }
    Ok(())
}
