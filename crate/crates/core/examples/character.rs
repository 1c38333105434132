//! Quantum cluster characters of decorated objects, and the integration map
//! computed two ways.

use std::sync::Arc;

use qca::ffrep::{Bounds, Catalog};
use qca::hall::{DecoratedObject, HallAlgebra};
use qca::quiver::DimVec;
use qca::quiver::kronecker;
use qca::torus::character;

fn main() -> qca::Result<()> {
    let cat = Arc::new(Catalog::new(Arc::new(kronecker(2)), Bounds::default())?);
    let hall = HallAlgebra::new(cat.clone());
    for c in cat.classes(&DimVec(vec![1, 1]))? {
        println!("X_{:<10} = {}", cat.describe(&c), character(&cat, &[0, 0], &c, &[0, 0])?);
    }
    for s in ["M:S1", "M:P1", "I:1;M:S2", "M:S1;P:2", "I:2;P:1"] {
        let obj = DecoratedObject::parse(&cat, s)?;
        let closed = hall.psi_closed_basis(&obj)?;
        let composed = hall.psi_composed(&hall.basis(obj))?;
        println!("psi({s}) = {closed}   [composed route agrees: {}]", closed == composed);
    }
    Ok(())
}
