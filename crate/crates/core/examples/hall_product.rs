//! Products in the derived Hall algebra: modules, shifted projectives and shifted
//! injectives, and their reordering into normal form.

use std::sync::Arc;

use qca::ffrep::{Bounds, Catalog};
use qca::hall::{DecoratedObject, HallAlgebra};
use qca::quiver::kronecker;

fn main() -> qca::Result<()> {
    let cat = Arc::new(Catalog::new(Arc::new(kronecker(2)), Bounds::default())?);
    let hall = HallAlgebra::new(cat.clone());
    let pairs = [
        ("M:S1", "M:S2"),
        ("M:S2", "M:S1"),
        ("P:2", "M:P1"),
        ("M:P1", "P:2"),
        ("M:S2", "I:1"),
        ("I:1", "P:2"),
        ("P:2", "I:1"),
    ];
    for (a, b) in pairs {
        let (x, y) = (DecoratedObject::parse(&cat, a)?, DecoratedObject::parse(&cat, b)?);
        println!("u[{a}] * u[{b}] =\n    {}", hall.mul_basis(&x, &y)?);
    }

    // associativity on one triple
    let u = |s: &str| DecoratedObject::parse(&cat, s).map(|o| hall.basis(o));
    let (a, b, c) = (u("M:S1")?, u("P:2")?, u("I:1")?);
    let left = hall.mul(&hall.mul(&a, &b)?, &c)?;
    let right = hall.mul(&a, &hall.mul(&b, &c)?)?;
    println!("(S1 * P2[1]) * I1[-1] == S1 * (P2[1] * I1[-1]): {}", left == right);
    Ok(())
}
