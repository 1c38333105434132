//! The Λ-twisted derived Hall algebra of decorated objects `I[−1]⊕M⊕P[1]`, its
//! coproduct, and the two constructions of the map to the quantum torus.

mod algebra;
mod object;

pub use algebra::{HallAlgebra, LegProduct};
pub use object::{element_json, parse_class_id, DecoratedObject, HallElement, TensorElement};
