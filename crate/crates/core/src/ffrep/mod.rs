//! Representations of acyclic quivers over small finite fields, their classification,
//! and the counting functions consumed by the Hall algebra.

pub mod catalog;
pub mod counting;
pub mod field;
pub mod matrix;
pub mod rep;
pub mod subspace;
pub mod tau;

pub use field::{Fe, Field};
pub use matrix::{Mat, Subspace};
pub use rep::{HomSpace, Morphism, PathAlgebra, Rep};

pub use catalog::{Bounds, Catalog, ClassRecord, RepClassId};
pub use counting::ThetaKey;
