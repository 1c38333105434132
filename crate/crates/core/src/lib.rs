//! Exact quantum cluster characters and derived Hall algebra computations for acyclic
//! valued quivers, checked by brute-force counting over small finite fields.

pub mod cli;
pub mod error;
pub mod ffrep;
pub mod hall;
pub mod lincomb;
pub mod quiver;
pub mod scalar;
pub mod torus;
pub mod verify;

pub use error::{QcaError, Result};
pub use quiver::{DimVec, QuiverContext};
pub use scalar::ExactScalar;
