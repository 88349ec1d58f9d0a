//! Exact-arithmetic construction and face enumeration for polytopes whose
//! inequalities involve at most two variables each (the LI(2) family).
//!
//! The crate builds the product-of-polygons family `P*(n, d)`, the dual
//! cyclic polytope `c*(n, d)` and the `d = 3` prism, enumerates their faces by
//! brute force over exact rationals, and compares the counts against the
//! closed-form f-vector, h-vector and upper-bound formulas in [`closed_forms`].

pub mod arith;
pub mod cli;
pub mod closed_forms;
pub mod constructors;
mod error;
pub mod faces;
pub mod geometry;
pub mod hvector;
pub mod lp;
pub mod model;
pub mod report;

pub use arith::{RatMatrix, RatVector, Rational};
pub use error::{Error, Result};
pub use faces::{FVector, Face};
pub use hvector::HVector;
pub use model::{Constraint, HPolytope, Li2Profile};
