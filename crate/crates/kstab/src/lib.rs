//! Exact K-stability invariants of toric test configurations.
//!
//! Test configurations of a polarized smooth toric variety are handled in
//! two independent ways: as convex piecewise-linear functions on the moment
//! polytope, counted by equivariant lattice-point enumeration, and as
//! normalized blow-ups of `X × P¹` along monomial flag ideals, evaluated
//! with toric intersection theory. All arithmetic is exact.

pub mod error;
pub mod geometry;
pub mod invariants;
pub mod config;
pub mod criteria;
pub mod toric;
pub mod weights;
mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Field;

/// Arbitrary-precision rational, the scalar used throughout the CLI.
pub type Q = num_rational::BigRational;
/// Fixed-width rational for small geometric inputs.
pub type Q128 = num_rational::Ratio<i128>;

pub type Polytope = geometry::RationalPolytope<Q>;
pub type PLFunction = geometry::PLConvexFunction<Q>;
