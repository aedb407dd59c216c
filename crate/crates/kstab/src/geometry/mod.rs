//! Exact rational convex geometry: polytopes, volumes, mixed volumes,
//! lattice points and regular subdivisions.

mod dd;
mod polytope;
mod subdivision;
mod volume;

pub use polytope::{minkowski_hull, minkowski_sum, vertex_enumeration, Halfspace, LatticeVector, RationalPolytope};
pub use subdivision::{AffinePiece, Cell, PLConvexFunction, Subdivision};
pub use volume::mixed_volume;

pub(crate) use polytope::sub;
