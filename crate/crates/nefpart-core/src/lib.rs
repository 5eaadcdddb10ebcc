//! Exact-arithmetic kernel for generalized nef partitions of rational
//! polytopes, their duals, good pairs, the associated complete-intersection
//! families in Q-Fano toric varieties, and a combinatorial quasismoothness
//! verifier based on the Cayley trick.
//!
//! All geometry is carried out over arbitrary-precision rationals; every
//! operation is a pure function on immutable values and is safe to call
//! concurrently.

pub mod classify;
pub mod geometry;
pub mod gnp;
pub mod goodpair;
pub mod json;
pub mod linalg;
pub mod regularity;
pub mod toric;

pub use geometry::{
    convex_hull, minkowski_sum, polar, FaceDescriptor, GeomError, Halfspace, RationalPolytope,
};
pub use linalg::{Int, QVec, Rat};
