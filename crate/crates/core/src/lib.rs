//! Exact-arithmetic cup products of cochains on polyhedral complexes.
//!
//! The library builds finite complexes of convex rational polytopes, verifies
//! the complex axioms exactly, and multiplies cochains valued in the
//! rationals or in the exterior algebra of the ambient space. The product
//! depends on a covector parameter; the discriminant module locates the walls
//! where products of cocycles jump and computes the exact correction. The
//! geometry module applies the machinery to volumes and mixed volumes of
//! polytopes.

pub mod complex;
pub mod cup;
pub mod discriminant;
pub mod fan;
pub mod fixtures;
pub mod geom;
pub mod json;
pub mod lp;
pub mod rat;
pub mod ring;
pub mod subdivision;
