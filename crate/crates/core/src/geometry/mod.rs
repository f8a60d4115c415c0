//! Exact geometry in rank 1 and 2: rationals, polytopes, integration, SNF.

pub mod integrate;
pub mod polytope;
pub mod rat;
pub mod snf;

pub use integrate::{integrate, Polynomial};
pub use polytope::{convex_hull, Facet, RationalPolytope};
pub use rat::{int, rat, Rat, VecQ};
pub use snf::{is_lattice_basis, primitive, snf, MatZ};
