//! Exact enumeration of locally factorial Fano embeddings of spherical
//! homogeneous spaces of rank at most two, in dimension at most four.
//!
//! The crate is layered bottom-up:
//!
//! * [`geometry`]: exact rational polytopes in ranks 1 and 2, integration,
//!   Smith normal form.
//! * [`spherical`]: combinatorial data of a homogeneous space and the
//!   reflexivity checker.
//! * [`registry`]: every family of homogeneous spaces, with parameter bounds
//!   and admissible symmetry groups.
//! * [`enumerate`]: exhaustive search for admissible polytopes and canonical
//!   forms.
//! * [`invariants`]: Picard rank, Fano index, degree, barycenter, K-stability.
//! * [`catalog`]: the assembled catalog, identifiers, verification, emission.

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod registry;
pub mod spherical;

pub use error::{Error, Result};
