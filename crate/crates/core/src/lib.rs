//! Edge-subdivision calculus on simplicial complexes.
//!
//! The crate provides an immutable facet-based [`Complex`], the four atomic
//! moves (stellar and edge subdivision, inverse edge subdivision, edge
//! contraction), barycentric subdivision through edge-subdivision schedules,
//! flagification of move sequences, face-number invariants of spheres, and a
//! seeded random walk over flag spheres.

pub mod barycentric;
pub mod cli;
pub mod complex;
pub mod connectivity;
pub mod error;
pub mod explorer;
pub mod generators;
pub mod invariants;
pub mod io;
pub mod moves;
pub mod rng;

pub use complex::{clique_complex, Complex, Face, Graph, VertexId};
pub use error::{Error, Result};
