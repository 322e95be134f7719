//! Canonical forms of convex polytopes in exact arithmetic.
//!
//! The canonical form of a full-dimensional polytope `P` is the rational top
//! form with simple poles exactly along the facet hyperplanes whose residues
//! recursively reproduce the canonical forms of the facets. This crate
//! computes it three independent ways (summing simplex forms over a
//! triangulation, summing polar-dual volumes over the normal fan, and summing
//! Laplace integrals over a triangulated dual cone), and checks the residue
//! recursion, adjoint hypersurfaces, subdivision additivity and the toric
//! pushforward formula.

pub mod error;
pub mod exact;
pub mod forms;
pub mod io;
pub mod polytope;
pub mod pushforward;

pub use error::{Error, Result};
pub use exact::{LinForm, Poly, Rat, RatMatrix};
pub use polytope::{hull_from_vertices, Polytope};
