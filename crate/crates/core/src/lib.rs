//! Exact computation of Picard lattices for families of K3 surfaces given by
//! reflexive 3-polytopes, and verification of lattice mirror symmetry for
//! polar-dual pairs.

pub mod error;
pub mod catalog;
pub mod linalg;
pub mod picard;
pub mod pipeline;
pub mod polytope;
pub mod toric;

pub use catalog::{Atom, NamedLattice};
pub use error::{Error, Result};
pub use linalg::{IntMatrix, RatVector};
pub use picard::{DiscriminantForm, GramLattice};
pub use pipeline::{CasePair, MirrorReport};
pub use polytope::{Face, Point3, Polytope3};
pub use toric::{DivisorBasis, OneSimplexSet, Relation};
