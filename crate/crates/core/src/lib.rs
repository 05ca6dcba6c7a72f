//! Combinatorial and polytopal invariants of polygon spaces.
//!
//! A length function on a finite edge set defines the space of closed
//! polygons in space with those side lengths, up to rotation. Lopsided subsets
//! of edges give commuting bending flows; laminar families of them (bending
//! sets) generate bending tori. This crate computes, in exact rational
//! arithmetic:
//!
//! * genericity, nonemptiness and lopsidedness ([`model`]);
//! * bending sets, their completion to full sets, torus dimensions, moment
//!   images, critical values and reductions ([`bending`]);
//! * minimal lopsided partitions, maximal bending-torus dimensions,
//!   maximality tests and enumeration of maximal tori ([`search`]);
//! * moment polytopes of toric bending actions, the Delzant condition and
//!   lattice equivalence of polytopes ([`polytope`]).

pub mod bending;
pub mod error;
pub mod json;
pub mod model;
pub mod polytope;
pub mod rational;
pub mod reproductions;
pub mod search;
mod weights;

pub use bending::{BendingSet, Interval, PartitionOfE, ReductionResult};
pub use error::{Error, Result};
pub use model::{EdgeId, EdgeSet, LengthFunction, Limits, PolygonSpace};
pub use polytope::LatticePolytope;
pub use rational::Rational;
