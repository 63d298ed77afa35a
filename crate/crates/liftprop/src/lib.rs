//! Finite topological spaces, continuous maps, and the lifting-property view
//! of separation axioms.
//!
//! The core model is a finite space as its specialization preorder
//! ([`finspace`]), with a small text format for describing spaces and maps
//! ([`dsl`]). Separation axioms are decided both by classical open-set
//! searches and by categorical lifting properties against fixed test maps
//! ([`separation`], [`lifting`]), with an exhaustive enumerator
//! ([`enumeration`]) to cross-validate the two routes. [`interval`] models a
//! unit interval with doubled endpoints and its comparison maps; [`urysohn`]
//! builds explicit separating functions on normal finite spaces.

pub mod cli;
pub mod dsl;
pub mod enumeration;
pub mod finspace;
pub mod interval;
pub mod lifting;
pub mod separation;
pub mod urysohn;

pub use finspace::{CMap, Classification, FinSpace, PointSet, TopologyError, MAX_POINTS};
