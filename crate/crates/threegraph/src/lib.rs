//! Spanning trees of 3-uniform hypergraphs.
//!
//! A spanning tree of a 3-graph is a cycle-free set of triples covering all
//! vertices; it exists only for odd vertex counts and has `(n-1)/2` triples.
//! This crate provides:
//!
//! - the data model with deletion/contraction ([`model`]),
//! - exhaustive tree and matching enumeration plus a Prüfer-style codec for
//!   complete hosts ([`trees`]),
//! - triple orientations and tree signs ([`signs`]),
//! - exact and finite-field Pfaffians of the associated skew matrix, the
//!   signed-count identities and a randomized existence test ([`pfaffian`]),
//! - the GF(2) decision of uniform-sign orientability with verifiable
//!   witnesses and certificates ([`decision`]),
//! - structural existence conditions ([`structure`]),
//! - suspensions and their forbidden-subgraph theory ([`suspension`]),
//! - partial Steiner triple systems ([`steiner`]),
//! - deterministic fixture generators ([`families`]),
//! - the acceptance suite binding everything together ([`acceptance`]).
//!
//! All arithmetic is exact: big integers, rationals or prime fields.

pub mod acceptance;
pub mod decision;
pub mod error;
pub mod families;
pub mod iso;
pub mod model;
pub mod pfaffian;
pub mod ring;
pub mod signs;
pub mod steiner;
pub mod structure;
pub mod suspension;
pub mod trees;

pub use error::{Error, Result};
pub use model::{Multigraph, ThreeGraph, Triple, Vertex};

/// Exact integer scalar used throughout.
pub type Int = num_bigint::BigInt;
/// Exact nonnegative counts.
pub type Count = num_bigint::BigUint;
/// Exact rationals (means, probability bounds).
pub type Ratio = num_rational::BigRational;
/// Prime-field scalar with runtime modulus.
pub type FieldElem = ring::Gfp;
