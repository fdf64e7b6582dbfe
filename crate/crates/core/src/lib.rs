//! Structural analysis of small graphs: induced-pattern detection, perfection
//! and perfect divisibility, and a constructive coloring procedure whose
//! palette stays within the triangular bound `omega * (omega + 1) / 2`.
//!
//! Everything here is exact and deterministic.  Graphs are immutable bitset
//! structures capped at 64 vertices; the expensive predicates carry explicit
//! size guards instead of silently degrading.

pub mod canon;
pub mod catalog;
pub mod codec;
pub mod coloring;
pub mod divisibility;
pub mod error;
pub mod graph;
pub mod harness;
pub mod patterns;
pub mod perfection;
pub mod simplicial;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
