//! Circulant contraction minors of circular 0/1 matrices.
//!
//! A circular matrix has rows that are incidence vectors of circular
//! intervals of `[n]`. Its circulant contraction minors `A/N ≈ C_s^p` are in
//! one-to-one correspondence (after normalizing the surviving column set) with
//! families of vertex-disjoint circuits without bad arcs in the auxiliary
//! digraph `F(A)`. This crate builds both directions of that correspondence,
//! the circulant-matrix specializations, and a brute-force oracle that
//! cross-checks them.
//!
//! All indices (columns, rows, vertices) are 1-based.

pub mod bridge;
pub mod circuit;
pub mod digraph;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod ground;
pub mod matrix;
pub mod oracle;
pub mod synthesis;

pub use circuit::{Circuit, CircuitFamily, Classification};
pub use digraph::{Arc, ArcDigraph, ArcKind};
pub use error::Error;
pub use ground::{CircularInterval, Closure, GroundSet};
pub use matrix::{CircularMatrix, Minor};
pub use synthesis::{MinorWitness, SynthesisTrace};
