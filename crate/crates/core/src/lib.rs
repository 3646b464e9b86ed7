//! Norms of idempotent Schur (Hadamard) multipliers.
//!
//! A 0–1 matrix `A` acts on `m × n` matrices by entrywise multiplication
//! `X ↦ A ∘ X`. This crate computes the operator norm `‖A‖_•` of that map:
//!
//! * [`bigraph`] models 0–1 matrices as bipartite graphs (twin reduction,
//!   components, induced-subgraph search, a catalog of named graphs);
//! * [`linalg`] provides the small dense linear algebra everything runs on;
//! * [`exact`] holds the closed-form values, the explicit path factorizations
//!   and a catalog of verifiable norm certificates;
//! * [`bounds`] estimates `‖A‖_•` for any real matrix from both sides;
//! * [`classify`] decides which of the seven smallest norm values a graph has;
//! * [`random`] runs the random-graph experiments;
//! * [`repro`] assembles the reproduction tables used by the CLI.

pub mod bigraph;
pub mod bounds;
pub mod classify;
mod error;
pub mod exact;
pub mod linalg;
pub mod random;
pub mod repro;

pub use bigraph::{BiGraph, GraphName};
pub use bounds::{norm_bounds, BoundsOptions, Factorization, NormBounds};
pub use classify::{classify, ClassResult, NormClass};
pub use error::{Error, Result};
pub use exact::{EtaConstants, NormCertificate, PathWitness, ETA};
pub use linalg::DenseMatrix;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
