//! Executable strong shift equivalence for quivers.
//!
//! The crate works with finite quivers and their nonnegative integer
//! incidence matrices (entry `(i, j)` counts arrows from `j` to `i`). It
//! provides:
//!
//! - [`quiver`]: quivers, incidence matrices, path enumeration and counting.
//! - [`transforms`]: higher edge graphs, power graphs, the arrow/vertex
//!   factorization `C = LR`, and in-/out-splittings with witnesses.
//! - [`sse`]: verification and bounded search for elementary strong shift
//!   equivalences, chains, and shift equivalence witnesses.
//! - [`invariants`]: Smith normal form, Bowen–Franks groups, characteristic
//!   polynomials, zeta denominators and periodic point counts.
//! - [`gradedmod`]: truncated graded modules over path algebras, the functors
//!   `F = R ⊗ -` and `F' = L ⊗ -`, and the natural map `τ: F'F(M) → M`.
//! - [`bratteli`]: leveled dimension diagrams driven by the incidence matrix.
//!
//! Parallel work goes through [`par`]; with the `parallel` feature disabled
//! everything runs sequentially and produces identical results.

pub mod bratteli;
pub mod error;
pub mod gradedmod;
pub mod invariants;
pub mod json;
pub mod matrix;
pub mod par;
pub mod quiver;
pub mod sse;
pub mod transforms;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, NNMatrix};
pub use par::Parallelism;
pub use quiver::{Arrow, Path, Quiver};
