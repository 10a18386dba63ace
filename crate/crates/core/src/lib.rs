//! Two-qubit states under amplitude-damping, phase-damping and depolarizing
//! channels with memory, and the entropic uncertainty relation in the
//! presence of a quantum memory.
//!
//! The crate is organized bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Kronecker products, partial traces and
//!   a Jacobi eigensolver for Hermitian matrices.
//! * [`states`]: density matrices and their Bloch parameterization.
//! * [`channels`]: Kraus sets and the memory-channel mixture, plus the
//!   closed-form evolution table used as a cross-check.
//! * [`uncertainty`]: entropies, post-measurement states and both sides of
//!   the uncertainty relations.
//! * [`sweep`]: configuration-driven decoherence sweeps, CSV output and plot
//!   scripts.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod sampling;
pub mod states;
pub mod sweep;
pub mod uncertainty;

pub use error::{Error, Result};
