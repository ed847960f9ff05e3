//! Lyapunov control of entanglement: drive quantum registers toward maximally
//! entangled states using feedback built from an entanglement measure.
//!
//! Modules, bottom-up:
//!
//! - [`qmat`]: dense complex matrices, Hermitian eigensolver, partial traces,
//!   matrix functions, Schmidt decomposition, majorization.
//! - [`measures`]: the (G, f) family of pure-state measures and its validator,
//!   Wootters concurrence and the tilde decomposition, multipartite measures.
//! - [`dynamics`]: Hamiltonian sets, interaction-picture operators and the
//!   spectrum-preserving propagator.
//! - [`control`]: feedback signals and control fields.
//! - [`harness`]: presets, closed-loop runs, classification, basin scans,
//!   MEMS and tripartite experiments.

pub mod control;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod measures;
pub mod qmat;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
