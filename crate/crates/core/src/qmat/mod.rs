//! Complex linear algebra and quantum-register primitives.
//!
//! Qubit 0 is the leftmost tensor factor; two-qubit basis order is
//! |00⟩, |01⟩, |10⟩, |11⟩.

mod eigen;
mod matrix;
mod ops;
pub mod pauli;

pub use eigen::{eigenvalues_hermitian, spectral_decompose, Spectral};
pub(crate) use eigen::{eigh, orthonormalize};
pub(crate) use matrix::inner;
pub use matrix::{ComplexMatrix, DensityMatrix, Ket};
pub(crate) use ops::unitary_from_generator;
pub use ops::{
    majorizes, matrix_exponential, matrix_function, partial_trace, reduce_qubits, schmidt_decompose, tensor_all,
    tensor_product, SchmidtDecomposition,
};
