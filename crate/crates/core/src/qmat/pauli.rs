//! Pauli matrices and named two-qubit states.

use super::matrix::{ComplexMatrix, Ket, I, ONE, ZERO};
use crate::C64;

pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, vec![ZERO, ONE, ONE, ZERO]).expect("2x2")
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, vec![ZERO, -I, I, ZERO]).expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, vec![ONE, ZERO, ZERO, -ONE]).expect("2x2")
}

/// Pauli matrix by label: 'I', 'X', 'Y' or 'Z'.
pub fn pauli(label: char) -> ComplexMatrix {
    match label {
        'X' | 'x' => sigma_x(),
        'Y' | 'y' => sigma_y(),
        'Z' | 'z' => sigma_z(),
        _ => identity2(),
    }
}

/// Tensor product of Paulis named by a string such as "ZZI".
pub fn pauli_string(labels: &str) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for c in labels.chars() {
        out = super::ops::tensor_product(&out, &pauli(c));
    }
    out
}

/// Bell state β_ab, indexed 0..4 as b00, b01, b10, b11:
/// b00 = (|00⟩+|11⟩)/√2, b01 = (|00⟩−|11⟩)/√2,
/// b10 = (|01⟩+|10⟩)/√2, b11 = (|01⟩−|10⟩)/√2.
pub fn bell(index: usize) -> Ket {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amps: [f64; 4] = match index {
        0 => [s, 0.0, 0.0, s],
        1 => [s, 0.0, 0.0, -s],
        2 => [0.0, s, s, 0.0],
        _ => [0.0, s, -s, 0.0],
    };
    Ket::from_real(&amps).expect("normalized")
}

/// Σ c_k |β_k⟩ normalized, for complex coefficients on the Bell basis.
pub fn bell_combination(coeffs: &[C64; 4]) -> crate::Result<Ket> {
    let mut amps = vec![ZERO; 4];
    for (k, c) in coeffs.iter().enumerate() {
        for (a, b) in amps.iter_mut().zip(bell(k).amplitudes()) {
            *a += c * b;
        }
    }
    Ket::new(amps)
}

/// (|0…0⟩ + |1…1⟩)/√2 on `n` qubits.
pub fn ghz(n: usize) -> Ket {
    let d = 1usize << n;
    let mut amps = vec![ZERO; d];
    amps[0] = ONE;
    amps[d - 1] = ONE;
    Ket::new(amps).expect("nonzero")
}

/// Equal superposition of the single-excitation basis states on `n` qubits.
pub fn w_state(n: usize) -> Ket {
    let d = 1usize << n;
    let mut amps = vec![ZERO; d];
    for q in 0..n {
        amps[1 << q] = ONE;
    }
    Ket::new(amps).expect("nonzero")
}
