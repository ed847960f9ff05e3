//! Two-qubit mixed-state concurrence: the closed form and the tilde
//! decomposition that realizes it.

use crate::error::Result;
use crate::qmat::{eigh, orthonormalize, pauli, ComplexMatrix, DensityMatrix, Ket};
use crate::C64;

/// σ_y ⊗ σ_y.
pub(crate) fn yy() -> ComplexMatrix {
    pauli::pauli_string("YY")
}

pub(crate) fn spin_flip_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    let y = yy();
    &(&y * &m.conj()) * &y
}

/// ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    rho.require_qubits(2, "spin_flip")?;
    Ok(spin_flip_matrix(rho.matrix()))
}

/// max{0, μ₁−μ₂−μ₃−μ₄}, μ the decreasing square roots of the eigenvalues of
/// √ρ ρ̃ √ρ.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    rho.require_qubits(2, "wootters_concurrence")?;
    let m = rho.matrix();
    let sqrt_rho = eigh(m).map(|l| C64::new(l.max(0.0).sqrt(), 0.0));
    let r = &(&sqrt_rho * &spin_flip_matrix(m)) * &sqrt_rho;
    let mu: Vec<f64> = eigh(&r).values.iter().map(|&x| x.max(0.0).sqrt()).collect();
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Wootters' optimal pure-state decomposition ρ = Σ p_k |y_k⟩⟨y_k|.
///
/// Components are ordered by decreasing |⟨x_k*|σ_y⊗σ_y|x_k⟩| of the
/// subnormalized vectors x_k = √p_k |y_k⟩; the first enters the concurrence
/// with a plus sign and the rest with minus signs.
#[derive(Debug, Clone)]
pub struct TildeDecomposition {
    pub weights: [f64; 4],
    pub states: Vec<Ket>,
    /// c_k = |⟨y_k|ỹ_k⟩|; zero for a zero-weight component.
    pub preconcurrences: [f64; 4],
    /// σ_k = p_k c_k.
    pub takagi: [f64; 4],
    /// x_k = √p_k |y_k⟩.
    pub vectors: Vec<Vec<C64>>,
}

impl TildeDecomposition {
    /// σ₁ − σ₂ − σ₃ − σ₄.
    pub fn signed_sum(&self) -> f64 {
        self.takagi[0] - self.takagi[1] - self.takagi[2] - self.takagi[3]
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(4);
        for x in &self.vectors {
            out = &out + &ComplexMatrix::outer(x, x);
        }
        out
    }
}

pub fn tilde_decompose(rho: &DensityMatrix) -> Result<TildeDecomposition> {
    rho.require_qubits(2, "tilde_decompose")?;
    Ok(tilde_of_matrix(rho.matrix()))
}

pub(crate) fn tilde_of_matrix(m: &ComplexMatrix) -> TildeDecomposition {
    let sp = eigh(m);
    // v_i = √λ_i |λ_i⟩; null directions get zero vectors.
    let v: Vec<Vec<C64>> = (0..4)
        .map(|i| {
            let s = sp.values[i].max(0.0).sqrt();
            sp.vector(i).into_iter().map(|z| z * s).collect()
        })
        .collect();
    let y = yy();
    let yv: Vec<Vec<C64>> = v.iter().map(|c| y.apply(c)).collect();
    // τ_ij = v_iᵀ (σ_y⊗σ_y) v_j, complex symmetric.
    let tau = ComplexMatrix::from_fn(4, |i, j| v[i].iter().zip(&yv[j]).map(|(a, b)| a * b).sum());

    // Takagi factorization τ = W Σ Wᵀ through the real symmetric embedding
    // [[Re τ, Im τ], [Im τ, −Re τ]]: an eigenvector [u; w] with eigenvalue σ
    // gives τ·conj(u + i w) = σ (u + i w).
    let emb = ComplexMatrix::from_fn(8, |i, j| {
        let t = tau[(i % 4, j % 4)];
        let val = match (i < 4, j < 4) {
            (true, true) => t.re,
            (false, false) => -t.re,
            _ => t.im,
        };
        C64::new(val, 0.0)
    });
    let es = eigh(&emb);
    let mut basis: Vec<Vec<C64>> = (0..4)
        .map(|k| {
            let col = es.vector(k);
            (0..4).map(|i| C64::new(col[i].re, col[i + 4].re)).collect()
        })
        .collect();
    // Vectors for zero Takagi values can come out as phase multiples of one
    // another; Gram-Schmidt completes them to an orthonormal basis of the
    // same null space.
    orthonormalize(&mut basis);

    let mut weights = [0.0; 4];
    let mut pre = [0.0; 4];
    let mut takagi = [0.0; 4];
    let mut vectors = Vec::with_capacity(4);
    let mut states = Vec::with_capacity(4);
    for k in 0..4 {
        // x_k = Σ_i v_i conj(w_k[i]).
        let mut x = vec![C64::new(0.0, 0.0); 4];
        for i in 0..4 {
            let c = basis[k][i].conj();
            for (a, b) in x.iter_mut().zip(&v[i]) {
                *a += b * c;
            }
        }
        let p: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let yx = y.apply(&x);
        let sigma = x.iter().zip(&yx).map(|(a, b)| a * b).sum::<C64>().norm();
        weights[k] = p;
        takagi[k] = sigma;
        pre[k] = if p > 1e-14 { (sigma / p).min(1.0) } else { 0.0 };
        states.push(Ket::new(x.clone()).unwrap_or_else(|_| Ket::basis(4, k)));
        vectors.push(x);
    }
    TildeDecomposition { weights, states, preconcurrences: pre, takagi, vectors }
}

/// p₁E_c(Y₁) − Σ_{k≥2} p_k E_c(Y_k) from the tilde decomposition, floored at 0.
pub fn concurrence_mixed(rho: &DensityMatrix) -> Result<f64> {
    Ok(tilde_decompose(rho)?.signed_sum().max(0.0))
}
