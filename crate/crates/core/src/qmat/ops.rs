use super::eigen::{eigh, spectral_decompose};
use super::matrix::{ComplexMatrix, Ket, I, ZERO};
use crate::error::{bail, Result};
use crate::C64;

/// Kronecker product with `a` as the outer (left) factor.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na * nb, |i, j| a[(i / nb, j / nb)] * b[(i % nb, j % nb)])
}

/// Kronecker product of a list of factors, left to right.
pub fn tensor_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for f in factors {
        out = tensor_product(&out, f);
    }
    out
}

/// Reduced matrix on the subsystems listed in `keep` (any order; the result
/// keeps the original subsystem order). Works on unnormalized operators too.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if total != m.dim() || dims.iter().any(|&d| d == 0) {
        bail!(Dimension, "subsystem dims {:?} do not match matrix dimension {}", dims, m.dim());
    }
    let mut keep_sorted: Vec<usize> = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() || keep_sorted.iter().any(|&k| k >= dims.len()) {
        bail!(Dimension, "invalid kept subsystem set {:?} for {} subsystems", keep, dims.len());
    }
    let n = dims.len();
    let mut strides = vec![1usize; n];
    for s in (0..n.saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    let traced: Vec<usize> = (0..n).filter(|s| !keep_sorted.contains(s)).collect();
    let ok = offsets(&keep_sorted, dims, &strides);
    let ot = offsets(&traced, dims, &strides);
    let dk = ok.len();
    let src = m.as_slice();
    let d = m.dim();
    Ok(ComplexMatrix::from_fn(dk, |a, b| {
        let (ra, rb) = (ok[a], ok[b]);
        ot.iter().map(|&c| src[(ra + c) * d + rb + c]).sum()
    }))
}

/// Flat-index offsets of every multi-index over `subsystems`, enumerated in
/// row-major order of those subsystems.
fn offsets(subsystems: &[usize], dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &s in subsystems {
        let mut next = Vec::with_capacity(out.len() * dims[s]);
        for &o in &out {
            for v in 0..dims[s] {
                next.push(o + v * strides[s]);
            }
        }
        out = next;
    }
    out
}

/// Reduced matrix of an `nqubits` register on the listed qubits.
pub fn reduce_qubits(m: &ComplexMatrix, nqubits: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    partial_trace(m, &vec![2; nqubits], keep)
}

/// Σ f(λ_k)|λ_k⟩⟨λ_k| for Hermitian `h`. A non-finite f value is a domain error.
pub fn matrix_function(f: impl Fn(f64) -> f64, h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let sp = spectral_decompose(h)?;
    let mut bad = None;
    let out = sp.map(|l| {
        let v = f(l);
        if !v.is_finite() {
            bad = Some(l);
        }
        C64::new(v, 0.0)
    });
    if let Some(l) = bad {
        bail!(Domain, "function undefined at eigenvalue {:e}", l);
    }
    Ok(out)
}

/// exp(a) for skew-Hermitian `a`, computed from the spectrum of the Hermitian
/// generator i·a.
pub fn matrix_exponential(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let h = a.scale(I);
    let err = h.hermiticity_error();
    if err > 1e-10 * h.max_abs().max(1.0) {
        bail!(Contract, "matrix_exponential needs a skew-Hermitian argument (error {:e})", err);
    }
    Ok(unitary_from_generator(&h, 1.0))
}

/// exp(−i·h·dt) for Hermitian `h`.
pub(crate) fn unitary_from_generator(h: &ComplexMatrix, dt: f64) -> ComplexMatrix {
    eigh(h).map(|l| C64::new(0.0, -l * dt).exp())
}

/// Schmidt decomposition Σ √α_k |e_k^A⟩⊗|e_k^B⟩ of a bipartite pure state.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// α_k, strictly positive and non-increasing; they sum to 1.
    pub coefficients: Vec<f64>,
    pub left: Vec<Ket>,
    pub right: Vec<Ket>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn reconstruct(&self) -> Vec<C64> {
        let da = self.left.first().map_or(0, Ket::dim);
        let db = self.right.first().map_or(0, Ket::dim);
        let mut out = vec![ZERO; da * db];
        for k in 0..self.rank() {
            let s = self.coefficients[k].sqrt();
            for (i, a) in self.left[k].amplitudes().iter().enumerate() {
                for (j, b) in self.right[k].amplitudes().iter().enumerate() {
                    out[i * db + j] += a * b * s;
                }
            }
        }
        out
    }
}

/// Coefficients below this are treated as zero when counting the rank.
const SCHMIDT_CUTOFF: f64 = 1e-12;

pub fn schmidt_decompose(psi: &Ket, dim_a: usize, dim_b: usize) -> Result<SchmidtDecomposition> {
    if psi.dim() != dim_a * dim_b {
        bail!(Dimension, "state dimension {} is not {}x{}", psi.dim(), dim_a, dim_b);
    }
    let amps = psi.amplitudes();
    let rho_a = ComplexMatrix::from_fn(dim_a, |i, k| {
        (0..dim_b).map(|j| amps[i * dim_b + j] * amps[k * dim_b + j].conj()).sum()
    });
    let sp = eigh(&rho_a);
    let mut coefficients = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &alpha) in sp.values.iter().enumerate() {
        if alpha <= SCHMIDT_CUTOFF {
            break;
        }
        let a = sp.vector(k);
        let b: Vec<C64> = (0..dim_b)
            .map(|j| (0..dim_a).map(|i| a[i].conj() * amps[i * dim_b + j]).sum::<C64>() / alpha.sqrt())
            .collect();
        coefficients.push(alpha);
        left.push(Ket::new(a)?);
        right.push(Ket::new(b)?);
    }
    Ok(SchmidtDecomposition { coefficients, left, right })
}

/// Whether `alpha` is majorized by `alpha_prime` (prefix sums of `alpha`
/// never exceed those of `alpha_prime`). Both must be sorted descending and
/// sum to one.
pub fn majorizes(alpha: &[f64], alpha_prime: &[f64]) -> Result<bool> {
    if alpha.len() != alpha_prime.len() {
        bail!(Contract, "majorization needs vectors of equal length");
    }
    for v in [alpha, alpha_prime] {
        let s: f64 = v.iter().sum();
        if (s - 1.0).abs() > 1e-9 || v.iter().any(|&x| x < -1e-12) {
            bail!(Contract, "majorization needs probability vectors (sum {})", s);
        }
        if v.windows(2).any(|w| w[1] > w[0] + 1e-12) {
            bail!(Contract, "majorization needs vectors sorted in decreasing order");
        }
    }
    let (mut sa, mut sb) = (0.0, 0.0);
    for l in 0..alpha.len().saturating_sub(1) {
        sa += alpha[l];
        sb += alpha_prime[l];
        if sa > sb + 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}
