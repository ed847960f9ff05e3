//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Real symmetric input stays real throughout, so the same routine serves the
//! real symmetric problems used by the Takagi factorization.

use super::matrix::{ComplexMatrix, Ket};
use crate::error::{bail, Result};
use crate::C64;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) and matching orthonormal eigenvectors stored as
/// the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Spectral {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectral {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    pub fn ket(&self, k: usize) -> Ket {
        Ket::new(self.vector(k)).expect("eigenvectors are normalized")
    }

    /// Σ g(λ_k) |λ_k⟩⟨λ_k|.
    pub fn map(&self, mut g: impl FnMut(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let gv: Vec<C64> = self.values.iter().map(|&l| g(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| v[(i, k)] * gv[k] * v[(j, k)].conj()).sum())
    }
}

/// Eigendecomposition of a Hermitian matrix; rejects non-Hermitian input.
pub fn spectral_decompose(h: &ComplexMatrix) -> Result<Spectral> {
    let err = h.hermiticity_error();
    let tol = 1e-10 * h.max_abs().max(1.0);
    if err > tol {
        bail!(Contract, "spectral_decompose needs a Hermitian matrix (error {:e})", err);
    }
    if !h.is_finite() {
        bail!(Contract, "spectral_decompose needs finite entries");
    }
    Ok(eigh(h))
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn eigenvalues_hermitian(h: &ComplexMatrix) -> Vec<f64> {
    eigh(h).values
}

/// Jacobi diagonalization without input validation. Only the Hermitian part
/// of `h` is used.
pub(crate) fn eigh(h: &ComplexMatrix) -> Spectral {
    let n = h.dim();
    let mut a = h.clone();
    a.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let scale: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        let off = off.sqrt();
        if off <= 1e-16 * scale || off < 1e-300 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut cols: Vec<Vec<C64>> = order.iter().map(|&i| v.column(i)).collect();
    orthonormalize(&mut cols);
    Spectral { values, vectors: ComplexMatrix::from_columns(&cols) }
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    // Phase that makes the (p, q) entry real and positive.
    let ph = apq / mag;
    let phc = ph.conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
        sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U restricted to (p, q): [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]].
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = phc * (-s);
    let u_qq = phc * c;
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * mag, 0.0);
    a[(q, q)] = C64::new(aqq + t * mag, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Modified Gram-Schmidt in place. A vector that collapses is replaced by the
/// first standard basis vector that is independent of its predecessors.
pub(crate) fn orthonormalize(cols: &mut [Vec<C64>]) {
    let n = cols.first().map_or(0, |c| c.len());
    for k in 0..cols.len() {
        let mut w = cols[k].clone();
        if !project_out(&mut w, &cols[..k]) {
            for b in 0..n {
                let mut e = vec![C64::new(0.0, 0.0); n];
                e[b] = C64::new(1.0, 0.0);
                if project_out(&mut e, &cols[..k]) {
                    w = e;
                    break;
                }
            }
        }
        cols[k] = w;
    }
}

/// Removes components along `basis` (twice, for stability) and normalizes.
/// Returns false when the remainder is numerically zero.
fn project_out(w: &mut [C64], basis: &[Vec<C64>]) -> bool {
    let n0 = super::matrix::norm(w);
    for _ in 0..2 {
        for b in basis {
            let c = super::matrix::inner(b, w);
            for (x, y) in w.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
    }
    let nn = super::matrix::norm(w);
    if !(nn > 1e-10 * n0.max(1e-300)) || nn < 1e-300 {
        return false;
    }
    for x in w.iter_mut() {
        *x /= nn;
    }
    true
}
