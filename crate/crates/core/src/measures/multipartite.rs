//! Pure-state measures for registers of N qubits.

use crate::error::{bail, Result};
use crate::qmat::{reduce_qubits, ComplexMatrix, DensityMatrix};

/// Bipartitions of an N-qubit register, each named by the side that holds
/// qubit 0, ordered lexicographically by sorted index list. For N = 3 this is
/// [0], [0, 1], [0, 2].
pub fn bipartitions(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..(1usize << n) - 1)
        .filter(|mask| mask & 1 == 1)
        .map(|mask| (0..n).filter(|q| mask >> q & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

pub(crate) fn cut_purity(m: &ComplexMatrix, n: usize, side: &[usize]) -> f64 {
    let r = reduce_qubits(m, n, side).expect("valid cut");
    r.trace_product(&r).re
}

fn check(rho: &DensityMatrix, what: &str) -> Result<usize> {
    rho.require_pure(what)?;
    let n = rho.nqubits();
    if n < 2 {
        bail!(Dimension, "{} needs at least 2 qubits", what);
    }
    Ok(n)
}

pub(crate) fn gc_matrix(m: &ComplexMatrix, n: usize) -> f64 {
    // Both sides of a pure-state cut share a purity, so summing over the cuts
    // that contain qubit 0 counts every nonempty proper subset once per pair.
    let cuts = bipartitions(n);
    let sum: f64 = cuts.iter().map(|s| 1.0 - cut_purity(m, n, s)).sum();
    (2.0 * sum / cuts.len() as f64).max(0.0).sqrt().min(1.0)
}

/// Generalized concurrence √((1/m) Σ_S (1 − Tr ρ_S²)), the sum running over
/// every nonempty proper subset S of qubits and m = 2^{N−1} − 1. Equals the
/// pure-state concurrence for N = 2 and 1 for GHZ states.
pub fn generalized_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let n = check(rho, "generalized_concurrence")?;
    Ok(gc_matrix(rho.matrix(), n))
}

pub(crate) fn gme_matrix(m: &ComplexMatrix, n: usize) -> (f64, Vec<usize>) {
    let mut best = f64::INFINITY;
    let mut arg = Vec::new();
    for side in bipartitions(n) {
        let c = (2.0 * (1.0 - cut_purity(m, n, &side))).max(0.0).sqrt();
        if c < best - 1e-12 {
            best = c;
            arg = side;
        }
    }
    (best, arg)
}

/// Minimum bipartite concurrence over all bipartitions, with the minimizing
/// cut (the side holding qubit 0; lexicographically first on ties).
pub fn gme_concurrence(rho: &DensityMatrix) -> Result<(f64, Vec<usize>)> {
    let n = check(rho, "gme_concurrence")?;
    Ok(gme_matrix(rho.matrix(), n))
}
