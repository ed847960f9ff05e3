//! Entanglement measures and Lyapunov entanglement function values.

mod gf;
mod multipartite;
mod wootters;

pub use gf::{
    concurrence_pure, eg_pure, entropy_of_entanglement, renyi, validate_gf_measure, ConditionResult, CustomGF,
    GFMeasure, ValidationReport,
};
pub(crate) use gf::{eg_matrix, reduced_m};
pub use multipartite::{bipartitions, generalized_concurrence, gme_concurrence};
pub(crate) use multipartite::{gc_matrix, gme_matrix};
pub(crate) use wootters::tilde_of_matrix;
pub use wootters::{concurrence_mixed, spin_flip, tilde_decompose, wootters_concurrence, TildeDecomposition};

use crate::error::{bail, Result};
use crate::qmat::DensityMatrix;

/// Which measure a Lyapunov function is built from.
#[derive(Debug, Clone, Copy)]
pub enum MeasureKind {
    GF(GFMeasure),
    MixedConcurrence,
    GeneralizedConcurrence,
    GMEConcurrence,
}

impl MeasureKind {
    pub fn name(&self) -> String {
        match self {
            Self::GF(m) => m.name(),
            Self::MixedConcurrence => "mixedConcurrence".into(),
            Self::GeneralizedConcurrence => "generalizedConcurrence".into(),
            Self::GMEConcurrence => "gmeConcurrence".into(),
        }
    }
}

/// 𝒩: the largest value the measure attains on an `nqubits` register.
pub fn measure_max(kind: &MeasureKind, nqubits: usize) -> Result<f64> {
    match kind {
        MeasureKind::GF(m) if nqubits == 2 => Ok(m.maximum()),
        MeasureKind::MixedConcurrence if nqubits == 2 => Ok(1.0),
        MeasureKind::GeneralizedConcurrence | MeasureKind::GMEConcurrence if nqubits >= 2 => Ok(1.0),
        _ => bail!(Parameter, "measure {} is not defined on {} qubits", kind.name(), nqubits),
    }
}

/// E(ρ) for the given kind.
pub fn evaluate(rho: &DensityMatrix, kind: &MeasureKind) -> Result<f64> {
    match kind {
        MeasureKind::GF(m) => eg_pure(rho, m),
        MeasureKind::MixedConcurrence => concurrence_mixed(rho),
        MeasureKind::GeneralizedConcurrence => generalized_concurrence(rho),
        MeasureKind::GMEConcurrence => gme_concurrence(rho).map(|(v, _)| v),
    }
}

/// V = 𝒩 − E.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovValue {
    pub v: f64,
    pub e: f64,
    pub nmax: f64,
}

pub fn lef_value(rho: &DensityMatrix, kind: &MeasureKind) -> Result<LyapunovValue> {
    let nmax = measure_max(kind, rho.nqubits())?;
    let e = evaluate(rho, kind)?;
    Ok(LyapunovValue { v: nmax - e, e, nmax })
}
