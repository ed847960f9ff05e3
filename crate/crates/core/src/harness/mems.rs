use super::random::{haar_unitary, rng_for};
use super::run::{run_trajectory, ExperimentSpec, RunResult, Scenario, TildeReport};
use crate::error::{bail, Result};
use crate::qmat::{pauli, tensor_product, ComplexMatrix, DensityMatrix, Ket};

/// Largest tolerated |Σλ − 1| before a spectrum is rejected; smaller
/// deviations (rounded inputs) are renormalized away.
pub const SPECTRUM_SUM_TOL: f64 = 1e-3;

/// Checks nonnegativity and the sum, and returns the renormalized spectrum.
pub fn normalize_spectrum(spectrum: &[f64; 4]) -> Result<[f64; 4]> {
    if spectrum.iter().any(|&l| !(l >= 0.0) || !l.is_finite()) {
        bail!(Parameter, "spectrum entries must be nonnegative and finite: {:?}", spectrum);
    }
    let s: f64 = spectrum.iter().sum();
    if (s - 1.0).abs() > SPECTRUM_SUM_TOL {
        bail!(Parameter, "spectrum sums to {} instead of 1", s);
    }
    Ok(spectrum.map(|l| l / s))
}

fn normalize_decreasing(spectrum: &[f64; 4]) -> Result<[f64; 4]> {
    let l = normalize_spectrum(spectrum)?;
    if l.windows(2).any(|w| w[1] > w[0]) {
        bail!(Parameter, "spectrum must be in decreasing order: {:?}", spectrum);
    }
    Ok(l)
}

/// max{0, λ₁ − λ₃ − 2√(λ₂λ₄)}.
pub fn theoretical_max_concurrence(spectrum: &[f64; 4]) -> f64 {
    let l = spectrum;
    (l[0] - l[2] - 2.0 * (l[1] * l[3]).sqrt()).max(0.0)
}

/// λ₁|β₁₁⟩⟨β₁₁| + λ₂|00⟩⟨00| + λ₃|β₁₀⟩⟨β₁₀| + λ₄|11⟩⟨11|.
pub fn kernel_mems(spectrum: &[f64; 4]) -> Result<DensityMatrix> {
    let l = normalize_decreasing(spectrum)?;
    let parts = [pauli::bell(3), Ket::basis(4, 0), pauli::bell(2), Ket::basis(4, 3)];
    let mut m = ComplexMatrix::zeros(4);
    for (w, k) in l.iter().zip(&parts) {
        m.add_scaled(*w, &k.projector());
    }
    DensityMatrix::new(m)
}

/// diag(λ₁, λ₂, λ₃, λ₄) in the computational basis (separable).
pub fn separable_with_spectrum(spectrum: &[f64; 4]) -> Result<DensityMatrix> {
    let l = normalize_spectrum(spectrum)?;
    DensityMatrix::new(ComplexMatrix::diag_real(&l))
}

/// (U_A ⊗ U_B) diag(λ) (U_A ⊗ U_B)† with Haar-random local unitaries drawn
/// from stream `index` of `seed`. Still separable, but unlike the diagonal
/// state it is not a critical point of the feedback.
pub fn rotated_separable_with_spectrum(spectrum: &[f64; 4], seed: u64, index: u64) -> Result<DensityMatrix> {
    let l = normalize_spectrum(spectrum)?;
    let mut rng = rng_for(seed, index);
    let ua = haar_unitary(2, &mut rng);
    let ub = haar_unitary(2, &mut rng);
    conjugate(&tensor_product(&ua, &ub), &l)
}

/// QΛQ† with Q Haar-random from `seed`.
pub fn random_density_with_spectrum(spectrum: &[f64; 4], seed: u64) -> Result<DensityMatrix> {
    random_density_at(spectrum, seed, 0)
}

fn random_density_at(spectrum: &[f64; 4], seed: u64, index: u64) -> Result<DensityMatrix> {
    let l = normalize_spectrum(spectrum)?;
    let q = haar_unitary(4, &mut rng_for(seed, index));
    conjugate(&q, &l)
}

fn conjugate(q: &ComplexMatrix, l: &[f64; 4]) -> Result<DensityMatrix> {
    let mut m = &(q * &ComplexMatrix::diag_real(l)) * &q.dagger();
    m.hermitize();
    DensityMatrix::new(m)
}

/// Starting point of a MEMS run. Seeded modes draw start `i` from stream `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialMode {
    Kernel,
    Separable(u64),
    Random(u64),
}

impl InitialMode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Kernel => "kernel",
            Self::Separable(_) => "separable",
            Self::Random(_) => "random",
        }
    }
}

/// Start `index` of the given mode. Kernel ignores the index.
pub fn mems_initial_state(spectrum: &[f64; 4], mode: InitialMode, index: u64) -> Result<DensityMatrix> {
    match mode {
        InitialMode::Kernel => kernel_mems(spectrum),
        InitialMode::Separable(seed) => rotated_separable_with_spectrum(spectrum, seed, index),
        InitialMode::Random(seed) => random_density_at(spectrum, seed, index),
    }
}

/// Default number of independent starts for the seeded modes.
pub const DEFAULT_MEMS_STARTS: usize = 6;

/// Result of one start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartSummary {
    pub index: usize,
    pub initial_e: f64,
    pub final_e: f64,
    pub converged: bool,
    /// [`pattern_violation`] of the start's steady state.
    pub violation: f64,
}

#[derive(Debug, Clone)]
pub struct MemsOutcome {
    /// Run with the largest steady concurrence, ties going to the lower index.
    pub result: RunResult,
    pub best_start: usize,
    pub starts: Vec<StartSummary>,
    /// Spectrum after renormalization.
    pub spectrum: [f64; 4],
    pub theoretical: f64,
}

/// Mixed-state closed loop, reusing the template's Hamiltonians, gains and
/// propagation settings. The seeded modes run `starts` independent starts and
/// keep the best, because the restricted control set leaves stationary points
/// below the maximum. Selection uses only the reached concurrence.
pub fn mems_experiment(
    spectrum: &[f64; 4],
    mode: InitialMode,
    starts: usize,
    template: &ExperimentSpec,
) -> Result<MemsOutcome> {
    if template.scenario != Scenario::MixedBipartite {
        bail!(Parameter, "MEMS runs need the mixedBipartite scenario, got {}", template.scenario.name());
    }
    if starts == 0 {
        bail!(Parameter, "MEMS runs need at least one start");
    }
    let l = normalize_decreasing(spectrum)?;
    let count = if mode == InitialMode::Kernel { 1 } else { starts };
    let mut best: Option<(usize, RunResult)> = None;
    let mut summaries = Vec::with_capacity(count);
    for index in 0..count {
        let mut spec = template.clone();
        spec.initial = mems_initial_state(&l, mode, index as u64)?;
        let result = run_trajectory(&spec)?;
        let initial_e = result.trajectory.samples.first().map_or(0.0, |s| s.signal.e);
        let violation = result.tilde_report.as_ref().map_or(0.0, |r| pattern_violation(r, &l));
        summaries.push(StartSummary {
            index,
            initial_e,
            final_e: result.final_e,
            converged: result.converged,
            violation,
        });
        if best.as_ref().is_none_or(|(_, b)| result.final_e > b.final_e) {
            best = Some((index, result));
        }
    }
    let (best_start, result) = best.expect("at least one start");
    Ok(MemsOutcome { result, best_start, starts: summaries, spectrum: l, theoretical: theoretical_max_concurrence(&l) })
}

/// Steady-state weights and preconcurrences expected for the kernel class:
/// p = (λ₁, λ₃, m, m) with m = (λ₂+λ₄)/2 and c = (1, 1, c*, c*) with
/// c* = 2√(λ₂λ₄)/(λ₂+λ₄).
pub fn kernel_pattern(spectrum: &[f64; 4]) -> ([f64; 4], [f64; 4]) {
    let l = spectrum;
    let m = 0.5 * (l[1] + l[3]);
    let c = if l[1] + l[3] > 0.0 { 2.0 * (l[1] * l[3]).sqrt() / (l[1] + l[3]) } else { 0.0 };
    ([l[0], l[2], m, m], [1.0, 1.0, c, c])
}

/// Largest deviation of (p_k, c_k) from [`kernel_pattern`]. Components 2..4
/// may appear in any order, since the decomposition orders them by p_k c_k.
pub fn kernel_pattern_deviation(report: &TildeReport, spectrum: &[f64; 4]) -> f64 {
    let (p, c) = kernel_pattern(spectrum);
    let head = (report.weights[0] - p[0]).abs().max((report.preconcurrences[0] - c[0]).abs());
    const PERMS: [[usize; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
    let best = PERMS
        .iter()
        .map(|perm| {
            (0..3)
                .map(|i| {
                    let k = i + 1;
                    let e = perm[i];
                    (report.weights[k] - p[e]).abs().max((report.preconcurrences[k] - c[e]).abs())
                })
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min);
    head.max(best)
}

/// Largest distance of any c_k from the nearer of the two kernel-class
/// values 1 and c*.
pub fn pattern_violation(report: &TildeReport, spectrum: &[f64; 4]) -> f64 {
    let (_, c) = kernel_pattern(spectrum);
    report.preconcurrences.iter().map(|&ck| (ck - 1.0).abs().min((ck - c[2]).abs())).fold(0.0, f64::max)
}
