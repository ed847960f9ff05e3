use super::presets::{preset_hamiltonians, Preset, DEFAULT_COUPLING_J};
use crate::control::{ControlGains, ControllerSpec, FeedbackShape, LyapunovController};
use crate::dynamics::{evolve_until, HamiltonianSet, PropagationConfig, Sample, TrajectoryRecord};
use crate::error::{bail, Result};
use crate::measures::{reduced_m, tilde_of_matrix, GFMeasure, MeasureKind};
use crate::qmat::{pauli, DensityMatrix};

/// Default gain r_k.
pub const DEFAULT_GAIN: f64 = 5.0;
/// Default separable-state perturbation.
pub const DEFAULT_EPSILON: f64 = 1e-3;
/// Default Bell fidelity threshold.
pub const DEFAULT_TOL_FID: f64 = 0.999;
/// Default horizon for mixed-state runs, which converge far more slowly than
/// pure ones.
pub const DEFAULT_MIXED_T_MAX: f64 = 150.0;
/// Default step for mixed-state runs. The propagator is exact for piecewise
/// constant fields, so the coarser step only delays the feedback slightly.
pub const DEFAULT_MIXED_DT: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    PureBipartite,
    MixedBipartite,
    TripartiteGC,
    TripartiteGME,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Self::PureBipartite => "pureBipartite",
            Self::MixedBipartite => "mixedBipartite",
            Self::TripartiteGC => "tripartiteGC",
            Self::TripartiteGME => "tripartiteGME",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::PureBipartite, Self::MixedBipartite, Self::TripartiteGC, Self::TripartiteGME]
            .into_iter()
            .find(|x| x.name() == s)
    }

    pub fn nqubits(&self) -> usize {
        match self {
            Self::PureBipartite | Self::MixedBipartite => 2,
            Self::TripartiteGC | Self::TripartiteGME => 3,
        }
    }

    pub fn default_preset(&self) -> Preset {
        match self {
            Self::PureBipartite => Preset::PureBipartite,
            Self::MixedBipartite => Preset::MixedBipartite,
            Self::TripartiteGC | Self::TripartiteGME => Preset::TripartiteNearestNeighbour,
        }
    }

    /// Measure used when none is given.
    pub fn default_measure(&self) -> MeasureKind {
        match self {
            Self::PureBipartite => MeasureKind::GF(GFMeasure::Concurrence),
            Self::MixedBipartite => MeasureKind::MixedConcurrence,
            Self::TripartiteGC => MeasureKind::GeneralizedConcurrence,
            Self::TripartiteGME => MeasureKind::GMEConcurrence,
        }
    }

    pub fn default_propagation(&self) -> PropagationConfig {
        match self {
            Self::MixedBipartite => {
                PropagationConfig { dt: DEFAULT_MIXED_DT, t_max: DEFAULT_MIXED_T_MAX, record_every: 2 }
            }
            _ => PropagationConfig::default(),
        }
    }

    pub fn accepts(&self, kind: &MeasureKind) -> bool {
        matches!(
            (self, kind),
            (Self::PureBipartite, MeasureKind::GF(_))
                | (Self::MixedBipartite, MeasureKind::MixedConcurrence)
                | (Self::TripartiteGC, MeasureKind::GeneralizedConcurrence)
                | (Self::TripartiteGME, MeasureKind::GMEConcurrence)
        )
    }
}

/// Stop when max|x_k| stays below `tol` for `window` consecutive samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceCriteria {
    pub tol: f64,
    pub window: usize,
}

impl Default for ConvergenceCriteria {
    fn default() -> Self {
        Self { tol: 1e-6, window: 100 }
    }
}

/// Everything needed for one closed-loop run.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub scenario: Scenario,
    pub initial: DensityMatrix,
    pub hamiltonians: HamiltonianSet,
    pub controller: ControllerSpec,
    pub propagation: PropagationConfig,
    pub convergence: ConvergenceCriteria,
    pub tol_fid: f64,
}

impl ExperimentSpec {
    /// Scenario defaults: preset Hamiltonians with J = 0.5, gains 5, h(x) = x,
    /// ε = 1e-3, convergence 1e-6 over 100 samples.
    pub fn new(scenario: Scenario, measure: MeasureKind, initial: DensityMatrix) -> Result<Self> {
        let hamiltonians = preset_hamiltonians(scenario.default_preset(), DEFAULT_COUPLING_J);
        let gains = ControlGains::uniform(hamiltonians.len(), DEFAULT_GAIN, DEFAULT_EPSILON)?;
        let spec = Self {
            scenario,
            initial,
            controller: ControllerSpec::new(measure, FeedbackShape::linear(), gains),
            hamiltonians,
            propagation: scenario.default_propagation(),
            convergence: ConvergenceCriteria::default(),
            tol_fid: DEFAULT_TOL_FID,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Swap the Hamiltonian set, resizing uniform gains to match.
    pub fn with_hamiltonians(mut self, hs: HamiltonianSet) -> Result<Self> {
        let r = self.controller.gains.r.first().copied().unwrap_or(DEFAULT_GAIN);
        self.controller.gains = ControlGains::uniform(hs.len(), r, self.controller.gains.epsilon)?;
        self.hamiltonians = hs;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let kind = &self.controller.kind;
        if !self.scenario.accepts(kind) {
            bail!(Parameter, "scenario {} is inconsistent with measure {}", self.scenario.name(), kind.name());
        }
        let n = self.scenario.nqubits();
        if self.initial.nqubits() != n || self.hamiltonians.dim() != 1 << n {
            bail!(Dimension, "scenario {} needs a {}-qubit state and Hamiltonians", self.scenario.name(), n);
        }
        if self.scenario != Scenario::MixedBipartite && !self.initial.is_pure() {
            bail!(Contract, "scenario {} needs a pure initial state", self.scenario.name());
        }
        if self.controller.gains.r.len() != self.hamiltonians.len() {
            bail!(Parameter, "{} gains for {} controls", self.controller.gains.r.len(), self.hamiltonians.len());
        }
        self.propagation.validate()?;
        if !(self.convergence.tol > 0.0) || self.convergence.window == 0 {
            bail!(Parameter, "convergence needs a positive tolerance and window");
        }
        if !(self.tol_fid > 0.0 && self.tol_fid <= 1.0) {
            bail!(Parameter, "tolFid must lie in (0, 1], got {}", self.tol_fid);
        }
        Ok(())
    }
}

/// Terminal-state label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TerminalClass {
    /// Bell state by index: 0 = b00, 1 = b01, 2 = b10, 3 = b11.
    Bell(u8),
    BellEquivalent,
    Mems,
    Other,
}

impl TerminalClass {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Bell(0) => "Bell_b00",
            Self::Bell(1) => "Bell_b01",
            Self::Bell(2) => "Bell_b10",
            Self::Bell(_) => "Bell_b11",
            Self::BellEquivalent => "BellEquivalent",
            Self::Mems => "MEMS",
            Self::Other => "Other",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [Self::Bell(0), Self::Bell(1), Self::Bell(2), Self::Bell(3), Self::BellEquivalent, Self::Mems, Self::Other]
            .into_iter()
            .find(|c| c.label() == s)
    }
}

/// p_k, c_k and the signed sum at the end of a mixed run.
#[derive(Debug, Clone, PartialEq)]
pub struct TildeReport {
    pub weights: [f64; 4],
    pub preconcurrences: [f64; 4],
    pub signed_sum: f64,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub trajectory: TrajectoryRecord,
    pub final_state: DensityMatrix,
    pub final_e: f64,
    pub converged: bool,
    pub terminal_class: TerminalClass,
    /// Mixed runs only.
    pub steady_concurrence: Option<f64>,
    /// Mixed runs only.
    pub tilde_report: Option<TildeReport>,
}

/// Whether max|x_k| < tol held over the last `window` samples.
pub fn detect_convergence(samples: &[Sample], tol: f64, window: usize) -> bool {
    if window == 0 || samples.len() < window {
        return window == 0;
    }
    samples[samples.len() - window..].iter().all(|s| s.signal.x.iter().all(|x| x.abs() < tol))
}

/// Bell state if the fidelity with one exceeds `tol_fid`; otherwise
/// BellEquivalent when the reduced matrix is I/2 within 1e-3; otherwise Other.
pub fn classify_terminal(rho: &DensityMatrix, tol_fid: f64) -> Result<TerminalClass> {
    rho.require_qubits(2, "classify_terminal")?;
    rho.require_pure("classify_terminal")?;
    let m = rho.matrix();
    let mut best = (0.0, 0u8);
    for k in 0..4u8 {
        let b = pauli::bell(k as usize);
        let fid = crate::qmat::inner(b.amplitudes(), &m.apply(b.amplitudes())).re;
        if fid > best.0 {
            best = (fid, k);
        }
    }
    if best.0 > tol_fid {
        return Ok(TerminalClass::Bell(best.1));
    }
    let half = crate::qmat::ComplexMatrix::identity(2).scale_real(0.5);
    if reduced_m(m).max_abs_diff(&half) < 1e-3 {
        return Ok(TerminalClass::BellEquivalent);
    }
    Ok(TerminalClass::Other)
}

pub(crate) fn tilde_report(rho: &DensityMatrix) -> TildeReport {
    let td = tilde_of_matrix(rho.matrix());
    TildeReport { weights: td.weights, preconcurrences: td.preconcurrences, signed_sum: td.signed_sum() }
}

/// Closed-loop run; stops early once converged.
pub fn run_trajectory(spec: &ExperimentSpec) -> Result<RunResult> {
    spec.validate()?;
    let mut controller = LyapunovController::new(&spec.hamiltonians, spec.controller.clone())?;
    let conv = spec.convergence;
    let mut stop = |s: &[Sample]| detect_convergence(s, conv.tol, conv.window);
    let trajectory = evolve_until(&spec.initial, &spec.hamiltonians, &mut controller, &spec.propagation, &mut stop)?;
    let converged = detect_convergence(&trajectory.samples, conv.tol, conv.window);
    let final_state = trajectory.final_state.clone();
    let final_e = trajectory.samples.last().map_or(0.0, |s| s.signal.e);
    let (terminal_class, steady_concurrence, tilde) = match spec.scenario {
        Scenario::PureBipartite => (classify_terminal(&final_state, spec.tol_fid)?, None, None),
        Scenario::MixedBipartite => {
            let class = if converged { TerminalClass::Mems } else { TerminalClass::Other };
            (class, Some(final_e), Some(tilde_report(&final_state)))
        }
        Scenario::TripartiteGC | Scenario::TripartiteGME => (TerminalClass::Other, None, None),
    };
    Ok(RunResult {
        trajectory,
        final_state,
        final_e,
        converged,
        terminal_class,
        steady_concurrence,
        tilde_report: tilde,
    })
}

/// Largest |x_k| in the last sample.
pub fn final_signal_norm(result: &RunResult) -> f64 {
    result.trajectory.samples.last().map_or(0.0, |s| s.signal.x.iter().fold(0.0, |a: f64, x| a.max(x.abs())))
}
