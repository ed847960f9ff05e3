//! Hamiltonians, interaction-picture control operators and the closed-loop
//! propagator (ℏ = 1).

use crate::error::{bail, Result};
use crate::qmat::{eigh, unitary_from_generator, ComplexMatrix, DensityMatrix};
use crate::C64;

/// Drift H₀ plus control Hamiltonians H_k.
#[derive(Debug, Clone)]
pub struct HamiltonianSet {
    h0: ComplexMatrix,
    controls: Vec<ComplexMatrix>,
    coupling_j: Option<f64>,
    // Drift eigensystem and the controls expressed in it.
    drift_values: Vec<f64>,
    drift_vectors: ComplexMatrix,
    drift_diagonal: bool,
    controls_eig: Vec<ComplexMatrix>,
}

impl HamiltonianSet {
    pub fn new(h0: ComplexMatrix, controls: Vec<ComplexMatrix>, coupling_j: Option<f64>) -> Result<Self> {
        let dim = h0.dim();
        if dim < 2 || !dim.is_power_of_two() {
            bail!(Dimension, "Hamiltonian dimension {} is not a power of two >= 2", dim);
        }
        if controls.is_empty() {
            bail!(Parameter, "at least one control Hamiltonian is required");
        }
        for (k, m) in std::iter::once(&h0).chain(&controls).enumerate() {
            if m.dim() != dim {
                bail!(Dimension, "Hamiltonian {} has dimension {}, expected {}", k, m.dim(), dim);
            }
            if !m.is_finite() || m.hermiticity_error() > 1e-12 {
                bail!(Contract, "Hamiltonian {} is not Hermitian", k);
            }
        }
        let drift_diagonal = (0..dim).all(|i| (0..dim).all(|j| i == j || h0[(i, j)].norm() == 0.0));
        let (drift_values, drift_vectors) = if drift_diagonal {
            (h0.diagonal_real(), ComplexMatrix::identity(dim))
        } else {
            let sp = eigh(&h0);
            (sp.values, sp.vectors)
        };
        let vd = drift_vectors.dagger();
        let controls_eig = if drift_diagonal {
            controls.clone()
        } else {
            controls.iter().map(|h| &(&vd * h) * &drift_vectors).collect()
        };
        Ok(Self { h0, controls, coupling_j, drift_values, drift_vectors, drift_diagonal, controls_eig })
    }

    pub fn drift(&self) -> &ComplexMatrix {
        &self.h0
    }

    pub fn controls(&self) -> &[ComplexMatrix] {
        &self.controls
    }

    pub fn len(&self) -> usize {
        self.controls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.controls.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.h0.dim()
    }

    pub fn coupling_j(&self) -> Option<f64> {
        self.coupling_j
    }

    /// A_k(t) = e^{iH₀t} H_k e^{−iH₀t}.
    pub fn interaction_operator(&self, k: usize, t: f64) -> Result<ComplexMatrix> {
        if k >= self.controls.len() {
            bail!(Parameter, "control index {} out of range (have {})", k, self.controls.len());
        }
        Ok(self.rotate(k, t))
    }

    /// All A_k(t).
    pub fn interaction_operators(&self, t: f64) -> Vec<ComplexMatrix> {
        (0..self.controls.len()).map(|k| self.rotate(k, t)).collect()
    }

    fn rotate(&self, k: usize, t: f64) -> ComplexMatrix {
        let phases: Vec<C64> = self.drift_values.iter().map(|&l| C64::new(0.0, l * t).exp()).collect();
        let h = &self.controls_eig[k];
        let mut b = ComplexMatrix::from_fn(h.dim(), |a, c| phases[a] * h[(a, c)] * phases[c].conj());
        if !self.drift_diagonal {
            b = &(&self.drift_vectors * &b) * &self.drift_vectors.dagger();
        }
        b.hermitize();
        b
    }
}

/// Time step, horizon and recording stride.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConfig {
    pub dt: f64,
    pub t_max: f64,
    pub record_every: usize,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        Self { dt: 0.001, t_max: 20.0, record_every: 10 }
    }
}

impl PropagationConfig {
    pub fn new(dt: f64, t_max: f64, record_every: usize) -> Result<Self> {
        let cfg = Self { dt, t_max, record_every };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            bail!(Parameter, "dt must be positive, got {}", self.dt);
        }
        if !(self.t_max >= self.dt) || !self.t_max.is_finite() {
            bail!(Parameter, "tMax {} must be at least dt {}", self.t_max, self.dt);
        }
        if self.record_every == 0 {
            bail!(Parameter, "recordEvery must be positive");
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        ((self.t_max / self.dt).round() as usize).max(1)
    }
}

fn propagate(rho: &ComplexMatrix, ops: &[ComplexMatrix], u: &[f64], dt: f64) -> ComplexMatrix {
    let mut gen = ComplexMatrix::zeros(rho.dim());
    let mut active = false;
    for (a, &uk) in ops.iter().zip(u) {
        if uk != 0.0 {
            gen.add_scaled(uk, a);
            active = true;
        }
    }
    if !active {
        return rho.clone();
    }
    let uni = unitary_from_generator(&gen, dt);
    let mut out = &(&uni * rho) * &uni.dagger();
    out.hermitize();
    out
}

/// One interval with piecewise-constant fields: ρ′ = UρU†,
/// U = exp(−i Σ u_k A_k(t + dt/2) dt).
pub fn step(rho: &DensityMatrix, hs: &HamiltonianSet, u: &[f64], t: f64, dt: f64) -> Result<DensityMatrix> {
    if u.len() != hs.len() {
        bail!(Contract, "got {} control values for {} control Hamiltonians", u.len(), hs.len());
    }
    if rho.dim() != hs.dim() {
        bail!(Dimension, "state dimension {} does not match Hamiltonians ({})", rho.dim(), hs.dim());
    }
    let ops = hs.interaction_operators(t + 0.5 * dt);
    Ok(DensityMatrix::from_trusted(propagate(rho.matrix(), &ops, u, dt), rho.is_pure()))
}

/// What a controller reports for the current state.
#[derive(Debug, Clone, Default)]
pub struct ControlSignal {
    /// Control fields, one per control Hamiltonian.
    pub u: Vec<f64>,
    /// Feedback signals the fields were computed from.
    pub x: Vec<f64>,
    /// Lyapunov value.
    pub v: f64,
    /// Entanglement value.
    pub e: f64,
    /// Bipartition the feedback was differentiated through, if any.
    pub partition: Option<Vec<usize>>,
}

/// Computes control fields from the current state.
pub trait Controller {
    fn signal(&mut self, rho: &DensityMatrix, t: f64) -> Result<ControlSignal>;
}

impl<F: FnMut(&DensityMatrix, f64) -> Result<ControlSignal>> Controller for F {
    fn signal(&mut self, rho: &DensityMatrix, t: f64) -> Result<ControlSignal> {
        self(rho, t)
    }
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone)]
pub struct Sample {
    pub t: f64,
    pub rho: DensityMatrix,
    pub signal: ControlSignal,
}

#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub samples: Vec<Sample>,
    pub final_state: DensityMatrix,
    /// Integration steps taken.
    pub steps: usize,
    /// Whether the stop predicate ended the run before the horizon.
    pub stopped_early: bool,
}

/// Closed-loop propagation over the whole horizon.
pub fn evolve(
    rho0: &DensityMatrix,
    hs: &HamiltonianSet,
    controller: &mut dyn Controller,
    cfg: &PropagationConfig,
) -> Result<TrajectoryRecord> {
    evolve_until(rho0, hs, controller, cfg, &mut |_: &[Sample]| false)
}

/// Closed-loop propagation that also stops once `stop` returns true; it is
/// consulted after every recorded sample.
pub fn evolve_until(
    rho0: &DensityMatrix,
    hs: &HamiltonianSet,
    controller: &mut dyn Controller,
    cfg: &PropagationConfig,
    stop: &mut dyn FnMut(&[Sample]) -> bool,
) -> Result<TrajectoryRecord> {
    cfg.validate()?;
    if rho0.dim() != hs.dim() {
        bail!(Dimension, "state dimension {} does not match Hamiltonians ({})", rho0.dim(), hs.dim());
    }
    let pure = rho0.is_pure();
    let nsteps = cfg.steps();
    let mut rho = rho0.clone();
    let mut samples = Vec::new();
    let mut steps = 0;
    let mut stopped_early = false;
    while steps < nsteps {
        let t = steps as f64 * cfg.dt;
        let sig = checked_signal(controller, &rho, t, hs.len())?;
        let u = sig.u.clone();
        if steps % cfg.record_every == 0 {
            samples.push(Sample { t, rho: rho.clone(), signal: sig });
            if stop(&samples) {
                stopped_early = true;
                break;
            }
        }
        let ops = hs.interaction_operators(t + 0.5 * cfg.dt);
        rho = DensityMatrix::from_trusted(propagate(rho.matrix(), &ops, &u, cfg.dt), pure);
        steps += 1;
    }
    if !stopped_early {
        let t = steps as f64 * cfg.dt;
        let sig = checked_signal(controller, &rho, t, hs.len())?;
        samples.push(Sample { t, rho: rho.clone(), signal: sig });
    }
    Ok(TrajectoryRecord { samples, final_state: rho, steps, stopped_early })
}

fn checked_signal(c: &mut dyn Controller, rho: &DensityMatrix, t: f64, m: usize) -> Result<ControlSignal> {
    let sig = c.signal(rho, t)?;
    if sig.u.len() != m {
        bail!(Contract, "controller returned {} fields for {} control Hamiltonians", sig.u.len(), m);
    }
    if sig.u.iter().any(|v| !v.is_finite()) {
        bail!(NumericalIntegrity, "controller returned a non-finite field at t = {}", t);
    }
    Ok(sig)
}
