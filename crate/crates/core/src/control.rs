//! Lyapunov feedback signals x_k and control fields u_k.

use crate::dynamics::{ControlSignal, Controller, HamiltonianSet};
use crate::error::{bail, Result};
use crate::measures::{gc_matrix, gme_matrix, measure_max, reduced_m, tilde_of_matrix, GFMeasure, MeasureKind};
use crate::qmat::{eigh, reduce_qubits, ComplexMatrix, DensityMatrix, Ket};
use crate::C64;

/// Largest tolerated real part of a trace that should be purely imaginary.
pub const RESIDUE_LIMIT: f64 = 1e-6;

/// Floor on the component concurrences in the mixed-state signal.
pub const COMPONENT_FLOOR: f64 = 1e-8;

/// Shape function h with h(x)·x ≥ 0 and h(x) = 0 iff x = 0.
#[derive(Debug, Clone, Copy)]
pub struct FeedbackShape {
    pub name: &'static str,
    pub h: fn(f64) -> f64,
}

fn linear(x: f64) -> f64 {
    x
}

impl Default for FeedbackShape {
    fn default() -> Self {
        Self::linear()
    }
}

impl FeedbackShape {
    /// h(x) = x.
    pub fn linear() -> Self {
        Self { name: "linear", h: linear }
    }

    /// Checks the sign conditions on a symmetric grid before accepting `h`.
    pub fn new(name: &'static str, h: fn(f64) -> f64) -> Result<Self> {
        if h(0.0) != 0.0 {
            bail!(Parameter, "shape {} must vanish at 0", name);
        }
        for i in 1..=200 {
            let mag = 10f64.powf(-8.0 + 10.0 * i as f64 / 200.0);
            for x in [mag, -mag] {
                let y = h(x);
                if !(y * x > 0.0) {
                    bail!(Parameter, "shape {} violates h(x)·x > 0 at x = {:e}", name, x);
                }
            }
        }
        Ok(Self { name, h })
    }

    pub fn apply(&self, x: f64) -> f64 {
        (self.h)(x)
    }
}

/// Gains r_k and the separable-state perturbation ε.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlGains {
    pub r: Vec<f64>,
    pub epsilon: f64,
}

impl ControlGains {
    pub fn new(r: Vec<f64>, epsilon: f64) -> Result<Self> {
        if r.is_empty() || r.iter().any(|&g| !(g > 0.0) || !g.is_finite()) {
            bail!(Parameter, "gains must be positive and finite");
        }
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            bail!(Parameter, "epsilon must be nonnegative, got {}", epsilon);
        }
        Ok(Self { r, epsilon })
    }

    pub fn uniform(count: usize, r: f64, epsilon: f64) -> Result<Self> {
        Self::new(vec![r; count], epsilon)
    }
}

/// Measure, shape, gains and the sign factor sgn(G′) for (G, f) measures.
#[derive(Debug, Clone)]
pub struct ControllerSpec {
    pub kind: MeasureKind,
    pub shape: FeedbackShape,
    pub gains: ControlGains,
    pub sign_convention: f64,
}

impl ControllerSpec {
    pub fn new(kind: MeasureKind, shape: FeedbackShape, gains: ControlGains) -> Self {
        let sign_convention = match &kind {
            MeasureKind::GF(m) => m.sign_g_prime(),
            _ => 1.0,
        };
        Self { kind, shape, gains, sign_convention }
    }
}

/// Feedback signals together with the largest real part seen in the traces
/// that should be purely imaginary.
#[derive(Debug, Clone)]
pub struct Feedback {
    pub x: Vec<f64>,
    pub residue: f64,
}

impl Feedback {
    fn checked(self) -> Result<Self> {
        if !(self.residue <= RESIDUE_LIMIT) {
            bail!(NumericalIntegrity, "feedback trace has real residue {:e}", self.residue);
        }
        Ok(self)
    }
}

/// Tr(a·b) where the result should be imaginary: returns (i·Tr, |Re Tr|).
fn i_trace(a: &ComplexMatrix, b: &ComplexMatrix) -> (f64, f64) {
    let t = a.trace_product(b);
    (-t.im, t.re.abs())
}

fn check_ops(rho: &DensityMatrix, hs: &HamiltonianSet, nq: Option<usize>, what: &str) -> Result<()> {
    if let Some(n) = nq {
        rho.require_qubits(n, what)?;
    }
    if rho.dim() != hs.dim() {
        bail!(Dimension, "{}: state dimension {} does not match Hamiltonians ({})", what, rho.dim(), hs.dim());
    }
    Ok(())
}

pub(crate) fn pure_feedback(rho: &ComplexMatrix, m: &GFMeasure, ops: &[ComplexMatrix]) -> Feedback {
    let sp = eigh(&reduced_m(rho));
    let fp = sp.map(|l| C64::new(m.f_prime(l.clamp(0.0, 1.0)), 0.0));
    let mut residue: f64 = 0.0;
    let x = ops
        .iter()
        .map(|a| {
            let cm = reduced_m(&a.commutator(rho));
            let (x, r) = i_trace(&fp, &cm);
            residue = residue.max(r);
            x
        })
        .collect();
    Feedback { x, residue }
}

/// x_k = i·Tr(f′(ρ_M)·(A_kρ − ρA_k)_M) for a pure two-qubit state.
pub fn feedback_pure(rho: &DensityMatrix, m: &GFMeasure, hs: &HamiltonianSet, t: f64) -> Result<Feedback> {
    check_ops(rho, hs, Some(2), "feedback_pure")?;
    rho.require_pure("feedback_pure")?;
    pure_feedback(rho.matrix(), m, &hs.interaction_operators(t)).checked()
}

/// u_k = −sgn(G′)·r_k·h(x_k).
pub fn control_pure(x: &[f64], spec: &ControllerSpec) -> Vec<f64> {
    x.iter().zip(&spec.gains.r).map(|(&x, &r)| -spec.sign_convention * r * spec.shape.apply(x)).collect()
}

pub(crate) fn mixed_feedback(rho: &ComplexMatrix, ops: &[ComplexMatrix]) -> (Feedback, f64) {
    let td = tilde_of_matrix(rho);
    let signs = [1.0, -1.0, -1.0, -1.0];
    let mut acc = vec![C64::new(0.0, 0.0); ops.len()];
    for j in 0..4 {
        let v = &td.vectors[j];
        let z = ComplexMatrix::outer(v, v);
        let zm = reduced_m(&z);
        let w = signs[j] / td.takagi[j].max(COMPONENT_FLOOR);
        for (k, a) in ops.iter().enumerate() {
            // [A, xx†] = (Ax)x† − x(Ax)†.
            let ax = a.apply(v);
            let comm = &ComplexMatrix::outer(&ax, v) - &ComplexMatrix::outer(v, &ax);
            acc[k] += zm.trace_product(&reduced_m(&comm)) * w;
        }
    }
    let residue = acc.iter().map(|t| t.re.abs()).fold(0.0, f64::max);
    let x = acc.iter().map(|t| -t.im).collect();
    (Feedback { x, residue }, td.signed_sum())
}

/// x_k = i·Σ_j s_j/E_c(Z_j)·Tr((Z_j)_M·(A_kZ_j − Z_jA_k)_M) over the tilde
/// decomposition Z_j = x_j x_j†, with s = (+, −, −, −) and E_c(Z_j) = p_j c_j
/// floored at [`COMPONENT_FLOOR`].
pub fn feedback_mixed(rho: &DensityMatrix, hs: &HamiltonianSet, t: f64) -> Result<Feedback> {
    check_ops(rho, hs, Some(2), "feedback_mixed")?;
    mixed_feedback(rho.matrix(), &hs.interaction_operators(t)).0.checked()
}

/// u_k = r_k·h(x_k). Also the law for the multipartite signals.
pub fn control_mixed(x: &[f64], spec: &ControllerSpec) -> Vec<f64> {
    x.iter().zip(&spec.gains.r).map(|(&x, &r)| r * spec.shape.apply(x)).collect()
}

fn cut_feedback(rho: &ComplexMatrix, n: usize, sides: &[Vec<usize>], ops: &[ComplexMatrix]) -> Feedback {
    let reduced: Vec<ComplexMatrix> = sides.iter().map(|s| reduce_qubits(rho, n, s).expect("valid cut")).collect();
    let mut residue: f64 = 0.0;
    let x = ops
        .iter()
        .map(|a| {
            let comm = a.commutator(rho);
            let mut acc = C64::new(0.0, 0.0);
            for (s, r) in sides.iter().zip(&reduced) {
                acc += r.trace_product(&reduce_qubits(&comm, n, s).expect("valid cut"));
            }
            residue = residue.max(acc.re.abs());
            -acc.im
        })
        .collect();
    Feedback { x, residue }
}

pub(crate) fn gc_feedback(rho: &ComplexMatrix, n: usize, ops: &[ComplexMatrix]) -> Feedback {
    let singles: Vec<Vec<usize>> = (0..n).map(|j| vec![j]).collect();
    cut_feedback(rho, n, &singles, ops)
}

/// x_k = i·Σ_j Tr(ρ_j·(A_kρ − ρA_k)_j) over single-qubit reductions.
pub fn feedback_gc(rho: &DensityMatrix, hs: &HamiltonianSet, t: f64) -> Result<Feedback> {
    check_ops(rho, hs, None, "feedback_gc")?;
    rho.require_pure("feedback_gc")?;
    gc_feedback(rho.matrix(), rho.nqubits(), &hs.interaction_operators(t)).checked()
}

/// x_k = i·Tr(ρ_γ·(A_kρ − ρA_k)_γ) on the current minimizing cut γ, which is
/// returned alongside.
pub fn feedback_gme(rho: &DensityMatrix, hs: &HamiltonianSet, t: f64) -> Result<(Feedback, Vec<usize>)> {
    check_ops(rho, hs, None, "feedback_gme")?;
    rho.require_pure("feedback_gme")?;
    let n = rho.nqubits();
    let (_, cut) = gme_matrix(rho.matrix(), n);
    let fb = cut_feedback(rho.matrix(), n, std::slice::from_ref(&cut), &hs.interaction_operators(t));
    Ok((fb.checked()?, cut))
}

/// Normalized (1+ε)·ψ + d: the separable-state perturbation.
pub fn perturb_initial(psi: &Ket, direction: &Ket, epsilon: f64) -> Result<Ket> {
    if psi.dim() != direction.dim() {
        bail!(Dimension, "perturbation direction has dimension {}, state {}", direction.dim(), psi.dim());
    }
    let amps = psi.amplitudes().iter().zip(direction.amplitudes()).map(|(a, b)| a * (1.0 + epsilon) + b).collect();
    Ket::new(amps)
        .map_err(|_| crate::Error::Parameter(format!("perturbation with epsilon {} cancels the state", epsilon)))
}

/// Normalized ψ + ε·d.
pub fn nudge(psi: &Ket, direction: &Ket, epsilon: f64) -> Result<Ket> {
    if psi.dim() != direction.dim() {
        bail!(Dimension, "nudge direction has dimension {}, state {}", direction.dim(), psi.dim());
    }
    let amps = psi.amplitudes().iter().zip(direction.amplitudes()).map(|(a, b)| a + b * epsilon).collect();
    Ket::new(amps)
}

/// Closed-loop controller for any measure kind.
pub struct LyapunovController<'a> {
    hs: &'a HamiltonianSet,
    spec: ControllerSpec,
    nmax: f64,
    nqubits: usize,
}

impl<'a> LyapunovController<'a> {
    pub fn new(hs: &'a HamiltonianSet, spec: ControllerSpec) -> Result<Self> {
        let nqubits = hs.dim().trailing_zeros() as usize;
        if spec.gains.r.len() != hs.len() {
            bail!(Parameter, "{} gains for {} control Hamiltonians", spec.gains.r.len(), hs.len());
        }
        let nmax = measure_max(&spec.kind, nqubits)?;
        Ok(Self { hs, spec, nmax, nqubits })
    }

    pub fn spec(&self) -> &ControllerSpec {
        &self.spec
    }
}

impl Controller for LyapunovController<'_> {
    fn signal(&mut self, rho: &DensityMatrix, t: f64) -> Result<ControlSignal> {
        let ops = self.hs.interaction_operators(t);
        let m = rho.matrix();
        let n = self.nqubits;
        let (fb, e, u, partition) = match &self.spec.kind {
            MeasureKind::GF(meas) => {
                let fb = pure_feedback(m, meas, &ops);
                let e = crate::measures::eg_matrix(m, meas);
                let u = control_pure(&fb.x, &self.spec);
                (fb, e, u, None)
            }
            MeasureKind::MixedConcurrence => {
                let (fb, signed) = mixed_feedback(m, &ops);
                let u = control_mixed(&fb.x, &self.spec);
                (fb, signed.max(0.0), u, None)
            }
            MeasureKind::GeneralizedConcurrence => {
                let fb = gc_feedback(m, n, &ops);
                let u = control_mixed(&fb.x, &self.spec);
                (fb, gc_matrix(m, n), u, None)
            }
            MeasureKind::GMEConcurrence => {
                let (e, cut) = gme_matrix(m, n);
                let fb = cut_feedback(m, n, std::slice::from_ref(&cut), &ops);
                let u = control_mixed(&fb.x, &self.spec);
                (fb, e, u, Some(cut))
            }
        };
        let fb = fb.checked()?;
        Ok(ControlSignal { u, x: fb.x, v: self.nmax - e, e, partition })
    }
}
