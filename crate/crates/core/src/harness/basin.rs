use super::random::{random_simplex, rng_for};
use super::run::{run_trajectory, ExperimentSpec, Scenario, TerminalClass};
use crate::error::{bail, Result};
use crate::measures::concurrence_pure;
use crate::qmat::{pauli, Ket};
use crate::C64;

/// Initial state on the Bell tetrahedron and where it ended up. The
/// coefficients are squared Bell-basis amplitudes (barycentric weights).
#[derive(Debug, Clone, PartialEq)]
pub struct BasinPoint {
    pub coefficients: [f64; 4],
    pub class: TerminalClass,
}

/// Concurrence below which a start is treated as separable and perturbed.
const SEPARABLE_CUTOFF: f64 = 1e-9;

/// Σ √w_k |β_k⟩. A separable result gets the (1+ε) weighting on its largest
/// coefficient (the first on ties), so the loop has a signal to act on.
pub fn tetrahedron_state(weights: &[f64; 4], epsilon: f64) -> Result<Ket> {
    if weights.iter().any(|&w| !(w >= 0.0)) {
        bail!(Parameter, "tetrahedron weights must be nonnegative");
    }
    let mut c: [C64; 4] = std::array::from_fn(|k| C64::new(weights[k].sqrt(), 0.0));
    let ket = pauli::bell_combination(&c)?;
    if concurrence_pure(&ket.density())? >= SEPARABLE_CUTOFF {
        return Ok(ket);
    }
    let mut top = 0;
    for k in 1..4 {
        if weights[k] > weights[top] {
            top = k;
        }
    }
    c[top] *= 1.0 + epsilon;
    pauli::bell_combination(&c)
}

/// All weight vectors (i, j, k, l)/resolution with nonnegative integer parts.
pub fn basin_grid(resolution: usize) -> Vec<[f64; 4]> {
    let r = resolution;
    let mut out = Vec::new();
    for i in 0..=r {
        for j in 0..=r - i {
            for k in 0..=r - i - j {
                let l = r - i - j - k;
                out.push([i, j, k, l].map(|v| v as f64 / r as f64));
            }
        }
    }
    out
}

/// Uniform random simplex points; point `i` draws from stream `i` of `seed`.
pub fn basin_random_weights(count: usize, seed: u64) -> Vec<[f64; 4]> {
    (0..count)
        .map(|i| {
            let w = random_simplex(4, &mut rng_for(seed, i as u64));
            [w[0], w[1], w[2], w[3]]
        })
        .collect()
}

/// Grid points followed by `random_points` seeded interior samples.
pub fn basin_initial_weights(resolution: usize, random_points: usize, seed: u64) -> Result<Vec<[f64; 4]>> {
    if resolution < 2 {
        bail!(Parameter, "basin resolution must be at least 2, got {}", resolution);
    }
    let mut w = basin_grid(resolution);
    w.extend(basin_random_weights(random_points, seed));
    Ok(w)
}

/// Runs one tetrahedron point with the template's controller and
/// propagation. Runs that do not converge are labelled Other.
pub fn basin_point(weights: &[f64; 4], template: &ExperimentSpec) -> Result<BasinPoint> {
    if template.scenario != Scenario::PureBipartite {
        bail!(Parameter, "basin scans need the pureBipartite scenario, got {}", template.scenario.name());
    }
    let ket = tetrahedron_state(weights, template.controller.gains.epsilon)?;
    let mut spec = template.clone();
    spec.initial = ket.density();
    let res = run_trajectory(&spec)?;
    let class = if res.converged { res.terminal_class } else { TerminalClass::Other };
    Ok(BasinPoint { coefficients: *weights, class })
}

/// Sequential scan over [`basin_initial_weights`].
pub fn basin_scan(
    resolution: usize,
    template: &ExperimentSpec,
    seed: u64,
    random_points: usize,
) -> Result<Vec<BasinPoint>> {
    basin_initial_weights(resolution, random_points, seed)?.iter().map(|w| basin_point(w, template)).collect()
}
