use super::random::{random_ket, rng_for};
use super::run::{run_trajectory, ExperimentSpec, RunResult, Scenario};
use crate::control::nudge;
use crate::error::{bail, Result};
use crate::qmat::{pauli, Ket};

/// Starting point of a three-qubit run.
#[derive(Debug, Clone, PartialEq)]
pub enum TripartiteInitial {
    /// |000⟩ + ε·direction, normalized.
    Perturbed {
        direction: Ket,
        epsilon: f64,
    },
    /// Uniformly random pure state from the seed.
    Random(u64),
    Ghz,
}

impl TripartiteInitial {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Perturbed { .. } => "perturbed",
            Self::Random(_) => "random",
            Self::Ghz => "ghz",
        }
    }

    pub fn state(&self) -> Result<Ket> {
        match self {
            Self::Perturbed { direction, epsilon } => nudge(&Ket::basis(8, 0), direction, *epsilon),
            Self::Random(seed) => Ok(random_ket(8, &mut rng_for(*seed, 0))),
            Self::Ghz => Ok(pauli::ghz(3)),
        }
    }
}

/// Perturbation direction for |000⟩ starts: a random pure state drawn from
/// `seed`.
pub fn perturbation_direction(seed: u64) -> Ket {
    random_ket(8, &mut rng_for(seed, 1))
}

pub fn tripartite_experiment(template: &ExperimentSpec, initial: &TripartiteInitial) -> Result<RunResult> {
    if !matches!(template.scenario, Scenario::TripartiteGC | Scenario::TripartiteGME) {
        bail!(Parameter, "tripartite runs need a tripartite scenario, got {}", template.scenario.name());
    }
    let mut spec = template.clone();
    spec.initial = initial.state()?.density();
    run_trajectory(&spec)
}
