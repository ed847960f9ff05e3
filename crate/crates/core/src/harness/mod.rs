//! Experiment orchestration: presets, closed-loop runs, terminal-state
//! classification, basin scans, MEMS and tripartite experiments.

mod basin;
mod mems;
mod presets;
pub mod random;
pub mod reference;
mod run;
mod tripartite;

pub use basin::{
    basin_grid, basin_initial_weights, basin_point, basin_random_weights, basin_scan, tetrahedron_state, BasinPoint,
};
pub use mems::{
    kernel_mems, kernel_pattern, kernel_pattern_deviation, mems_experiment, mems_initial_state, normalize_spectrum,
    pattern_violation, random_density_with_spectrum, rotated_separable_with_spectrum, separable_with_spectrum,
    theoretical_max_concurrence, InitialMode, MemsOutcome, StartSummary, DEFAULT_MEMS_STARTS, SPECTRUM_SUM_TOL,
};
pub use presets::{preset_hamiltonians, transfer_generators, Preset, DEFAULT_COUPLING_J};
pub use random::{haar_unitary, random_hermitian, random_ket, random_simplex, rng_for};
pub use run::{
    classify_terminal, detect_convergence, final_signal_norm, run_trajectory, ConvergenceCriteria, ExperimentSpec,
    RunResult, Scenario, TerminalClass, TildeReport, DEFAULT_EPSILON, DEFAULT_GAIN, DEFAULT_MIXED_DT,
    DEFAULT_MIXED_T_MAX, DEFAULT_TOL_FID,
};
pub use tripartite::{perturbation_direction, tripartite_experiment, TripartiteInitial};
