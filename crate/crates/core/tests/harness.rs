use entlyap_core::dynamics::{ControlSignal, Sample};
use entlyap_core::harness::reference::{BELL_CASES, KERNEL_CASES, REFERENCE_SPECTRUM};
use entlyap_core::harness::*;
use entlyap_core::measures::{wootters_concurrence, GFMeasure, MeasureKind};
use entlyap_core::qmat::*;
use entlyap_core::{Error, C64};

fn pure_spec(initial: DensityMatrix) -> ExperimentSpec {
    ExperimentSpec::new(Scenario::PureBipartite, MeasureKind::GF(GFMeasure::Concurrence), initial).unwrap()
}

fn mixed_template() -> ExperimentSpec {
    ExperimentSpec::new(Scenario::MixedBipartite, MeasureKind::MixedConcurrence, DensityMatrix::maximally_mixed(2))
        .unwrap()
}

/// Residual of `p` after projecting onto the span of mutually orthogonal
/// generators with Hilbert-Schmidt norm² equal to 2.
fn span_residual(p: &ComplexMatrix, gens: &[ComplexMatrix]) -> f64 {
    let mut r = p.clone();
    for g in gens {
        let coef = g.trace_product(p).re / 2.0;
        r.add_scaled(-coef, g);
    }
    r.max_abs()
}

#[test]
fn preset_shapes() {
    let pure = preset_hamiltonians(Preset::PureBipartite, 0.5);
    assert_eq!(pure.len(), 3);
    assert!(pure.drift().max_abs_diff(&pauli::pauli_string("ZZ")) < 1e-15);
    assert_eq!(preset_hamiltonians(Preset::MixedBipartite, 0.5).len(), 6);
    assert_eq!(preset_hamiltonians(Preset::MixedGenerators, 0.5).len(), 6);
    assert_eq!(preset_hamiltonians(Preset::TripartiteNearestNeighbour, 0.5).len(), 6);
    assert_eq!(preset_hamiltonians(Preset::TripartiteFull, 0.5).len(), 34);
    assert_eq!(transfer_generators(8).len(), 28);
}

#[test]
fn pauli_controls_against_transfer_generators() {
    let gens = transfer_generators(4);
    for label in ["ZY", "YZ", "YX", "XY", "IY", "YI"] {
        assert!(span_residual(&pauli::pauli_string(label), &gens) < 1e-12, "{label}");
    }
    // Even numbers of σ_y give real symmetric matrices, outside the span.
    for label in ["ZX", "XZ", "YY"] {
        assert!(span_residual(&pauli::pauli_string(label), &gens) > 0.5, "{label}");
    }
}

#[test]
fn first_table_row_reaches_its_bell_state() {
    let c = BELL_CASES[0].coefficients(1e-3).map(|x| C64::new(x, 0.0));
    let ket = pauli::bell_combination(&c).unwrap();
    let r = run_trajectory(&pure_spec(ket.density())).unwrap();
    assert!(r.converged);
    assert_eq!(r.terminal_class, TerminalClass::Bell(0));
    assert_eq!(r.terminal_class.label(), "Bell_b00");
    let pops = r.final_state.populations();
    for (p, want) in pops.iter().zip([0.5, 0.0, 0.0, 0.5]) {
        assert!((p - want).abs() < 1e-3);
    }
}

#[test]
fn classification_examples() {
    assert_eq!(classify_terminal(&pauli::bell(2).density(), 0.999).unwrap(), TerminalClass::Bell(2));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // p = q = 1/√2 in the general maximally entangled form.
    let mes = Ket::from_real(&[s, s, -s, s]).unwrap();
    assert_eq!(classify_terminal(&mes.density(), 0.999).unwrap(), TerminalClass::BellEquivalent);
    assert_eq!(classify_terminal(&Ket::basis(4, 0).density(), 0.999).unwrap(), TerminalClass::Other);
    assert!(classify_terminal(&DensityMatrix::maximally_mixed(2), 0.999).is_err());
    for c in [TerminalClass::Bell(1), TerminalClass::BellEquivalent, TerminalClass::Mems, TerminalClass::Other] {
        assert_eq!(TerminalClass::from_label(c.label()), Some(c));
    }
}

fn sample(x: f64) -> Sample {
    Sample {
        t: 0.0,
        rho: DensityMatrix::maximally_mixed(2),
        signal: ControlSignal { x: vec![x, -x], ..Default::default() },
    }
}

#[test]
fn convergence_detection() {
    let quiet: Vec<Sample> = (0..5).map(|_| sample(1e-8)).collect();
    assert!(detect_convergence(&quiet, 1e-6, 5));
    assert!(!detect_convergence(&quiet, 1e-6, 6));
    let mut noisy = quiet.clone();
    noisy[2] = sample(1e-3);
    assert!(!detect_convergence(&noisy, 1e-6, 5));
    assert!(detect_convergence(&noisy, 1e-6, 2));
}

#[test]
fn spec_rejects_mismatched_measure() {
    let r = ExperimentSpec::new(
        Scenario::MixedBipartite,
        MeasureKind::GF(GFMeasure::Concurrence),
        Ket::basis(4, 0).density(),
    );
    match r {
        Err(Error::Parameter(msg)) => assert!(msg.contains("mixedBipartite") && msg.contains("concurrence"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn tetrahedron_states() {
    let v = tetrahedron_state(&[1.0, 0.0, 0.0, 0.0], 1e-3).unwrap();
    assert!((v.inner(&pauli::bell(0)).norm() - 1.0).abs() < 1e-14);
    // (β00 + β01)/√2 = |00⟩ is separable and gets the (1+ε) weighting.
    let sep = tetrahedron_state(&[0.5, 0.5, 0.0, 0.0], 1e-3).unwrap();
    let c = pauli::bell_combination(&BELL_CASES[0].coefficients(1e-3).map(|x| C64::new(x, 0.0))).unwrap();
    assert!((sep.inner(&c).norm() - 1.0).abs() < 1e-14);
    assert!(tetrahedron_state(&[-0.1, 0.5, 0.6, 0.0], 1e-3).is_err());
}

#[test]
fn basin_grid_and_weights() {
    assert_eq!(basin_grid(4).len(), 35);
    for w in basin_grid(5) {
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
    let w = basin_initial_weights(3, 4, 9).unwrap();
    assert_eq!(w.len(), 20 + 4);
    assert_eq!(w, basin_initial_weights(3, 4, 9).unwrap());
    assert!(basin_initial_weights(1, 0, 0).is_err());
}

#[test]
fn basin_vertex_and_edge_points() {
    let tmpl = pure_spec(Ket::basis(4, 0).density());
    assert_eq!(basin_point(&[1.0, 0.0, 0.0, 0.0], &tmpl).unwrap().class, TerminalClass::Bell(0));
    assert_eq!(basin_point(&[0.7, 0.3, 0.0, 0.0], &tmpl).unwrap().class, TerminalClass::Bell(0));
    assert_eq!(basin_point(&[0.0, 0.0, 0.2, 0.8], &tmpl).unwrap().class, TerminalClass::Bell(3));
    assert!(basin_point(&[1.0, 0.0, 0.0, 0.0], &mixed_template()).is_err());
}

#[test]
fn spectrum_handling() {
    let l = [0.4, 0.3, 0.2, 0.1];
    for seed in 0..10 {
        let rho = random_density_with_spectrum(&l, seed).unwrap();
        for (a, b) in eigenvalues_hermitian(rho.matrix()).iter().zip(l) {
            assert!((a - b).abs() < 1e-12);
        }
        let sep = rotated_separable_with_spectrum(&l, seed, 3).unwrap();
        assert!(wootters_concurrence(&sep).unwrap() < 1e-10);
        for (a, b) in eigenvalues_hermitian(sep.matrix()).iter().zip(l) {
            assert!((a - b).abs() < 1e-12);
        }
    }
    let flat = random_density_with_spectrum(&[0.25; 4], 4).unwrap();
    assert!(flat.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-12);
    let pure = random_density_with_spectrum(&[1.0, 0.0, 0.0, 0.0], 4).unwrap();
    assert!((pure.purity() - 1.0).abs() < 1e-12);
    match normalize_spectrum(&[0.5, 0.29, 0.1, 0.1]) {
        Err(Error::Parameter(msg)) => assert!(msg.contains("0.99"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
    let n = normalize_spectrum(&REFERENCE_SPECTRUM).unwrap();
    assert!((n.iter().sum::<f64>() - 1.0).abs() < 1e-15);
}

#[test]
fn kernel_start_stays_flat() {
    let o = mems_experiment(&REFERENCE_SPECTRUM, InitialMode::Kernel, DEFAULT_MEMS_STARTS, &mixed_template()).unwrap();
    assert_eq!(o.starts.len(), 1);
    assert!((o.theoretical - 0.1648).abs() < 1e-4);
    for s in &o.result.trajectory.samples {
        assert!((s.signal.e - o.theoretical).abs() < 1e-9);
    }
    assert!(o.result.converged);
    assert_eq!(o.result.terminal_class, TerminalClass::Mems);
    assert!(kernel_pattern_deviation(o.result.tilde_report.as_ref().unwrap(), &o.spectrum) < 1e-9);
}

#[test]
fn mems_reaches_the_bound_for_the_last_kernel_case() {
    let case = &KERNEL_CASES[9];
    let o = mems_experiment(&case.spectrum, InitialMode::Random(7), DEFAULT_MEMS_STARTS, &mixed_template()).unwrap();
    assert!((o.theoretical - 0.6441).abs() < 1e-3);
    assert!((o.result.final_e - o.theoretical).abs() < 1e-2);
    assert_eq!(o.starts.len(), DEFAULT_MEMS_STARTS);
    let best = o.starts.iter().map(|s| s.final_e).fold(f64::MIN, f64::max);
    assert_eq!(best, o.result.final_e);
    assert_eq!(o.starts[o.best_start].final_e, best);
}

#[test]
fn mems_argument_checks() {
    let tmpl = mixed_template();
    assert!(mems_experiment(&REFERENCE_SPECTRUM, InitialMode::Random(1), 0, &tmpl).is_err());
    assert!(mems_experiment(&[0.1, 0.2, 0.3, 0.4], InitialMode::Kernel, 1, &tmpl).is_err());
    let pure = pure_spec(Ket::basis(4, 0).density());
    assert!(mems_experiment(&REFERENCE_SPECTRUM, InitialMode::Kernel, 1, &pure).is_err());
}

#[test]
fn tripartite_ghz_is_a_fixed_point() {
    for (scenario, kind) in [
        (Scenario::TripartiteGC, MeasureKind::GeneralizedConcurrence),
        (Scenario::TripartiteGME, MeasureKind::GMEConcurrence),
    ] {
        let mut tmpl = ExperimentSpec::new(scenario, kind, pauli::ghz(3).density()).unwrap();
        tmpl.propagation.t_max = 2.0;
        let r = tripartite_experiment(&tmpl, &TripartiteInitial::Ghz).unwrap();
        for s in &r.trajectory.samples {
            assert!((s.signal.e - 1.0).abs() < 1e-9);
        }
        assert!(final_signal_norm(&r) < 1e-9);
    }
}

#[test]
fn tripartite_full_preset_reaches_one_from_perturbed_ground_state() {
    let tmpl =
        ExperimentSpec::new(Scenario::TripartiteGC, MeasureKind::GeneralizedConcurrence, pauli::ghz(3).density())
            .unwrap()
            .with_hamiltonians(preset_hamiltonians(Preset::TripartiteFull, 0.5))
            .unwrap();
    let init = TripartiteInitial::Perturbed { direction: perturbation_direction(1), epsilon: 1e-3 };
    let r = tripartite_experiment(&tmpl, &init).unwrap();
    assert!(r.converged);
    assert!((r.final_e - 1.0).abs() < 1e-2);
}

#[test]
fn runs_are_deterministic() {
    let start = random_density_with_spectrum(&REFERENCE_SPECTRUM, 11).unwrap();
    let mut spec = mixed_template();
    spec.initial = start;
    spec.propagation.t_max = 5.0;
    let a = run_trajectory(&spec).unwrap();
    let b = run_trajectory(&spec).unwrap();
    assert_eq!(a.final_state.matrix().as_slice(), b.final_state.matrix().as_slice());
    assert_eq!(a.trajectory.samples.len(), b.trajectory.samples.len());
}
