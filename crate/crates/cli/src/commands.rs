//! The five subcommands. Each computes all of its artifacts in memory
//! (in parallel where runs are independent) before anything is written.

use std::collections::BTreeMap;
use std::path::PathBuf;

use entlyap_core::harness::{
    basin_initial_weights, basin_point, final_signal_norm, kernel_pattern_deviation, mems_experiment,
    pattern_violation, run_trajectory, theoretical_max_concurrence, tripartite_experiment, MemsOutcome, RunResult,
    Scenario,
};
use entlyap_core::measures::validate_gf_measure;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{parse_config_str, parse_mode, CommandKind, RunConfig, ValidateConfig};
use crate::error::{CliError, CliResult};
use crate::output::{self, Artifact, Format};

/// Threshold on the largest c_k deviation separating kernel-class steady
/// states from the rest.
pub const KERNEL_CLASS_VIOLATION: f64 = 5e-2;

#[derive(Debug, Clone)]
pub struct Options {
    pub config: PathBuf,
    pub out: PathBuf,
    pub seed: Option<u64>,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
    pub format: Format,
}

/// Parses the config, computes the artifacts and writes them.
pub fn execute(command: CommandKind, opts: &Options) -> CliResult<Vec<PathBuf>> {
    let text = std::fs::read_to_string(&opts.config)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", opts.config.display())))?;
    let artifacts = compute(command, &text, opts.seed, opts.threads, opts.format)?;
    output::write_artifacts(&opts.out, &artifacts)
}

/// Everything [`execute`] would write, without touching the file system.
pub fn compute(
    command: CommandKind,
    config_text: &str,
    seed: Option<u64>,
    threads: usize,
    format: Format,
) -> CliResult<Vec<Artifact>> {
    let raw = parse_config_str(config_text)?;
    if command == CommandKind::Validate {
        if seed.is_some() {
            return Err(CliError::Config("--seed is not used by the validate command".into()));
        }
        return validate(&ValidateConfig::resolve(&raw)?);
    }
    let cfg = RunConfig::resolve(&raw, command, seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {threads} worker threads: {e}")))?;
    pool.install(|| match command {
        CommandKind::Run => run(&cfg, format),
        CommandKind::Basin => basin(&cfg, format),
        CommandKind::Mems => mems(&cfg, format),
        CommandKind::Multi => multi(&cfg, format),
        CommandKind::Validate => unreachable!("handled above"),
    })
}

fn summary(command: CommandKind, config: Value, body: (&str, Value), files: &[&Artifact]) -> Artifact {
    let names: Vec<&str> = files.iter().map(|a| a.name.as_str()).collect();
    let v = json!({
        "command": command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        body.0: body.1,
        "artifacts": names,
    });
    Artifact { name: "summary.json".into(), contents: output::to_json(&v) }
}

fn config_value<T: serde::Serialize>(cfg: &T) -> Value {
    serde_json::to_value(cfg).expect("config serializes")
}

fn result_value(cfg: &RunConfig, r: &RunResult) -> Value {
    let mut v = json!({
        "converged": r.converged,
        "finalE": r.final_e,
        "terminalClass": r.terminal_class.label(),
        "steps": r.trajectory.steps,
        "samples": r.trajectory.samples.len(),
        "finalTime": r.trajectory.samples.last().map_or(0.0, |s| s.t),
        "finalSignalNorm": final_signal_norm(r),
        "finalPopulations": r.final_state.populations(),
    });
    if let Some(p) = r.trajectory.samples.last().and_then(|s| s.signal.partition.clone()) {
        v["finalPartition"] = json!(p);
    }
    if cfg.scenario() == Scenario::MixedBipartite {
        let spectrum = entlyap_core::harness::normalize_spectrum(&cfg.spectra.as_ref().expect("mixed")[0])
            .expect("validated spectrum");
        mixed_fields(&mut v, r, &spectrum);
    }
    v
}

fn mixed_fields(v: &mut Value, r: &RunResult, spectrum: &[f64; 4]) {
    v["steadyConcurrence"] = json!(r.steady_concurrence);
    v["theoreticalMax"] = json!(theoretical_max_concurrence(spectrum));
    if let Some(t) = &r.tilde_report {
        let violation = pattern_violation(t, spectrum);
        v["weights"] = json!(t.weights);
        v["preconcurrences"] = json!(t.preconcurrences);
        v["patternViolation"] = json!(violation);
        v["kernelPatternDeviation"] = json!(kernel_pattern_deviation(t, spectrum));
        v["kernelClass"] = json!(violation <= KERNEL_CLASS_VIOLATION);
    }
}

fn run(cfg: &RunConfig, format: Format) -> CliResult<Vec<Artifact>> {
    let mut spec = cfg.template()?;
    spec.initial = cfg.initial_state()?;
    let r = run_trajectory(&spec)?;
    let traj = Artifact {
        name: format!("trajectory.{}", format.extension()),
        contents: output::trajectory(&r.trajectory, spec.hamiltonians.len(), format),
    };
    let s = summary(CommandKind::Run, config_value(cfg), ("result", result_value(cfg, &r)), &[&traj]);
    Ok(vec![traj, s])
}

fn basin(cfg: &RunConfig, format: Format) -> CliResult<Vec<Artifact>> {
    let tmpl = cfg.template()?;
    let res = cfg.resolution.expect("basin resolution");
    let extra = cfg.random_points.expect("basin random points");
    let weights = basin_initial_weights(res, extra, cfg.seed)?;
    let points = weights.par_iter().map(|w| basin_point(w, &tmpl)).collect::<Result<Vec<_>, _>>()?;
    let data = Artifact {
        name: format!("basin.{}", format.extension()),
        contents: match format {
            Format::Csv => output::basin_csv(&points),
            Format::Json => output::basin_json(&points),
        },
    };
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for p in &points {
        *counts.entry(p.class.label()).or_default() += 1;
    }
    let body = json!({ "points": points.len(), "gridPoints": points.len() - extra, "randomPoints": extra, "classCounts": counts });
    let s = summary(CommandKind::Basin, config_value(cfg), ("result", body), &[&data]);
    Ok(vec![data, s])
}

fn mems(cfg: &RunConfig, format: Format) -> CliResult<Vec<Artifact>> {
    let tmpl = cfg.template()?;
    let spectra = cfg.spectra.as_ref().expect("mems spectra");
    let modes = cfg.modes.as_ref().expect("mems modes");
    let starts = cfg.starts.expect("mems starts");
    let jobs: Vec<(usize, &String)> = (0..spectra.len()).flat_map(|i| modes.iter().map(move |m| (i, m))).collect();
    let outcomes = jobs
        .par_iter()
        .map(|&(i, m)| mems_experiment(&spectra[i], parse_mode(m, cfg.seed)?, starts, &tmpl).map_err(CliError::from))
        .collect::<CliResult<Vec<MemsOutcome>>>()?;

    let controls = tmpl.hamiltonians.len();
    let mut artifacts = Vec::new();
    let mut runs = Vec::new();
    let mut table = String::from(
        "spectrum_index,mode,lambda_1,lambda_2,lambda_3,lambda_4,e_star,steady,converged,best_start,\
         p_1,p_2,p_3,p_4,c_1,c_2,c_3,c_4,pattern_violation\n",
    );
    for (&(i, mode), o) in jobs.iter().zip(&outcomes) {
        let name = format!("trajectory_{i}_{mode}.{}", format.extension());
        artifacts.push(Artifact {
            name: name.clone(),
            contents: output::trajectory(&o.result.trajectory, controls, format),
        });
        let tilde = o.result.tilde_report.clone().expect("mixed runs carry a tilde report");
        let violation = pattern_violation(&tilde, &o.spectrum);
        let starts: Vec<Value> = o
            .starts
            .iter()
            .map(|s| {
                json!({ "index": s.index, "initialE": s.initial_e, "finalE": s.final_e, "converged": s.converged,
                        "patternViolation": s.violation })
            })
            .collect();
        let mut v = json!({
            "spectrumIndex": i,
            "mode": mode,
            "spectrum": o.spectrum,
            "converged": o.result.converged,
            "terminalClass": o.result.terminal_class.label(),
            "bestStart": o.best_start,
            "starts": starts,
            "trajectory": name,
        });
        mixed_fields(&mut v, &o.result, &o.spectrum);
        runs.push(v);
        let mut row: Vec<String> = vec![i.to_string(), mode.clone()];
        row.extend(o.spectrum.iter().map(|&x| output::format_number(x)));
        row.push(output::format_number(o.theoretical));
        row.push(output::format_number(o.result.final_e));
        row.push(o.result.converged.to_string());
        row.push(o.best_start.to_string());
        row.extend(tilde.weights.iter().chain(&tilde.preconcurrences).map(|&x| output::format_number(x)));
        row.push(output::format_number(violation));
        table.push_str(&row.join(","));
        table.push('\n');
    }
    let table = Artifact {
        name: format!("mems.{}", format.extension()),
        contents: match format {
            Format::Csv => table,
            Format::Json => output::to_json(&Value::Array(runs.clone())),
        },
    };
    artifacts.insert(0, table);
    let refs: Vec<&Artifact> = artifacts.iter().collect();
    let s = summary(CommandKind::Mems, config_value(cfg), ("runs", Value::Array(runs)), &refs);
    artifacts.push(s);
    Ok(artifacts)
}

fn multi(cfg: &RunConfig, format: Format) -> CliResult<Vec<Artifact>> {
    let tmpl = cfg.template()?;
    let initials = cfg.initials.as_ref().expect("multi initials");
    let results = initials
        .par_iter()
        .map(|name| tripartite_experiment(&tmpl, &cfg.tripartite_initial(name)).map_err(CliError::from))
        .collect::<CliResult<Vec<RunResult>>>()?;
    let mut artifacts = Vec::new();
    let mut runs = Vec::new();
    for (name, r) in initials.iter().zip(&results) {
        let file = format!("trajectory_{name}.{}", format.extension());
        artifacts.push(Artifact {
            name: file.clone(),
            contents: output::trajectory(&r.trajectory, tmpl.hamiltonians.len(), format),
        });
        let mut v = result_value(cfg, r);
        v["initial"] = json!(name);
        v["trajectory"] = json!(file);
        runs.push(v);
    }
    let refs: Vec<&Artifact> = artifacts.iter().collect();
    let s = summary(CommandKind::Multi, config_value(cfg), ("runs", Value::Array(runs)), &refs);
    artifacts.push(s);
    Ok(artifacts)
}

fn validate(cfg: &ValidateConfig) -> CliResult<Vec<Artifact>> {
    let report = validate_gf_measure(cfg.gf.as_ref().expect("resolved measure"), cfg.validator_samples)?;
    let conditions: Vec<Value> =
        report.conditions.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "value": c.value })).collect();
    let v = json!({
        "command": CommandKind::Validate.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "config": config_value(cfg),
        "report": {
            "measure": report.measure,
            "samples": report.samples,
            "conditions": conditions,
            "allPassed": report.all_passed(),
            "concavityAtHalf": report.concavity_at_half,
            "analyticCurvatureSign": report.analytic_curvature_sign,
            "maximum": report.maximum,
            "signGPrime": report.sign_g_prime,
        },
    });
    Ok(vec![Artifact { name: "validation.json".into(), contents: output::to_json(&v) }])
}
