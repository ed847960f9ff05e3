//! TOML configuration: flat keys, unknown keys rejected, defaults resolved
//! per scenario and echoed back through [`RunConfig`]'s serialization.

use entlyap_core::control::{ControlGains, FeedbackShape};
use entlyap_core::dynamics::PropagationConfig;
use entlyap_core::harness::reference::REFERENCE_SPECTRUM;
use entlyap_core::harness::{
    mems_initial_state, normalize_spectrum, perturbation_direction, preset_hamiltonians, random_ket, rng_for,
    ConvergenceCriteria, ExperimentSpec, InitialMode, Preset, Scenario, TripartiteInitial, DEFAULT_COUPLING_J,
    DEFAULT_EPSILON, DEFAULT_GAIN, DEFAULT_MEMS_STARTS, DEFAULT_TOL_FID,
};
use entlyap_core::measures::{GFMeasure, MeasureKind};
use entlyap_core::qmat::{pauli, DensityMatrix, Ket};
use entlyap_core::C64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_RENYI_ALPHA: f64 = 1.5;
pub const DEFAULT_BASIN_RESOLUTION: usize = 20;
pub const DEFAULT_BASIN_RANDOM_POINTS: usize = 100;
pub const DEFAULT_VALIDATOR_SAMPLES: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Run,
    Basin,
    Mems,
    Multi,
    Validate,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Run => "run",
            Self::Basin => "basin",
            Self::Mems => "mems",
            Self::Multi => "multi",
            Self::Validate => "validate",
        }
    }
}

/// The config file as written.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub scenario: Option<String>,
    pub measure: Option<String>,
    pub renyi_alpha: Option<f64>,
    pub preset: Option<String>,
    pub coupling_j: Option<f64>,
    pub gain: Option<f64>,
    pub epsilon: Option<f64>,
    pub shape: Option<String>,
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
    pub record_every: Option<usize>,
    pub conv_tol: Option<f64>,
    pub conv_window: Option<usize>,
    pub tol_fid: Option<f64>,
    pub seed: Option<u64>,
    pub initial: Option<String>,
    pub bell_coefficients: Option<Vec<f64>>,
    pub bell_boost: Option<usize>,
    pub amplitudes: Option<Vec<f64>>,
    pub spectrum: Option<Vec<f64>>,
    pub spectra: Option<Vec<Vec<f64>>>,
    pub modes: Option<Vec<String>>,
    pub starts: Option<usize>,
    pub resolution: Option<usize>,
    pub random_points: Option<usize>,
    pub initials: Option<Vec<String>>,
    pub validator_samples: Option<usize>,
}

impl RawConfig {
    fn present(&self) -> Vec<&'static str> {
        let keys: [(&'static str, bool); 27] = [
            ("scenario", self.scenario.is_some()),
            ("measure", self.measure.is_some()),
            ("renyi_alpha", self.renyi_alpha.is_some()),
            ("preset", self.preset.is_some()),
            ("coupling_j", self.coupling_j.is_some()),
            ("gain", self.gain.is_some()),
            ("epsilon", self.epsilon.is_some()),
            ("shape", self.shape.is_some()),
            ("dt", self.dt.is_some()),
            ("t_max", self.t_max.is_some()),
            ("record_every", self.record_every.is_some()),
            ("conv_tol", self.conv_tol.is_some()),
            ("conv_window", self.conv_window.is_some()),
            ("tol_fid", self.tol_fid.is_some()),
            ("seed", self.seed.is_some()),
            ("initial", self.initial.is_some()),
            ("bell_coefficients", self.bell_coefficients.is_some()),
            ("bell_boost", self.bell_boost.is_some()),
            ("amplitudes", self.amplitudes.is_some()),
            ("spectrum", self.spectrum.is_some()),
            ("spectra", self.spectra.is_some()),
            ("modes", self.modes.is_some()),
            ("starts", self.starts.is_some()),
            ("resolution", self.resolution.is_some()),
            ("random_points", self.random_points.is_some()),
            ("initials", self.initials.is_some()),
            ("validator_samples", self.validator_samples.is_some()),
        ];
        keys.iter().filter(|(_, p)| *p).map(|(k, _)| *k).collect()
    }
}

pub fn parse_config_str(text: &str) -> CliResult<RawConfig> {
    toml::from_str(text).map_err(|e| CliError::Config(e.to_string().trim_end().to_string()))
}

fn config_err<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Config(msg.into()))
}

/// Fully resolved settings for `run`, `basin`, `mems` and `multi`.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub scenario: String,
    pub measure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub renyi_alpha: Option<f64>,
    pub preset: String,
    pub coupling_j: f64,
    pub gain: f64,
    pub epsilon: f64,
    pub shape: String,
    pub dt: f64,
    pub t_max: f64,
    pub record_every: usize,
    pub conv_tol: f64,
    pub conv_window: usize,
    pub tol_fid: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bell_coefficients: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bell_boost: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra: Option<Vec<[f64; 4]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub starts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initials: Option<Vec<String>>,
    #[serde(skip)]
    pub scenario_kind: Option<Scenario>,
    #[serde(skip)]
    pub measure_kind: Option<MeasureKind>,
}

/// Settings for `validate`.
#[derive(Debug, Clone, Serialize)]
pub struct ValidateConfig {
    pub measure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub renyi_alpha: Option<f64>,
    pub validator_samples: usize,
    #[serde(skip)]
    pub gf: Option<GFMeasure>,
}

const PURE_KEYS: [&str; 3] = ["bell_coefficients", "bell_boost", "amplitudes"];
const MIXED_KEYS: [&str; 2] = ["spectrum", "spectra"];
const MEMS_KEYS: [&str; 2] = ["modes", "starts"];
const BASIN_KEYS: [&str; 2] = ["resolution", "random_points"];
const VALIDATE_KEYS: [&str; 3] = ["measure", "renyi_alpha", "validator_samples"];

fn parse_measure(name: &str, alpha: Option<f64>) -> CliResult<(MeasureKind, Option<f64>)> {
    if name != "renyi" && alpha.is_some() {
        return config_err(format!("renyi_alpha is only used by the renyi measure, not {name}"));
    }
    let kind = match name {
        "concurrence" => MeasureKind::GF(GFMeasure::Concurrence),
        "entropy" => MeasureKind::GF(GFMeasure::Entropy),
        "renyi" => {
            let a = alpha.unwrap_or(DEFAULT_RENYI_ALPHA);
            return Ok((MeasureKind::GF(GFMeasure::renyi(a)?), Some(a)));
        }
        "mixedConcurrence" => MeasureKind::MixedConcurrence,
        "generalizedConcurrence" => MeasureKind::GeneralizedConcurrence,
        "gmeConcurrence" => MeasureKind::GMEConcurrence,
        other => {
            return config_err(format!(
                "unknown measure {other:?}; expected concurrence, entropy, renyi, mixedConcurrence, \
                 generalizedConcurrence or gmeConcurrence"
            ))
        }
    };
    Ok((kind, None))
}

fn measure_label(kind: &MeasureKind) -> String {
    match kind {
        MeasureKind::GF(GFMeasure::Renyi { .. }) => "renyi".into(),
        other => other.name(),
    }
}

fn parse_shape(name: &str) -> CliResult<FeedbackShape> {
    match name {
        "linear" => Ok(FeedbackShape::linear()),
        "tanh" => Ok(FeedbackShape::new("tanh", f64::tanh)?),
        other => config_err(format!("unknown shape {other:?}; expected linear or tanh")),
    }
}

fn four(key: &str, v: &[f64]) -> CliResult<[f64; 4]> {
    match v {
        [a, b, c, d] => Ok([*a, *b, *c, *d]),
        _ => config_err(format!("{key} needs exactly 4 entries, got {}", v.len())),
    }
}

fn check_spectrum(key: &str, v: &[f64]) -> CliResult<[f64; 4]> {
    let s = four(key, v)?;
    normalize_spectrum(&s)?;
    if s.windows(2).any(|w| w[1] > w[0]) {
        return config_err(format!("{key} must be in decreasing order: {s:?}"));
    }
    Ok(s)
}

pub fn parse_mode(name: &str, seed: u64) -> CliResult<InitialMode> {
    match name {
        "kernel" => Ok(InitialMode::Kernel),
        "separable" => Ok(InitialMode::Separable(seed)),
        "random" => Ok(InitialMode::Random(seed)),
        other => config_err(format!("unknown MEMS initial mode {other:?}; expected kernel, separable or random")),
    }
}

const TRIPARTITE_INITIALS: [&str; 3] = ["perturbed", "random", "ghz"];

impl RunConfig {
    pub fn resolve(raw: &RawConfig, command: CommandKind, seed_override: Option<u64>) -> CliResult<Self> {
        let present = raw.present();
        let used_only_by = |keys: &[&str], allowed: bool, owner: &str| -> CliResult<()> {
            match present.iter().find(|k| keys.contains(k)) {
                Some(k) if !allowed => config_err(format!("{k} is only used by {owner}")),
                _ => Ok(()),
            }
        };
        if raw.validator_samples.is_some() {
            return config_err("validator_samples is only used by the validate command");
        }
        let scenario = match (&raw.scenario, command) {
            (Some(s), _) => Scenario::from_name(s).ok_or_else(|| {
                CliError::Config(format!(
                    "unknown scenario {s:?}; expected pureBipartite, mixedBipartite, tripartiteGC or tripartiteGME"
                ))
            })?,
            (None, CommandKind::Basin) => Scenario::PureBipartite,
            (None, CommandKind::Mems) => Scenario::MixedBipartite,
            (None, CommandKind::Multi) => Scenario::TripartiteGC,
            (None, _) => return config_err("missing field `scenario`"),
        };
        let required = match command {
            CommandKind::Basin => Some(Scenario::PureBipartite),
            CommandKind::Mems => Some(Scenario::MixedBipartite),
            _ => None,
        };
        let tripartite = matches!(scenario, Scenario::TripartiteGC | Scenario::TripartiteGME);
        if required.is_some_and(|r| r != scenario) || (command == CommandKind::Multi && !tripartite) {
            return config_err(format!("command {} cannot run scenario {}", command.name(), scenario.name()));
        }
        used_only_by(
            &PURE_KEYS,
            scenario == Scenario::PureBipartite && command == CommandKind::Run,
            "pureBipartite runs",
        )?;
        used_only_by(&MIXED_KEYS, scenario == Scenario::MixedBipartite, "the mixedBipartite scenario")?;
        used_only_by(&MEMS_KEYS, command == CommandKind::Mems, "the mems command")?;
        used_only_by(&BASIN_KEYS, command == CommandKind::Basin, "the basin command")?;
        used_only_by(&["initials"], command == CommandKind::Multi, "the multi command")?;
        used_only_by(&["initial"], command != CommandKind::Basin, "run, mems and multi")?;

        let (measure_kind, renyi_alpha) = match &raw.measure {
            Some(m) => parse_measure(m, raw.renyi_alpha)?,
            None if raw.renyi_alpha.is_some() => return config_err("renyi_alpha needs measure = \"renyi\""),
            None => (scenario.default_measure(), None),
        };
        if !scenario.accepts(&measure_kind) {
            return config_err(format!(
                "scenario {} is inconsistent with measure {}",
                scenario.name(),
                measure_label(&measure_kind)
            ));
        }
        let preset = match &raw.preset {
            Some(p) => Preset::from_name(p).ok_or_else(|| CliError::Config(format!("unknown preset {p:?}")))?,
            None => scenario.default_preset(),
        };
        if preset.nqubits() != scenario.nqubits() {
            return config_err(format!(
                "preset {} acts on {} qubits but scenario {} needs {}",
                preset.name(),
                preset.nqubits(),
                scenario.name(),
                scenario.nqubits()
            ));
        }
        let shape = raw.shape.clone().unwrap_or_else(|| "linear".into());
        parse_shape(&shape)?;
        let prop = scenario.default_propagation();
        let conv = ConvergenceCriteria::default();
        let seed = seed_override.or(raw.seed).unwrap_or(DEFAULT_SEED);

        let mut cfg = RunConfig {
            scenario: scenario.name().into(),
            measure: measure_label(&measure_kind),
            renyi_alpha,
            preset: preset.name().into(),
            coupling_j: raw.coupling_j.unwrap_or(DEFAULT_COUPLING_J),
            gain: raw.gain.unwrap_or(DEFAULT_GAIN),
            epsilon: raw.epsilon.unwrap_or(DEFAULT_EPSILON),
            shape,
            dt: raw.dt.unwrap_or(prop.dt),
            t_max: raw.t_max.unwrap_or(prop.t_max),
            record_every: raw.record_every.unwrap_or(prop.record_every),
            conv_tol: raw.conv_tol.unwrap_or(conv.tol),
            conv_window: raw.conv_window.unwrap_or(conv.window),
            tol_fid: raw.tol_fid.unwrap_or(DEFAULT_TOL_FID),
            seed,
            initial: None,
            bell_coefficients: None,
            bell_boost: None,
            amplitudes: None,
            spectra: None,
            modes: None,
            starts: None,
            resolution: None,
            random_points: None,
            initials: None,
            scenario_kind: Some(scenario),
            measure_kind: Some(measure_kind),
        };
        cfg.resolve_initial(raw, command)?;
        // Surface numeric range errors before any computation.
        cfg.template()?;
        if command == CommandKind::Run {
            cfg.initial_state()?;
        }
        Ok(cfg)
    }

    fn resolve_initial(&mut self, raw: &RawConfig, command: CommandKind) -> CliResult<()> {
        match (self.scenario(), command) {
            (_, CommandKind::Basin) => {
                let res = raw.resolution.unwrap_or(DEFAULT_BASIN_RESOLUTION);
                if res < 2 {
                    return config_err(format!("resolution must be at least 2, got {res}"));
                }
                self.resolution = Some(res);
                self.random_points = Some(raw.random_points.unwrap_or(DEFAULT_BASIN_RANDOM_POINTS));
            }
            (Scenario::PureBipartite, _) => {
                let initial = raw.initial.clone().unwrap_or_else(|| "bell".into());
                match initial.as_str() {
                    "bell" => {
                        if raw.amplitudes.is_some() {
                            return config_err("amplitudes needs initial = \"amplitudes\"");
                        }
                        let c = match &raw.bell_coefficients {
                            Some(v) => four("bell_coefficients", v)?,
                            None => [1.0, 1.0, 0.0, 0.0],
                        };
                        let boost = raw.bell_boost.unwrap_or(0);
                        if boost > 3 {
                            return config_err(format!("bell_boost must index one of 4 coefficients, got {boost}"));
                        }
                        self.bell_coefficients = Some(c);
                        self.bell_boost = Some(boost);
                    }
                    "amplitudes" => {
                        if raw.bell_coefficients.is_some() || raw.bell_boost.is_some() {
                            return config_err("bell_coefficients and bell_boost need initial = \"bell\"");
                        }
                        match &raw.amplitudes {
                            Some(v) => self.amplitudes = Some(four("amplitudes", v)?),
                            None => return config_err("initial = \"amplitudes\" needs the amplitudes key"),
                        }
                    }
                    "random" => {
                        if let Some(k) = PURE_KEYS.iter().find(|k| raw.present().contains(k)) {
                            return config_err(format!("{k} is not used with initial = \"random\""));
                        }
                    }
                    other => {
                        return config_err(format!("unknown initial {other:?}; expected bell, amplitudes or random"))
                    }
                }
                self.initial = Some(initial);
            }
            (Scenario::MixedBipartite, _) => {
                let spectra = match (&raw.spectrum, &raw.spectra) {
                    (Some(_), Some(_)) => return config_err("give either spectrum or spectra, not both"),
                    (Some(s), None) => vec![check_spectrum("spectrum", s)?],
                    (None, Some(list)) if list.is_empty() => return config_err("spectra must not be empty"),
                    (None, Some(list)) => {
                        list.iter().map(|s| check_spectrum("spectra", s)).collect::<CliResult<_>>()?
                    }
                    (None, None) => vec![REFERENCE_SPECTRUM],
                };
                if command == CommandKind::Run && spectra.len() > 1 {
                    return config_err("run takes a single spectrum; use the mems command for batches");
                }
                self.spectra = Some(spectra);
                if command == CommandKind::Mems {
                    let modes = match (&raw.initial, &raw.modes) {
                        (Some(_), Some(_)) => return config_err("give either initial or modes, not both"),
                        (Some(m), None) => vec![m.clone()],
                        (None, Some(m)) if m.is_empty() => return config_err("modes must not be empty"),
                        (None, Some(m)) => m.clone(),
                        (None, None) => vec!["kernel".into(), "separable".into(), "random".into()],
                    };
                    for m in &modes {
                        parse_mode(m, 0)?;
                    }
                    let starts = raw.starts.unwrap_or(DEFAULT_MEMS_STARTS);
                    if starts == 0 {
                        return config_err("starts must be at least 1");
                    }
                    self.modes = Some(modes);
                    self.starts = Some(starts);
                } else {
                    let initial = raw.initial.clone().unwrap_or_else(|| "random".into());
                    parse_mode(&initial, 0)?;
                    self.initial = Some(initial);
                }
            }
            (Scenario::TripartiteGC | Scenario::TripartiteGME, _) => {
                let check = |s: &String| -> CliResult<()> {
                    if TRIPARTITE_INITIALS.contains(&s.as_str()) {
                        Ok(())
                    } else {
                        config_err(format!("unknown initial {s:?}; expected perturbed, random or ghz"))
                    }
                };
                if command == CommandKind::Multi {
                    let initials = match (&raw.initial, &raw.initials) {
                        (Some(_), Some(_)) => return config_err("give either initial or initials, not both"),
                        (Some(i), None) => vec![i.clone()],
                        (None, Some(list)) if list.is_empty() => return config_err("initials must not be empty"),
                        (None, Some(list)) => list.clone(),
                        (None, None) => vec!["perturbed".into(), "random".into()],
                    };
                    initials.iter().try_for_each(check)?;
                    let mut seen = initials.clone();
                    seen.sort();
                    seen.dedup();
                    if seen.len() != initials.len() {
                        return config_err("initials must not repeat");
                    }
                    self.initials = Some(initials);
                } else {
                    let initial = raw.initial.clone().unwrap_or_else(|| "perturbed".into());
                    check(&initial)?;
                    self.initial = Some(initial);
                }
            }
        }
        Ok(())
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario_kind.expect("resolved config")
    }

    pub fn measure_kind(&self) -> MeasureKind {
        self.measure_kind.expect("resolved config")
    }

    /// Experiment template with a placeholder initial state.
    pub fn template(&self) -> CliResult<ExperimentSpec> {
        let scenario = self.scenario();
        let placeholder = match scenario.nqubits() {
            2 => Ket::basis(4, 0).density(),
            n => pauli::ghz(n).density(),
        };
        if !self.coupling_j.is_finite() {
            return config_err(format!("coupling_j must be finite, got {}", self.coupling_j));
        }
        let mut spec = ExperimentSpec::new(scenario, self.measure_kind(), placeholder)?;
        let preset = Preset::from_name(&self.preset).expect("validated preset");
        spec.hamiltonians = preset_hamiltonians(preset, self.coupling_j);
        spec.controller.gains = ControlGains::uniform(spec.hamiltonians.len(), self.gain, self.epsilon)?;
        spec.controller.shape = parse_shape(&self.shape)?;
        spec.propagation = PropagationConfig::new(self.dt, self.t_max, self.record_every)?;
        spec.convergence = ConvergenceCriteria { tol: self.conv_tol, window: self.conv_window };
        spec.tol_fid = self.tol_fid;
        spec.validate()?;
        Ok(spec)
    }

    pub fn tripartite_initial(&self, name: &str) -> TripartiteInitial {
        match name {
            "perturbed" => {
                TripartiteInitial::Perturbed { direction: perturbation_direction(self.seed), epsilon: self.epsilon }
            }
            "random" => TripartiteInitial::Random(self.seed),
            _ => TripartiteInitial::Ghz,
        }
    }

    /// Initial state of a single `run`.
    pub fn initial_state(&self) -> CliResult<DensityMatrix> {
        let initial = self.initial.as_deref().unwrap_or_default();
        let state = match self.scenario() {
            Scenario::PureBipartite => match initial {
                "bell" => {
                    let mut c = self.bell_coefficients.expect("resolved coefficients");
                    c[self.bell_boost.expect("resolved boost")] *= 1.0 + self.epsilon;
                    pauli::bell_combination(&c.map(|x| C64::new(x, 0.0)))?.density()
                }
                "amplitudes" => Ket::from_real(&self.amplitudes.expect("resolved amplitudes"))?.density(),
                _ => random_ket(4, &mut rng_for(self.seed, 0)).density(),
            },
            Scenario::MixedBipartite => {
                let spectrum = self.spectra.as_ref().expect("resolved spectra")[0];
                mems_initial_state(&spectrum, parse_mode(initial, self.seed)?, 0)?
            }
            Scenario::TripartiteGC | Scenario::TripartiteGME => self.tripartite_initial(initial).state()?.density(),
        };
        Ok(state)
    }
}

impl ValidateConfig {
    pub fn resolve(raw: &RawConfig) -> CliResult<Self> {
        if let Some(k) = raw.present().iter().find(|k| !VALIDATE_KEYS.contains(k)) {
            return config_err(format!("{k} is not used by the validate command"));
        }
        let name = raw.measure.clone().unwrap_or_else(|| "concurrence".into());
        let (kind, renyi_alpha) = parse_measure(&name, raw.renyi_alpha)?;
        let gf = match kind {
            MeasureKind::GF(m) => m,
            other => return config_err(format!("validate needs a bipartite pure-state measure, got {}", other.name())),
        };
        let validator_samples = raw.validator_samples.unwrap_or(DEFAULT_VALIDATOR_SAMPLES);
        if validator_samples < 100 {
            return config_err(format!("validator_samples must be at least 100, got {validator_samples}"));
        }
        Ok(Self { measure: name, renyi_alpha, validator_samples, gf: Some(gf) })
    }
}
