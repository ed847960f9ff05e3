//! Pure bipartite measures of the form E = G(Tr f(ρ_M)).

use crate::error::{bail, Result};
use crate::qmat::{eigh, reduce_qubits, ComplexMatrix, DensityMatrix};

/// Eigenvalues below this are clamped before evaluating f′ and f″ so that
/// 0·∞ terms vanish at separable states.
pub(crate) const LAMBDA_FLOOR: f64 = 1e-300;

/// User-supplied (G, f) pair with derivatives.
#[derive(Debug, Clone, Copy)]
pub struct CustomGF {
    pub name: &'static str,
    pub g: fn(f64) -> f64,
    pub dg: fn(f64) -> f64,
    pub f: fn(f64) -> f64,
    pub df: fn(f64) -> f64,
    pub d2f: fn(f64) -> f64,
}

/// One member of the (G, f) measure family.
#[derive(Debug, Clone, Copy)]
pub enum GFMeasure {
    /// G(X) = √(2(1−X)), f(λ) = λ².
    Concurrence,
    /// G(X) = ln X / (1−α), f(λ) = λ^α.
    Renyi {
        alpha: f64,
    },
    /// G(X) = X / ln 2, f(λ) = −λ ln λ.
    Entropy,
    Custom(CustomGF),
}

impl GFMeasure {
    pub fn renyi(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            bail!(Parameter, "Renyi alpha must be positive, got {}", alpha);
        }
        if (alpha - 1.0).abs() < 1e-12 {
            bail!(Parameter, "Renyi alpha = 1 is the entropy of entanglement; use the entropy measure");
        }
        Ok(Self::Renyi { alpha })
    }

    pub fn name(&self) -> String {
        match self {
            Self::Concurrence => "concurrence".into(),
            Self::Renyi { alpha } => format!("renyi({})", alpha),
            Self::Entropy => "entropy".into(),
            Self::Custom(c) => c.name.into(),
        }
    }

    pub fn g(&self, x: f64) -> f64 {
        match self {
            Self::Concurrence => (2.0 * (1.0 - x)).max(0.0).sqrt(),
            Self::Renyi { alpha } => x.ln() / (1.0 - alpha),
            Self::Entropy => x / std::f64::consts::LN_2,
            Self::Custom(c) => (c.g)(x),
        }
    }

    pub fn g_prime(&self, x: f64) -> f64 {
        match self {
            Self::Concurrence => -1.0 / (2.0 * (1.0 - x)).max(LAMBDA_FLOOR).sqrt(),
            Self::Renyi { alpha } => 1.0 / ((1.0 - alpha) * x),
            Self::Entropy => 1.0 / std::f64::consts::LN_2,
            Self::Custom(c) => (c.dg)(x),
        }
    }

    pub fn f(&self, l: f64) -> f64 {
        match self {
            Self::Concurrence => l * l,
            Self::Renyi { alpha } => {
                if l <= 0.0 {
                    0.0
                } else {
                    l.powf(*alpha)
                }
            }
            Self::Entropy => {
                if l <= 0.0 {
                    0.0
                } else {
                    -l * l.ln()
                }
            }
            Self::Custom(c) => (c.f)(l),
        }
    }

    pub fn f_prime(&self, l: f64) -> f64 {
        let lc = l.max(LAMBDA_FLOOR);
        match self {
            Self::Concurrence => 2.0 * l,
            Self::Renyi { alpha } => alpha * lc.powf(alpha - 1.0),
            Self::Entropy => -lc.ln() - 1.0,
            Self::Custom(c) => (c.df)(l),
        }
    }

    pub fn f_second(&self, l: f64) -> f64 {
        let lc = l.max(LAMBDA_FLOOR);
        match self {
            Self::Concurrence => 2.0,
            Self::Renyi { alpha } => alpha * (alpha - 1.0) * lc.powf(alpha - 2.0),
            Self::Entropy => -1.0 / lc,
            Self::Custom(c) => (c.d2f)(l),
        }
    }

    /// E_G as a function of the larger reduced eigenvalue λ.
    pub fn of_lambda(&self, l: f64) -> f64 {
        self.g(self.f(l) + self.f(1.0 - l))
    }

    /// 𝒩 = G(2 f(1/2)).
    pub fn maximum(&self) -> f64 {
        self.g(2.0 * self.f(0.5))
    }

    /// Sign of G′, read at an interior point of the X range.
    pub fn sign_g_prime(&self) -> f64 {
        let x = self.f(0.25) + self.f(0.75);
        if self.g_prime(x) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    /// X = Tr f(ρ_M) from the reduced eigenvalues.
    pub(crate) fn x_of_spectrum(&self, eig: &[f64]) -> f64 {
        eig.iter().map(|&l| self.f(l.clamp(0.0, 1.0))).sum()
    }
}

/// Reduced matrix of qubit 0 for a two-qubit operator.
pub(crate) fn reduced_m(m: &ComplexMatrix) -> ComplexMatrix {
    reduce_qubits(m, 2, &[0]).expect("two-qubit operator")
}

fn check_pure_pair(rho: &DensityMatrix, what: &str) -> Result<()> {
    rho.require_qubits(2, what)?;
    rho.require_pure(what)
}

pub(crate) fn eg_matrix(m: &ComplexMatrix, measure: &GFMeasure) -> f64 {
    let eig = eigh(&reduced_m(m)).values;
    let e = measure.g(measure.x_of_spectrum(&eig));
    e.clamp(0.0, measure.maximum().max(0.0))
}

/// G(Tr f(ρ_M)) for a pure two-qubit state.
pub fn eg_pure(rho: &DensityMatrix, measure: &GFMeasure) -> Result<f64> {
    check_pure_pair(rho, "eg_pure")?;
    Ok(eg_matrix(rho.matrix(), measure))
}

/// √(2(1 − Tr ρ_M²)).
pub fn concurrence_pure(rho: &DensityMatrix) -> Result<f64> {
    check_pure_pair(rho, "concurrence_pure")?;
    let rm = reduced_m(rho.matrix());
    Ok((2.0 * (1.0 - rm.trace_product(&rm).re)).max(0.0).sqrt())
}

/// (1/(1−α)) ln Tr ρ_M^α.
pub fn renyi(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    let m = GFMeasure::renyi(alpha)?;
    eg_pure(rho, &m)
}

/// −Tr(ρ_M log₂ ρ_M), with 0·ln 0 = 0.
pub fn entropy_of_entanglement(rho: &DensityMatrix) -> Result<f64> {
    eg_pure(rho, &GFMeasure::Entropy)
}

/// Outcome of one axiom check.
#[derive(Debug, Clone)]
pub struct ConditionResult {
    pub name: &'static str,
    pub passed: bool,
    /// The quantity the check was decided on.
    pub value: f64,
}

/// Result of [`validate_gf_measure`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub measure: String,
    pub samples: usize,
    pub conditions: Vec<ConditionResult>,
    /// E_G″(1/2) by central difference.
    pub concavity_at_half: f64,
    /// G′(2 f(1/2)) · f″(1/2).
    pub analytic_curvature_sign: f64,
    pub maximum: f64,
    pub sign_g_prime: f64,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

const DIFF_STEP: f64 = 1e-5;

/// Checks the five measure axioms on a uniform λ grid of `samples` points:
/// vanishing at the endpoints, positivity inside, stationarity at 1/2,
/// non-vanishing slope elsewhere, and negative curvature at 1/2.
pub fn validate_gf_measure(measure: &GFMeasure, samples: usize) -> Result<ValidationReport> {
    if samples < 100 {
        bail!(Parameter, "validator needs at least 100 samples, got {}", samples);
    }
    let e = |l: f64| measure.of_lambda(l);
    let h = DIFF_STEP;
    let d1 = |l: f64| (e(l + h) - e(l - h)) / (2.0 * h);
    let grid: Vec<f64> = (1..samples - 1).map(|i| i as f64 / (samples - 1) as f64).collect();

    let endpoint = e(0.0).abs().max(e(1.0).abs());
    let min_inside = grid.iter().map(|&l| e(l)).fold(f64::INFINITY, f64::min);
    let slope_half = d1(0.5);
    let min_slope =
        grid.iter().filter(|&&l| (l - 0.5).abs() > 1e-12).map(|&l| d1(l).abs()).fold(f64::INFINITY, f64::min);
    let curvature = (e(0.5 + h) - 2.0 * e(0.5) + e(0.5 - h)) / (h * h);

    let conditions = vec![
        ConditionResult { name: "vanishes_at_separable", passed: endpoint <= 1e-9, value: endpoint },
        ConditionResult { name: "positive_when_entangled", passed: min_inside > 0.0, value: min_inside },
        ConditionResult { name: "stationary_at_half", passed: slope_half.abs() < 1e-8, value: slope_half },
        ConditionResult { name: "monotone_off_half", passed: min_slope > 1e-12, value: min_slope },
        ConditionResult { name: "concave_at_half", passed: curvature < 0.0, value: curvature },
    ];
    Ok(ValidationReport {
        measure: measure.name(),
        samples,
        conditions,
        concavity_at_half: curvature,
        analytic_curvature_sign: measure.g_prime(2.0 * measure.f(0.5)) * measure.f_second(0.5),
        maximum: measure.maximum(),
        sign_g_prime: measure.sign_g_prime(),
    })
}
