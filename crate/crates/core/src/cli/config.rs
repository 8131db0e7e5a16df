//! Scenario files: one TOML document per scenario.
//!
//! ```toml
//! [parameters]
//! mass = 1
//! k = 1              # or: omega = "1/2"
//! rod_length = 1     # or: inertia = "1/12"
//!
//! [potential]
//! variant = "isotropic"
//!
//! [initial_state]
//! x = 1
//! y = 0
//! theta = 0
//! px = 0
//! py = 1
//! ptheta = "1/12"
//!
//! [run]
//! method = "analytic"
//! t_final = "2pi"
//! tracked = ["H", "L"]
//! ```
//!
//! Scalars are integers, `"p/q"` strings, or decimals; decimals are read as
//! the exact rational of their shortest round-trip representation, so
//! `0.1` means 1/10.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use num::{BigRational, ToPrimitive};
use serde::Deserialize;

use crate::dynamics::{Method, SimulationOptions, DEFAULT_DT};
use crate::model::{parse_rational, OscillatorVariant, Parameters, PhaseState, PotentialSpec, Real};
use crate::superint::{RankMode, DEFAULT_RANK_TOLERANCE};

/// A configuration problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad(key: &str, detail: impl fmt::Display) -> ConfigError {
    ConfigError(format!("invalid value for `{key}`: {detail}"))
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self, key: &str) -> Result<BigRational, ConfigError> {
        match self {
            Number::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Number::Float(v) if v.is_finite() => parse_rational(&v.to_string()).map_err(|e| bad(key, e)),
            Number::Float(v) => Err(bad(key, format!("{v} is not finite"))),
            Number::Text(s) => parse_rational(s).map_err(|e| bad(key, e)),
        }
    }

    fn to_real(&self, key: &str) -> Result<Real, ConfigError> {
        self.to_rational(key).map(Real::Exact)
    }

    /// Like [`Number::to_rational`] but also accepts multiples of π written
    /// as `"2pi"`, `"2*pi"`, `"pi/2"` or `"pi"`.
    pub fn to_time(&self, key: &str) -> Result<f64, ConfigError> {
        if let Number::Text(s) = self {
            let s = s.trim();
            if let Some(at) = s.find("pi") {
                let (head, tail) = (s[..at].trim().trim_end_matches('*').trim(), s[at + 2..].trim());
                let factor = if head.is_empty() {
                    BigRational::from_integer(1.into())
                } else {
                    parse_rational(head).map_err(|e| bad(key, e))?
                };
                let divisor = match tail.strip_prefix('/') {
                    Some(d) => parse_rational(d).map_err(|e| bad(key, e))?,
                    None if tail.is_empty() => BigRational::from_integer(1.into()),
                    None => return Err(bad(key, format!("`{s}` is not a multiple of pi"))),
                };
                if num::Zero::is_zero(&divisor) {
                    return Err(bad(key, "division by zero"));
                }
                return Ok((factor / divisor).to_f64().unwrap_or(f64::NAN) * PI);
            }
        }
        match self {
            Number::Float(v) => Ok(*v),
            _ => Ok(self.to_rational(key)?.to_f64().unwrap_or(f64::NAN)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametersBlock {
    pub mass: Number,
    pub omega: Option<Number>,
    pub k: Option<Number>,
    pub inertia: Option<Number>,
    pub rod_length: Option<Number>,
    pub gravity: Option<Number>,
    pub omega_x: Option<Number>,
    pub omega_y: Option<Number>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    #[default]
    Isotropic,
    Gravity,
    Anisotropic,
    Sw1,
    Sw2,
    Sw3,
    Sw4,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialBlock {
    #[serde(default)]
    pub variant: VariantName,
    pub alpha: Option<Number>,
    pub beta: Option<Number>,
    pub gamma: Option<Number>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialStateBlock {
    pub x: Number,
    pub y: Number,
    pub theta: Number,
    pub px: Number,
    pub py: Number,
    pub ptheta: Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Analytic,
    Verlet,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunBlock {
    pub dt: Option<Number>,
    pub t_final: Option<Number>,
    pub sample_stride: Option<usize>,
    pub method: Option<MethodName>,
    #[serde(default)]
    pub tracked: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisBlock {
    pub integrals: Option<Vec<String>>,
    pub expected_rank: Option<usize>,
    pub mode: Option<RankMode>,
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub candidates: Vec<[i64; 2]>,
    pub max_denominator: Option<u64>,
}

/// The raw file contents.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub parameters: ParametersBlock,
    #[serde(default)]
    pub potential: PotentialBlock,
    pub initial_state: Option<InitialStateBlock>,
    #[serde(default)]
    pub run: RunBlock,
    #[serde(default)]
    pub analysis: AnalysisBlock,
}

/// Default integral set for `rank`.
pub const DEFAULT_INTEGRALS: [&str; 5] = ["F1", "F2", "G1", "G2", "P_1_1"];
pub const DEFAULT_MAX_DENOMINATOR: u64 = 100;
pub const DEFAULT_RESONANCE_TOLERANCE: f64 = 1e-9;

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: Parameters,
    pub potential: PotentialSpec,
    pub initial_state: Option<PhaseState<BigRational>>,
    pub run: SimulationOptions,
    pub integrals: Vec<String>,
    pub expected_rank: Option<usize>,
    pub rank_mode: RankMode,
    pub rank_tolerance: f64,
    pub candidates: Vec<(i64, i64)>,
    pub max_denominator: u64,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string().trim_end().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }

    pub fn resolve(&self) -> Result<Scenario, ConfigError> {
        let params = self.resolve_parameters()?;
        let potential = self.resolve_potential(&params)?;
        let initial_state = self
            .initial_state
            .as_ref()
            .map(|s| -> Result<_, ConfigError> {
                Ok(PhaseState::new(
                    s.x.to_rational("initial_state.x")?,
                    s.y.to_rational("initial_state.y")?,
                    s.theta.to_rational("initial_state.theta")?,
                    s.px.to_rational("initial_state.px")?,
                    s.py.to_rational("initial_state.py")?,
                    s.ptheta.to_rational("initial_state.ptheta")?,
                ))
            })
            .transpose()?;

        let run = &self.run;
        let dt = run.dt.as_ref().map_or(Ok(DEFAULT_DT), |v| v.to_time("run.dt"))?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(bad("run.dt", "must be positive"));
        }
        let period = std::f64::consts::TAU / params.omega.to_f64();
        let t_final = run.t_final.as_ref().map_or(Ok(period), |v| v.to_time("run.t_final"))?;
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(bad("run.t_final", "must be positive"));
        }
        if run.sample_stride == Some(0) {
            return Err(bad("run.sample_stride", "must be positive"));
        }
        let method = match run.method {
            Some(MethodName::Analytic) => Method::Analytic,
            Some(MethodName::Verlet) => Method::Verlet,
            None if OscillatorVariant::of(&potential).is_some() => Method::Analytic,
            None => Method::Verlet,
        };
        let mut options = SimulationOptions::new(method, dt, t_final).track(run.tracked.iter().cloned());
        options.sample_stride = run.sample_stride;

        let a = &self.analysis;
        let rank_tolerance = a.tolerance.unwrap_or(DEFAULT_RANK_TOLERANCE);
        if !(rank_tolerance > 0.0 && rank_tolerance < 1.0) {
            return Err(bad("analysis.tolerance", "must lie in (0, 1)"));
        }
        if a.max_denominator == Some(0) {
            return Err(bad("analysis.max_denominator", "must be at least 1"));
        }
        Ok(Scenario {
            params,
            potential,
            initial_state,
            run: options,
            integrals: a.integrals.clone().unwrap_or_else(|| DEFAULT_INTEGRALS.iter().map(|s| s.to_string()).collect()),
            expected_rank: a.expected_rank,
            rank_mode: a.mode.unwrap_or(RankMode::Exact),
            rank_tolerance,
            candidates: a.candidates.iter().map(|&[m, n]| (m, n)).collect(),
            max_denominator: a.max_denominator.unwrap_or(DEFAULT_MAX_DENOMINATOR),
        })
    }

    fn resolve_parameters(&self) -> Result<Parameters, ConfigError> {
        let p = &self.parameters;
        let invalid = |e: crate::Error| match &e {
            crate::Error::InvalidParameter { name, .. } => bad(&format!("parameters.{name}"), e),
            _ => ConfigError(e.to_string()),
        };
        let mass = p.mass.to_real("parameters.mass")?;
        let omega = match (&p.omega, &p.k) {
            (Some(w), None) => w.to_real("parameters.omega")?,
            (None, Some(k)) => Parameters::omega_from_spring(&k.to_real("parameters.k")?, &mass).map_err(invalid)?,
            _ => return Err(ConfigError("parameters: exactly one of `omega` or `k` is required".into())),
        };
        let mut params = match (&p.inertia, &p.rod_length) {
            (Some(i), None) => Parameters::new(mass, omega, i.to_real("parameters.inertia")?),
            (None, Some(l)) => Parameters::from_rod(mass, omega, l.to_real("parameters.rod_length")?),
            _ => return Err(ConfigError("parameters: exactly one of `inertia` or `rod_length` is required".into())),
        }
        .map_err(invalid)?;
        if let Some(g) = &p.gravity {
            params = params.with_gravity(g.to_real("parameters.gravity")?).map_err(invalid)?;
        }
        match (&p.omega_x, &p.omega_y) {
            (Some(wx), Some(wy)) => {
                params = params
                    .with_anisotropy(wx.to_real("parameters.omega_x")?, wy.to_real("parameters.omega_y")?)
                    .map_err(invalid)?;
            }
            (None, None) => {}
            _ => return Err(ConfigError("parameters: `omega_x` and `omega_y` must be given together".into())),
        }
        Ok(params)
    }

    fn resolve_potential(&self, params: &Parameters) -> Result<PotentialSpec, ConfigError> {
        let pot = &self.potential;
        let p = &self.parameters;
        let coefficient = |value: &Option<Number>, key: &str| -> Result<Real, ConfigError> {
            value
                .as_ref()
                .ok_or_else(|| ConfigError(format!("potential: `{key}` is required for this variant")))?
                .to_real(&format!("potential.{key}"))
        };
        let no_coefficients = || -> Result<(), ConfigError> {
            for (key, v) in [("alpha", &pot.alpha), ("beta", &pot.beta), ("gamma", &pot.gamma)] {
                if v.is_some() {
                    return Err(ConfigError(format!("potential: `{key}` is only used by the sw1..sw4 variants")));
                }
            }
            Ok(())
        };
        let sw = || -> Result<(Real, Real, Real), ConfigError> {
            Ok((coefficient(&pot.alpha, "alpha")?, coefficient(&pot.beta, "beta")?, coefficient(&pot.gamma, "gamma")?))
        };
        Ok(match pot.variant {
            VariantName::Isotropic => {
                no_coefficients()?;
                PotentialSpec::isotropic(params)
            }
            VariantName::Gravity => {
                no_coefficients()?;
                if p.gravity.is_none() {
                    return Err(ConfigError("potential: the gravity variant needs `parameters.gravity`".into()));
                }
                PotentialSpec::gravity(params)
            }
            VariantName::Anisotropic => {
                no_coefficients()?;
                if p.omega_x.is_none() {
                    return Err(ConfigError(
                        "potential: the anisotropic variant needs `parameters.omega_x` and `parameters.omega_y`".into(),
                    ));
                }
                PotentialSpec::anisotropic(params)
            }
            VariantName::Sw1 => {
                let (alpha, beta, gamma) = sw()?;
                PotentialSpec::SwI { alpha, beta, gamma }
            }
            VariantName::Sw2 => {
                let (alpha, beta, gamma) = sw()?;
                PotentialSpec::SwII { alpha, beta, gamma }
            }
            VariantName::Sw3 => {
                let (alpha, beta, gamma) = sw()?;
                PotentialSpec::SwIII { alpha, beta, gamma }
            }
            VariantName::Sw4 => {
                let (alpha, beta, gamma) = sw()?;
                PotentialSpec::SwIV { alpha, beta, gamma }
            }
        })
    }
}

/// Reads and validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario, ConfigError> {
    ScenarioConfig::load(path)?.resolve()
}
