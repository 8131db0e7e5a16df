//! The `rotor` command-line front end.
//!
//! ```text
//! rotor simulate        --config PATH [--out CSV]
//! rotor verify-algebra  --config PATH [--out JSON]
//! rotor rank            --config PATH [--out JSON]
//! rotor resonance       [--config PATH] [--capital-omega W] [--omega W] [--max-den N] [--tol T] [--out JSON]
//! ```
//!
//! Exit codes: 0 success, 1 not found or expected-value mismatch, 2
//! configuration error, 3 runtime numerical error.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num::BigRational;
use serde::Serialize;

use crate::algebra::build_named;
use crate::dynamics::{drift_report, recurrence_error, simulate};
use crate::error::Error;
use crate::model::{OscillatorVariant, PhaseState, Real};
use crate::superint::{
    certify_rank, reference_state, resonance_detect, resonance_detect_exact, AlgebraSuite, REPORT_SCHEMA,
};

pub use config::{
    load_scenario, AnalysisBlock, ConfigError, InitialStateBlock, MethodName, Number, ParametersBlock, PotentialBlock,
    RunBlock, Scenario, ScenarioConfig, VariantName, DEFAULT_INTEGRALS, DEFAULT_MAX_DENOMINATOR,
    DEFAULT_RESONANCE_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rotor", version, about = "Rotor-extended planar oscillators: simulation and certification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a scenario and write its trajectory as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every bracket identity and Casimir exactly; write a JSON report.
    VerifyAlgebra {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of the Jacobian of the scenario's integral set.
    Rank {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best rational m/n for Ω/ω.
    Resonance {
        /// Takes Ω = pθ/I and ω from the scenario; flags override.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "capital-omega", allow_hyphen_values = true)]
        capital_omega: Option<f64>,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long = "max-den")]
        max_den: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

/// Errors from the library: bad names and non-rational inputs are the
/// scenario's fault; everything else happened while computing.
fn classify(e: Error) -> Failure {
    match e {
        Error::UnknownObservable(_)
        | Error::InvalidIndices { .. }
        | Error::ComplexValued(_)
        | Error::NotExact(_)
        | Error::InvalidParameter { .. }
        | Error::Parse(_) => Failure::Config(e.to_string()),
        _ => Failure::Runtime(e.to_string()),
    }
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: &'a T,
}

fn versioned_json<T: Serialize>(body: &T) -> String {
    let mut text = serde_json::to_string_pretty(&Versioned { schema: REPORT_SCHEMA, body }).expect("serializable");
    text.push('\n');
    text
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Runtime(format!("cannot write to standard output: {e}"))),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Simulate { config, out } => cmd_simulate(&config, out.as_deref(), stdout, stderr),
        Command::VerifyAlgebra { config, out } => cmd_verify_algebra(&config, out.as_deref(), stdout, stderr),
        Command::Rank { config, out } => cmd_rank(&config, out.as_deref(), stdout, stderr),
        Command::Resonance { config, out, capital_omega, omega, max_den, tol } => {
            let flags = ResonanceFlags { capital_omega, omega, max_den, tol };
            cmd_resonance(config.as_deref(), &flags, out.as_deref(), stdout)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Config(msg)) => {
            let _ = writeln!(stderr, "rotor: configuration error: {msg}");
            EXIT_CONFIG
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "rotor: {msg}");
            EXIT_RUNTIME
        }
    }
}

fn cmd_simulate(
    config: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let scenario = load_scenario(config)?;
    let s0 = scenario
        .initial_state
        .as_ref()
        .ok_or_else(|| Failure::Config("simulate needs an [initial_state] block".into()))?
        .to_f64();
    let mut options = scenario.run.clone();
    if options.tracked.is_empty() {
        options.tracked.push("H".into());
    }
    let traj = simulate(&scenario.potential, &scenario.params, &s0, &options).map_err(classify)?;
    let drift = drift_report(&traj).map_err(classify)?;
    let t_final = traj.meta.t_final;
    let recurrence = recurrence_error(&traj, t_final).map_err(classify)?;
    let theta_advance = traj.theta_advance(t_final).map_err(classify)?;

    emit(out, &traj.to_csv_string(), stdout)?;
    let summary: &mut dyn Write = if out.is_some() { stdout } else { stderr };
    let _ = writeln!(
        summary,
        "potential {}, method {}, dt {:e}, t_final {}, {} samples",
        scenario.potential.name(),
        traj.meta.method.name(),
        traj.meta.dt,
        t_final,
        traj.len()
    );
    let _ = writeln!(summary, "recurrence |(x,y,px,py)(t_final) - (x,y,px,py)(0)| = {recurrence:.3e}");
    let _ = writeln!(summary, "theta advance = {theta_advance:.15}");
    let _ = write!(summary, "{drift}");
    Ok(EXIT_OK)
}

fn oscillator_variant(scenario: &Scenario, command: &str) -> Result<OscillatorVariant, Failure> {
    OscillatorVariant::of(&scenario.potential).ok_or_else(|| {
        Failure::Config(format!("{command} needs the isotropic or gravity variant, not {}", scenario.potential.name()))
    })
}

fn cmd_verify_algebra(
    config: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let scenario = load_scenario(config)?;
    let variant = oscillator_variant(&scenario, "verify-algebra")?;
    let params = scenario
        .params
        .exact()
        .map_err(|e| Failure::Config(format!("verify-algebra needs rational parameters: {e}")))?;
    let report = AlgebraSuite::new(params, variant).run();
    let mut json = report.to_json();
    json.push('\n');
    emit(out, &json, stdout)?;

    let failed: Vec<&str> = report
        .claims
        .iter()
        .filter(|c| c.status == crate::superint::Status::Fail)
        .map(|c| c.claim_id.as_str())
        .collect();
    let summary: &mut dyn Write = if out.is_some() { stdout } else { stderr };
    let _ = writeln!(summary, "{}/{} claims pass", report.claims.len() - failed.len(), report.claims.len());
    for id in &failed {
        let _ = writeln!(summary, "FAIL {id}");
    }
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_rank(config: &Path, out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let scenario = load_scenario(config)?;
    let variant = oscillator_variant(&scenario, "rank")?;
    let params =
        scenario.params.exact().map_err(|e| Failure::Config(format!("rank needs rational parameters: {e}")))?;
    let named = scenario
        .integrals
        .iter()
        .map(|name| Ok((name.clone(), build_named(name, &params, variant)?)))
        .collect::<Result<Vec<_>, Error>>()
        .map_err(classify)?;
    let state: PhaseState<BigRational> = scenario.initial_state.clone().unwrap_or_else(|| reference_state(&params));
    let report = certify_rank(&named, &state, scenario.rank_mode, scenario.rank_tolerance).map_err(classify)?;
    emit(out, &versioned_json(&report), stdout)?;

    match scenario.expected_rank {
        Some(expected) if expected != report.rank => {
            let _ = writeln!(stderr, "rotor: rank {} differs from expected {expected}", report.rank);
            Ok(EXIT_MISMATCH)
        }
        _ => Ok(EXIT_OK),
    }
}

struct ResonanceFlags {
    capital_omega: Option<f64>,
    omega: Option<f64>,
    max_den: Option<u64>,
    tol: Option<f64>,
}

fn cmd_resonance(
    config: Option<&Path>,
    flags: &ResonanceFlags,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let scenario = config.map(load_scenario).transpose()?;
    let max_den = flags.max_den.or(scenario.as_ref().map(|s| s.max_denominator)).unwrap_or(DEFAULT_MAX_DENOMINATOR);
    let tol = flags.tol.unwrap_or(DEFAULT_RESONANCE_TOLERANCE);
    if max_den == 0 {
        return Err(Failure::Config("--max-den must be at least 1".into()));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Failure::Config(format!("--tol must be nonnegative, got {tol}")));
    }

    // From the scenario, Ω = pθ/I and ω stay exact whenever the inputs are.
    let from_scenario = |s: &Scenario| -> Result<(Real, Real), Failure> {
        let ptheta = s
            .initial_state
            .as_ref()
            .map(|st| st.ptheta.clone())
            .ok_or_else(|| Failure::Config("resonance needs --capital-omega or an [initial_state] block".into()))?;
        let capital = match &s.params.inertia {
            Real::Exact(i) => Real::Exact(ptheta / i),
            Real::Float(i) => Real::Float(num::ToPrimitive::to_f64(&ptheta).unwrap_or(f64::NAN) / i),
        };
        Ok((capital, s.params.omega.clone()))
    };
    let (capital, omega) = match (&scenario, flags.capital_omega, flags.omega) {
        (_, Some(c), Some(w)) => (Real::Float(c), Real::Float(w)),
        (Some(s), c, w) => {
            let (sc, sw) = from_scenario(s)?;
            (c.map_or(sc, Real::Float), w.map_or(sw, Real::Float))
        }
        (None, _, _) => return Err(Failure::Config("resonance needs --capital-omega and --omega, or --config".into())),
    };

    let result = match (&capital, &omega) {
        (Real::Exact(c), Real::Exact(w)) => {
            let tol_exact = BigRational::from_float(tol).expect("finite");
            resonance_detect_exact(c, w, max_den, &tol_exact)
        }
        _ => resonance_detect(capital.to_f64(), omega.to_f64(), max_den, tol),
    }
    .map_err(|e| Failure::Config(e.to_string()))?;
    emit(out, &versioned_json(&result), stdout)?;
    Ok(if result.found { EXIT_OK } else { EXIT_MISMATCH })
}
