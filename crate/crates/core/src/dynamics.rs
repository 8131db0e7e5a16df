//! Time evolution: closed-form oscillator flows, velocity Verlet, and the
//! diagnostics computed along trajectories.

use std::fmt;
use std::io::{self, Write};

use num::Complex;

use crate::algebra::{CompiledObservable, ObservableBuilder};
use crate::error::{Error, Result};
use crate::model::{hamiltonian_value, ExactParameters, OscillatorVariant, Parameters, PhaseState, PotentialSpec};

/// Default time step, in units of 1/ω.
pub const DEFAULT_DT: f64 = 1e-3;

/// Upper bound on stored samples when the stride is chosen automatically.
pub const MAX_AUTO_SAMPLES: usize = 10_000;

/// Exact flow of the isotropic (or gravity-shifted) oscillator with a freely
/// spinning rotor.
///
/// ```text
/// x(t) = x₀ cos ωt + px₀/(Mω) sin ωt      px(t) = px₀ cos ωt − Mω x₀ sin ωt
/// θ(t) = θ₀ + (pθ/I) t                     pθ(t) = pθ
/// ```
///
/// The gravity variant flows y' = y + g/ω² isotropically and shifts back.
pub fn analytic_flow(params: &Parameters, variant: OscillatorVariant, s0: &PhaseState, t: f64) -> PhaseState {
    match variant {
        OscillatorVariant::Isotropic => isotropic_flow(params, s0, t),
        OscillatorVariant::Gravity => {
            let shift = gravity_shift(params);
            let mut centred = *s0;
            centred.y += shift;
            let mut out = isotropic_flow(params, &centred, t);
            out.y -= shift;
            out
        }
    }
}

/// g/ω², the depth of the shifted equilibrium below the origin.
pub fn gravity_shift(params: &Parameters) -> f64 {
    params.gravity.to_f64() / params.omega.to_f64().powi(2)
}

fn isotropic_flow(params: &Parameters, s0: &PhaseState, t: f64) -> PhaseState {
    let m = params.mass.to_f64();
    let w = params.omega.to_f64();
    let (s, c) = (w * t).sin_cos();
    let m_w = m * w;
    PhaseState {
        x: s0.x * c + s0.px / m_w * s,
        y: s0.y * c + s0.py / m_w * s,
        theta: s0.theta + s0.ptheta / params.inertia.to_f64() * t,
        px: s0.px * c - m_w * s0.x * s,
        py: s0.py * c - m_w * s0.y * s,
        ptheta: s0.ptheta,
    }
}

/// One velocity-Verlet step: half kick, drift, half kick. pθ is untouched.
pub fn verlet_step(pot: &PotentialSpec, params: &Parameters, s: &PhaseState, dt: f64) -> Result<PhaseState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("time step must be positive, got {dt}")));
    }
    let force = pot.gradient(params, s.x, s.y)?;
    Ok(Verlet::new(pot, params, dt).step(s, force)?.0)
}

struct Verlet<'a> {
    pot: &'a PotentialSpec,
    params: &'a Parameters,
    dt: f64,
    inv_mass: f64,
    inv_inertia: f64,
}

impl<'a> Verlet<'a> {
    fn new(pot: &'a PotentialSpec, params: &'a Parameters, dt: f64) -> Self {
        Self { pot, params, dt, inv_mass: 1.0 / params.mass.to_f64(), inv_inertia: 1.0 / params.inertia.to_f64() }
    }

    /// Advances `s` given ∇V at `s`; returns the new state and ∇V there.
    fn step(&self, s: &PhaseState, grad: (f64, f64)) -> Result<(PhaseState, (f64, f64))> {
        let half = 0.5 * self.dt;
        let px = s.px - half * grad.0;
        let py = s.py - half * grad.1;
        let x = s.x + self.dt * px * self.inv_mass;
        let y = s.y + self.dt * py * self.inv_mass;
        let theta = s.theta + self.dt * s.ptheta * self.inv_inertia;
        let next = self.pot.gradient(self.params, x, y)?;
        let out = PhaseState { x, y, theta, px: px - half * next.0, py: py - half * next.1, ptheta: s.ptheta };
        Ok((out, next))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Verlet,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Verlet => "verlet",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOptions {
    pub dt: f64,
    pub t_final: f64,
    /// Keep every `sample_stride`-th step; `None` picks a stride giving at
    /// most [`MAX_AUTO_SAMPLES`] samples.
    pub sample_stride: Option<usize>,
    pub method: Method,
    pub tracked: Vec<String>,
}

impl SimulationOptions {
    pub fn new(method: Method, dt: f64, t_final: f64) -> Self {
        Self { dt, t_final, sample_stride: None, method, tracked: Vec::new() }
    }

    pub fn stride(mut self, stride: usize) -> Self {
        self.sample_stride = Some(stride);
        self
    }

    pub fn track<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.tracked.extend(names.into_iter().map(Into::into));
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub potential: PotentialSpec,
    pub params: Parameters,
    pub method: Method,
    /// Step actually used: `t_final` divided by a whole number of steps.
    pub dt: f64,
    pub t_final: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrackedSeries {
    pub name: String,
    pub values: Vec<Complex<f64>>,
}

/// Time-sampled states plus the tracked observables at each sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    pub tracked: Vec<TrackedSeries>,
    pub meta: TrajectoryMeta,
}

/// Names whose values are computed directly from the state and the potential.
enum Tracker {
    Energy,
    RotorEnergy,
    Symbolic(CompiledObservable),
}

/// Observables that do not depend on the potential or its parameters.
const POTENTIAL_FREE: [&str; 11] = ["L", "u", "w", "ubar", "wbar", "x", "y", "px", "py", "ptheta", "p_theta"];

fn resolve_tracker(name: &str, pot: &PotentialSpec, params: &Parameters) -> Result<Tracker> {
    match name {
        "H" | "F1" => return Ok(Tracker::Energy),
        "F2" => return Ok(Tracker::RotorEnergy),
        _ => {}
    }
    let builder = if POTENTIAL_FREE.contains(&name) {
        ObservableBuilder::new(ExactParameters::unit_rod(), OscillatorVariant::Isotropic)
    } else {
        let variant = OscillatorVariant::of(pot).ok_or_else(|| {
            Error::Unsupported(format!("tracking `{name}` requires an isotropic or gravity oscillator"))
        })?;
        ObservableBuilder::new(params.exact()?, variant)
    };
    Ok(Tracker::Symbolic(builder.named(name)?.compile()))
}

impl Tracker {
    fn evaluate(&self, pot: &PotentialSpec, params: &Parameters, s: &PhaseState) -> Result<Complex<f64>> {
        Ok(match self {
            Tracker::Energy => Complex::new(hamiltonian_value(params, pot, s)?, 0.0),
            Tracker::RotorEnergy => Complex::new(s.ptheta * s.ptheta / (2.0 * params.inertia.to_f64()), 0.0),
            Tracker::Symbolic(obs) => obs.evaluate(s),
        })
    }
}

/// Integrates from `s0` to `options.t_final` and samples the trajectory.
///
/// The step is shrunk so that a whole number of steps lands exactly on
/// `t_final`; the first and last states are always sampled.
pub fn simulate(
    pot: &PotentialSpec,
    params: &Parameters,
    s0: &PhaseState,
    options: &SimulationOptions,
) -> Result<Trajectory> {
    let SimulationOptions { dt, t_final, sample_stride, method, ref tracked } = *options;
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(Error::Domain(format!("t_final must be positive, got {t_final}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    if sample_stride == Some(0) {
        return Err(Error::Domain("sample_stride must be positive".into()));
    }
    s0.check_finite()?;
    let analytic_variant = match method {
        Method::Analytic => Some(
            OscillatorVariant::of(pot)
                .ok_or_else(|| Error::Unsupported(format!("no closed-form flow for the {} potential", pot.name())))?,
        ),
        Method::Verlet => None,
    };

    let trackers = tracked.iter().map(|name| resolve_tracker(name, pot, params)).collect::<Result<Vec<_>>>()?;

    let steps = ((t_final / dt) - 1e-9).ceil().max(1.0) as usize;
    let dt_eff = t_final / steps as f64;
    let stride = sample_stride.unwrap_or_else(|| steps.div_ceil(MAX_AUTO_SAMPLES).max(1));

    let mut traj = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        tracked: tracked.iter().map(|name| TrackedSeries { name: name.clone(), values: Vec::new() }).collect(),
        meta: TrajectoryMeta { potential: pot.clone(), params: params.clone(), method, dt: dt_eff, t_final },
    };
    let record = |traj: &mut Trajectory, t: f64, s: PhaseState| -> Result<()> {
        for (series, tracker) in traj.tracked.iter_mut().zip(&trackers) {
            series.values.push(tracker.evaluate(pot, params, &s)?);
        }
        traj.times.push(t);
        traj.states.push(s);
        Ok(())
    };
    let time_of = |i: usize| if i == steps { t_final } else { i as f64 * dt_eff };

    match analytic_variant {
        Some(variant) => {
            for i in (0..=steps).filter(|i| i % stride == 0 || *i == steps) {
                let t = time_of(i);
                let s = if i == 0 { *s0 } else { analytic_flow(params, variant, s0, t) };
                record(&mut traj, t, s)?;
            }
        }
        None => {
            let verlet = Verlet::new(pot, params, dt_eff);
            let mut s = *s0;
            let mut grad = pot.gradient(params, s.x, s.y)?;
            record(&mut traj, 0.0, s)?;
            for i in 1..=steps {
                (s, grad) = verlet.step(&s, grad)?;
                if i % stride == 0 || i == steps {
                    s.check_finite()?;
                    record(&mut traj, time_of(i), s)?;
                }
            }
        }
    }
    Ok(traj)
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn series(&self, name: &str) -> Option<&[Complex<f64>]> {
        self.tracked.iter().find(|s| s.name == name).map(|s| s.values.as_slice())
    }

    /// Phase-space state at time `t`, by cubic Hermite interpolation between
    /// samples using the exact time derivatives from Hamilton's equations.
    pub fn state_at(&self, t: f64) -> Result<PhaseState> {
        let (first, last) = match (self.times.first(), self.times.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Err(Error::Domain("empty trajectory".into())),
        };
        let slack = 1e-12 * last.abs().max(1.0);
        if !(t >= first - slack && t <= last + slack) {
            return Err(Error::Domain(format!("time {t} outside the sampled range [{first}, {last}]")));
        }
        let idx = self.times.partition_point(|&ti| ti < t);
        if let Some(i) =
            [idx.saturating_sub(1), idx].into_iter().find(|&i| i < self.len() && (self.times[i] - t).abs() <= slack)
        {
            return Ok(self.states[i]);
        }
        let (i0, i1) = (idx - 1, idx);
        let (t0, t1) = (self.times[i0], self.times[i1]);
        let (s0, s1) = (&self.states[i0], &self.states[i1]);
        let (d0, d1) = (self.velocity(s0)?, self.velocity(s1)?);
        let h = t1 - t0;
        let u = (t - t0) / h;
        let (h00, h10) = (2.0 * u.powi(3) - 3.0 * u * u + 1.0, u.powi(3) - 2.0 * u * u + u);
        let (h01, h11) = (-2.0 * u.powi(3) + 3.0 * u * u, u.powi(3) - u * u);
        let (a, b) = (s0.to_array(), s1.to_array());
        let mut out = [0.0; 6];
        for k in 0..6 {
            out[k] = h00 * a[k] + h10 * h * d0[k] + h01 * b[k] + h11 * h * d1[k];
        }
        Ok(PhaseState::from_array(out))
    }

    fn velocity(&self, s: &PhaseState) -> Result<[f64; 6]> {
        let TrajectoryMeta { potential, params, .. } = &self.meta;
        let m = params.mass.to_f64();
        let (vx, vy) = potential.gradient(params, s.x, s.y)?;
        Ok([s.px / m, s.py / m, s.ptheta / params.inertia.to_f64(), -vx, -vy, 0.0])
    }

    /// Unwrapped θ(t) − θ(0).
    pub fn theta_advance(&self, t: f64) -> Result<f64> {
        Ok(self.state_at(t)?.theta - self.states[0].theta)
    }

    /// Writes the CSV export: one row per sample, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "t,x,y,theta,px,py,ptheta")?;
        for series in &self.tracked {
            write!(out, ",{0}_re,{0}_im", series.name)?;
        }
        writeln!(out)?;
        for (i, (t, s)) in self.times.iter().zip(&self.states).enumerate() {
            write!(out, "{t:.16e}")?;
            for v in s.to_array() {
                write!(out, ",{v:.16e}")?;
            }
            for series in &self.tracked {
                let z = series.values[i];
                write!(out, ",{:.16e},{:.16e}", z.re, z.im)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriftEntry {
    pub name: String,
    pub initial: Complex<f64>,
    pub max_abs_deviation: f64,
    /// Deviation divided by max(1, |initial|).
    pub max_rel_deviation: f64,
}

/// Per-observable deviation from the initial value along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftReport {
    pub entries: Vec<DriftEntry>,
}

impl DriftReport {
    pub fn get(&self, name: &str) -> Option<&DriftEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl fmt::Display for DriftReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<12} {:>26} {:>12} {:>12}", "observable", "initial", "max |dev|", "max rel")?;
        for e in &self.entries {
            let initial = format!("{:.9e}{:+.3e}i", e.initial.re, e.initial.im);
            writeln!(
                f,
                "{:<12} {:>26} {:>12.3e} {:>12.3e}",
                e.name, initial, e.max_abs_deviation, e.max_rel_deviation
            )?;
        }
        Ok(())
    }
}

pub fn drift_report(traj: &Trajectory) -> Result<DriftReport> {
    if traj.tracked.is_empty() {
        return Err(Error::Domain("drift report needs at least one tracked observable".into()));
    }
    if traj.len() < 2 {
        return Err(Error::Domain("drift report needs at least two samples".into()));
    }
    let entries = traj
        .tracked
        .iter()
        .map(|series| {
            let initial = series.values[0];
            let max_abs_deviation = series.values.iter().map(|v| (v - initial).norm()).fold(0.0, f64::max);
            DriftEntry {
                name: series.name.clone(),
                initial,
                max_abs_deviation,
                max_rel_deviation: max_abs_deviation / initial.norm().max(1.0),
            }
        })
        .collect();
    Ok(DriftReport { entries })
}

/// Distance in (x, y, px, py) between the state at `period` and the initial
/// state. θ is excluded; see [`Trajectory::theta_advance`].
pub fn recurrence_error(traj: &Trajectory, period: f64) -> Result<f64> {
    let s = traj.state_at(period)?;
    let s0 = traj.states[0];
    Ok([s.x - s0.x, s.y - s0.y, s.px - s0.px, s.py - s0.py].iter().map(|d| d * d).sum::<f64>().sqrt())
}
