//! Empirical check of the resonant conservation law along closed-form
//! trajectories.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::algebra::ObservableBuilder;
use crate::dynamics::analytic_flow;
use crate::error::{Error, Result};
use crate::model::{OscillatorVariant, Parameters, PhaseState};

/// Samples per orbital period, and the overall cap on samples per candidate.
const SAMPLES_PER_PERIOD: f64 = 256.0;
const MAX_SAMPLES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    /// m ω I − n pθ = 0 in exact arithmetic.
    pub resonant: bool,
    /// |K(0)|.
    pub initial_modulus: f64,
    /// max |K(t) − K(0)| over the run.
    pub drift: f64,
    /// max ||K(t)| − |K(0)|| over the run.
    pub modulus_drift: f64,
}

/// For each candidate (m, n): whether the level set pθ(s0) is resonant, and
/// how far K(m,n) wanders from its initial value along the analytic flow.
pub fn conservation_scan(
    params: &Parameters,
    variant: OscillatorVariant,
    s0: &PhaseState<BigRational>,
    candidates: &[(i64, i64)],
    t_final: f64,
) -> Result<BTreeMap<(i64, i64), ScanEntry>> {
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(Error::Domain(format!("t_final must be positive, got {t_final}")));
    }
    let exact = params.exact()?;
    let builder = ObservableBuilder::new(exact.clone(), variant);
    let start = s0.to_f64();
    let omega = params.omega.to_f64();
    let period = TAU / omega;
    let samples = ((t_final / period * SAMPLES_PER_PERIOD).ceil() as usize).clamp(256, MAX_SAMPLES);

    let mut out = BTreeMap::new();
    for &(m, n) in candidates {
        let k = builder.k(m, n)?.compile();
        let mismatch = BigRational::from_integer(m.into()) * &exact.omega * &exact.inertia
            - BigRational::from_integer(n.into()) * &s0.ptheta;
        let k0 = k.evaluate(&start);
        let (mut drift, mut modulus_drift) = (0.0f64, 0.0f64);
        for i in 1..=samples {
            let t = t_final * i as f64 / samples as f64;
            let kt = k.evaluate(&analytic_flow(params, variant, &start, t));
            drift = drift.max((kt - k0).norm());
            modulus_drift = modulus_drift.max((kt.norm() - k0.norm()).abs());
        }
        out.insert(
            (m, n),
            ScanEntry { resonant: mismatch.is_zero(), initial_modulus: k0.norm(), drift, modulus_drift },
        );
    }
    Ok(out)
}
