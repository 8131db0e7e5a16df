//! Functional independence via the rank of the Jacobian ∂(O₁…Oₖ)/∂(q, p).

use nalgebra::DMatrix;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Observable, Var};
use crate::error::{Error, Result};
use crate::model::PhaseState;

/// Floating rank threshold relative to the largest singular value.
pub const DEFAULT_RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    Floating,
}

/// Rows are observables, columns are (x, y, θ, px, py, pθ).
#[derive(Debug, Clone, PartialEq)]
pub enum GradientMatrix {
    Exact(Vec<Vec<BigRational>>),
    Float(DMatrix<f64>),
}

impl GradientMatrix {
    pub fn rows(&self) -> usize {
        match self {
            GradientMatrix::Exact(rows) => rows.len(),
            GradientMatrix::Float(m) => m.nrows(),
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            GradientMatrix::Exact(rows) => {
                DMatrix::from_fn(rows.len(), 6, |i, j| rows[i][j].to_f64().unwrap_or(f64::NAN))
            }
            GradientMatrix::Float(m) => m.clone(),
        }
    }
}

fn check_real(observables: &[Observable]) -> Result<()> {
    match observables.iter().position(|o| !o.is_real()) {
        Some(i) => Err(Error::ComplexValued(format!("#{i}"))),
        None => Ok(()),
    }
}

/// Exact Jacobian at a rational state (θ must be 0 when Fourier modes occur).
pub fn gradient_matrix_exact(observables: &[Observable], state: &PhaseState<BigRational>) -> Result<GradientMatrix> {
    check_real(observables)?;
    let rows = observables
        .iter()
        .map(|o| {
            Var::ALL.iter().map(|&v| Ok(o.partial_derivative(v).evaluate_exact(state)?.re)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradientMatrix::Exact(rows))
}

/// Floating-point Jacobian at any state.
pub fn gradient_matrix(observables: &[Observable], state: &PhaseState) -> Result<GradientMatrix> {
    check_real(observables)?;
    let grads: Vec<Vec<_>> =
        observables.iter().map(|o| Var::ALL.iter().map(|&v| o.partial_derivative(v).compile()).collect()).collect();
    Ok(GradientMatrix::Float(DMatrix::from_fn(observables.len(), 6, |i, j| grads[i][j].evaluate(state).re)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankResult {
    pub mode: RankMode,
    pub rank: usize,
    /// Descending; floating mode only.
    pub singular_values: Vec<f64>,
    pub tolerance: Option<f64>,
}

/// Exact rank by fraction-free elimination, or numerical rank by SVD with a
/// threshold of `tolerance · σ_max`.
pub fn rank(matrix: &GradientMatrix, mode: RankMode, tolerance: f64) -> Result<RankResult> {
    match mode {
        RankMode::Exact => {
            let GradientMatrix::Exact(rows) = matrix else {
                return Err(Error::NotExact("floating-point gradient matrix".into()));
            };
            Ok(RankResult { mode, rank: exact_rank(rows), singular_values: Vec::new(), tolerance: None })
        }
        RankMode::Floating => {
            if !(tolerance > 0.0 && tolerance < 1.0) {
                return Err(Error::Domain(format!("rank tolerance must lie in (0, 1), got {tolerance}")));
            }
            let m = matrix.to_f64();
            let mut singular_values: Vec<f64> = m.singular_values().iter().copied().collect();
            singular_values.sort_by(|a, b| b.total_cmp(a));
            let largest = singular_values.first().copied().unwrap_or(0.0);
            let rank =
                if largest > 0.0 { singular_values.iter().filter(|&&s| s > tolerance * largest).count() } else { 0 };
            Ok(RankResult { mode, rank, singular_values, tolerance: Some(tolerance) })
        }
    }
}

/// Bareiss elimination on the integer matrix obtained by clearing each row's
/// denominators. Every division is exact.
pub fn exact_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(pivot) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for i in rank + 1..n_rows {
            for j in col + 1..n_cols {
                let v = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].abs();
        if a[rank][col].is_negative() {
            // Keep the divisor positive; the sign of a row does not affect rank.
            for v in a[rank].iter_mut() {
                *v = -&*v;
            }
        }
        rank += 1;
    }
    rank
}

/// A rank computed for a named integral set at one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub observable_names: Vec<String>,
    /// Coordinates as printed: exact rationals or floats.
    pub state: [String; 6],
    pub mode: RankMode,
    pub singular_values: Vec<f64>,
    pub tolerance: Option<f64>,
    pub rank: usize,
}

impl RankReport {
    pub fn new<T: ToString>(names: Vec<String>, state: &PhaseState<T>, result: RankResult) -> Self {
        let PhaseState { x, y, theta, px, py, ptheta } = state;
        Self {
            observable_names: names,
            state: [x, y, theta, px, py, ptheta].map(|v| v.to_string()),
            mode: result.mode,
            singular_values: result.singular_values,
            tolerance: result.tolerance,
            rank: result.rank,
        }
    }
}

/// Rank of a named integral set at an exact state, in either mode.
pub fn certify_rank(
    named: &[(String, Observable)],
    state: &PhaseState<BigRational>,
    mode: RankMode,
    tolerance: f64,
) -> Result<RankReport> {
    let observables: Vec<Observable> = named.iter().map(|(_, o)| o.clone()).collect();
    let rename = |e: Error| match e {
        Error::ComplexValued(idx) => {
            let i: usize = idx.trim_start_matches('#').parse().unwrap_or(0);
            Error::ComplexValued(named.get(i).map_or(idx, |(n, _)| n.clone()))
        }
        other => other,
    };
    let matrix = match mode {
        RankMode::Exact => gradient_matrix_exact(&observables, state).map_err(rename)?,
        RankMode::Floating => gradient_matrix(&observables, &state.to_f64()).map_err(rename)?,
    };
    let result = rank(&matrix, mode, tolerance)?;
    Ok(RankReport::new(named.iter().map(|(n, _)| n.clone()).collect(), state, result))
}

/// Largest floating rank over a set of sample states. Rank is a generic
/// property, so isolated degenerate samples are outvoted.
pub fn max_floating_rank<'a>(
    observables: &[Observable],
    states: impl IntoIterator<Item = &'a PhaseState>,
    tolerance: f64,
) -> Result<usize> {
    let mut best = 0;
    for s in states {
        best = best.max(rank(&gradient_matrix(observables, s)?, RankMode::Floating, tolerance)?.rank);
    }
    Ok(best)
}
