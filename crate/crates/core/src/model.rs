//! Physical parameters, phase-space states and the potential family.
//!
//! Every Hamiltonian here has the separable form
//!
//! ```text
//! H = (px² + py²) / 2M + V(x, y) + pθ² / 2I
//! ```
//!
//! with θ cyclic. Oscillators are parameterized by their angular frequency ω
//! rather than the spring constant k, so that the exact algebra stays rational
//! whenever ω is.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Builds the rational `p/q`. Panics if `q == 0`.
pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, an integer, or a terminating decimal such as `"0.25"` into
/// an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("`{text}` has a zero denominator")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => int.parse().map_err(|_| bad())?,
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let magnitude = BigRational::new(int_part.abs() * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad())
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(value: &BigRational) -> Option<BigRational> {
    if value.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(root(value.numer())?, root(value.denom())?))
}

/// A real scalar that is either an exact rational or a float.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(BigRational),
    Float(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Real::Float(v) => *v,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Float(_) => None,
        }
    }

    fn exact_or(&self, name: &str) -> Result<BigRational> {
        self.as_exact().cloned().ok_or_else(|| Error::NotExact(name.to_string()))
    }

    fn is_positive(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_positive(),
            Real::Float(v) => *v > 0.0 && v.is_finite(),
        }
    }

    fn is_nonnegative(&self) -> bool {
        match self {
            Real::Exact(q) => !q.is_negative(),
            Real::Float(v) => *v >= 0.0 && v.is_finite(),
        }
    }
}

impl From<BigRational> for Real {
    fn from(q: BigRational) -> Self {
        Real::Exact(q)
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::Exact(BigRational::from_integer(n.into()))
    }
}

impl From<f64> for Real {
    fn from(v: f64) -> Self {
        Real::Float(v)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{q}"),
            Real::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Physical constants of a rotor-extended planar system.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    /// Total mass M.
    pub mass: Real,
    /// Oscillator angular frequency ω.
    pub omega: Real,
    /// Moment of inertia I about the z-axis.
    pub inertia: Real,
    /// Gravitational acceleration g (only the gravity variant uses it).
    pub gravity: Real,
    pub omega_x: Real,
    pub omega_y: Real,
}

fn require_positive(name: &'static str, value: &Real) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, reason: format!("must be positive, got {value}") })
    }
}

impl Parameters {
    /// Gravity defaults to zero and both anisotropic frequencies to `omega`.
    pub fn new(mass: impl Into<Real>, omega: impl Into<Real>, inertia: impl Into<Real>) -> Result<Self> {
        let (mass, omega, inertia) = (mass.into(), omega.into(), inertia.into());
        require_positive("mass", &mass)?;
        require_positive("omega", &omega)?;
        require_positive("inertia", &inertia)?;
        Ok(Self { mass, omega_x: omega.clone(), omega_y: omega.clone(), omega, inertia, gravity: Real::from(0) })
    }

    /// Uses the moment of inertia of a thin homogeneous rod, M·ℓ²/12.
    pub fn from_rod(mass: impl Into<Real>, omega: impl Into<Real>, rod_length: impl Into<Real>) -> Result<Self> {
        let (mass, rod_length) = (mass.into(), rod_length.into());
        require_positive("mass", &mass)?;
        require_positive("rod_length", &rod_length)?;
        let inertia = match (&mass, &rod_length) {
            (Real::Exact(m), Real::Exact(l)) => Real::Exact(rod_inertia(m, l)?),
            _ => Real::Float(mass.to_f64() * rod_length.to_f64().powi(2) / 12.0),
        };
        Self::new(mass, omega, inertia)
    }

    pub fn with_gravity(mut self, gravity: impl Into<Real>) -> Result<Self> {
        let gravity = gravity.into();
        if !gravity.is_nonnegative() {
            return Err(Error::InvalidParameter {
                name: "gravity",
                reason: format!("must be nonnegative, got {gravity}"),
            });
        }
        self.gravity = gravity;
        Ok(self)
    }

    pub fn with_anisotropy(mut self, omega_x: impl Into<Real>, omega_y: impl Into<Real>) -> Result<Self> {
        let (omega_x, omega_y) = (omega_x.into(), omega_y.into());
        require_positive("omega_x", &omega_x)?;
        require_positive("omega_y", &omega_y)?;
        self.omega_x = omega_x;
        self.omega_y = omega_y;
        Ok(self)
    }

    /// ω = √(k/M). Exact when k/M is the square of a rational, float otherwise.
    pub fn omega_from_spring(k: &Real, mass: &Real) -> Result<Real> {
        require_positive("k", k)?;
        require_positive("mass", mass)?;
        if let (Real::Exact(k), Real::Exact(m)) = (k, mass) {
            if let Some(root) = rational_sqrt(&(k / m)) {
                return Ok(Real::Exact(root));
            }
        }
        Ok(Real::Float((k.to_f64() / mass.to_f64()).sqrt()))
    }

    /// Rational view required by the symbolic algebra.
    pub fn exact(&self) -> Result<ExactParameters> {
        Ok(ExactParameters {
            mass: self.mass.exact_or("mass")?,
            omega: self.omega.exact_or("omega")?,
            inertia: self.inertia.exact_or("inertia")?,
            gravity: self.gravity.exact_or("gravity")?,
        })
    }
}

/// The rational parameters the observable algebra is built over.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactParameters {
    pub mass: BigRational,
    pub omega: BigRational,
    pub inertia: BigRational,
    pub gravity: BigRational,
}

impl ExactParameters {
    pub fn unit_rod() -> Self {
        Self {
            mass: BigRational::one(),
            omega: BigRational::one(),
            inertia: rational(1, 12),
            gravity: BigRational::zero(),
        }
    }
}

/// The two oscillator variants with closed-form flows and exact integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OscillatorVariant {
    Isotropic,
    /// Isotropic oscillator plus the uniform field Mgy.
    Gravity,
}

impl OscillatorVariant {
    pub fn potential(self, params: &Parameters) -> PotentialSpec {
        match self {
            Self::Isotropic => PotentialSpec::isotropic(params),
            Self::Gravity => PotentialSpec::gravity(params),
        }
    }

    pub fn of(pot: &PotentialSpec) -> Option<Self> {
        match pot {
            PotentialSpec::IsotropicOscillator { .. } => Some(Self::Isotropic),
            PotentialSpec::OscillatorGravity { .. } => Some(Self::Gravity),
            _ => None,
        }
    }
}

/// Moment of inertia of a thin homogeneous rod about its center, M·ℓ²/12.
pub fn rod_inertia(mass: &BigRational, rod_length: &BigRational) -> Result<BigRational> {
    if !mass.is_positive() {
        return Err(Error::InvalidParameter { name: "mass", reason: format!("must be positive, got {mass}") });
    }
    if !rod_length.is_positive() {
        return Err(Error::InvalidParameter {
            name: "rod_length",
            reason: format!("must be positive, got {rod_length}"),
        });
    }
    Ok(mass * rod_length * rod_length / BigRational::from_integer(12.into()))
}

/// Names of the six canonical coordinates, in storage order.
pub const COORDINATE_NAMES: [&str; 6] = ["x", "y", "theta", "px", "py", "ptheta"];

/// One point (x, y, θ, px, py, pθ) of phase space. θ is stored unwrapped.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseState<T = f64> {
    pub x: T,
    pub y: T,
    pub theta: T,
    pub px: T,
    pub py: T,
    pub ptheta: T,
}

impl<T> PhaseState<T> {
    pub fn new(x: T, y: T, theta: T, px: T, py: T, ptheta: T) -> Self {
        Self { x, y, theta, px, py, ptheta }
    }

    pub fn from_array([x, y, theta, px, py, ptheta]: [T; 6]) -> Self {
        Self { x, y, theta, px, py, ptheta }
    }

    pub fn into_array(self) -> [T; 6] {
        [self.x, self.y, self.theta, self.px, self.py, self.ptheta]
    }
}

impl PhaseState<f64> {
    pub fn zeros() -> Self {
        Self::default()
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.x, self.y, self.theta, self.px, self.py, self.ptheta]
    }

    pub fn check_finite(&self) -> Result<()> {
        for (v, name) in self.to_array().iter().zip(COORDINATE_NAMES) {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        Ok(())
    }

    /// θ reduced to [0, 2π), for display.
    pub fn wrapped_theta(&self) -> f64 {
        self.theta.rem_euclid(std::f64::consts::TAU)
    }
}

impl PhaseState<BigRational> {
    pub fn from_ratios(coords: [(i64, i64); 6]) -> Self {
        Self::from_array(coords.map(|(p, q)| rational(p, q)))
    }

    pub fn to_f64(&self) -> PhaseState<f64> {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        PhaseState::new(f(&self.x), f(&self.y), f(&self.theta), f(&self.px), f(&self.py), f(&self.ptheta))
    }
}

/// A planar potential V(x, y) with its coefficients.
///
/// The four `Sw*` families are the classical second-order superintegrable
/// planar potentials:
///
/// ```text
/// SwI   : α(x² + y²) + β/x² + γ/y²
/// SwII  : α(x² + 4y²) + β/x² + γy
/// SwIII : α/r + (β / cos²(φ/2) + γ / sin²(φ/2)) / r²
/// SwIV  : α/r + (β cos(φ/2) + γ sin(φ/2)) / √r
/// ```
///
/// with (r, φ) polar coordinates, φ ∈ (−π, π].
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// ½Mω²(x² + y²)
    IsotropicOscillator {
        omega: Real,
    },
    /// ½Mω²(x² + y²) + Mgy
    OscillatorGravity {
        omega: Real,
        gravity: Real,
    },
    /// ½M(ωx²x² + ωy²y²)
    AnisotropicOscillator {
        omega_x: Real,
        omega_y: Real,
    },
    SwI {
        alpha: Real,
        beta: Real,
        gamma: Real,
    },
    SwII {
        alpha: Real,
        beta: Real,
        gamma: Real,
    },
    SwIII {
        alpha: Real,
        beta: Real,
        gamma: Real,
    },
    SwIV {
        alpha: Real,
        beta: Real,
        gamma: Real,
    },
}

impl PotentialSpec {
    pub fn isotropic(params: &Parameters) -> Self {
        Self::IsotropicOscillator { omega: params.omega.clone() }
    }

    pub fn gravity(params: &Parameters) -> Self {
        Self::OscillatorGravity { omega: params.omega.clone(), gravity: params.gravity.clone() }
    }

    pub fn anisotropic(params: &Parameters) -> Self {
        Self::AnisotropicOscillator { omega_x: params.omega_x.clone(), omega_y: params.omega_y.clone() }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::IsotropicOscillator { .. } => "isotropic",
            Self::OscillatorGravity { .. } => "gravity",
            Self::AnisotropicOscillator { .. } => "anisotropic",
            Self::SwI { .. } => "sw1",
            Self::SwII { .. } => "sw2",
            Self::SwIII { .. } => "sw3",
            Self::SwIV { .. } => "sw4",
        }
    }

    fn singular(&self, coordinate: &'static str) -> Error {
        Error::Singular { potential: self.name(), coordinate }
    }

    fn check_domain(&self, x: f64, y: f64) -> Result<()> {
        match self {
            Self::SwI { .. } if x == 0.0 => Err(self.singular("x")),
            Self::SwI { .. } if y == 0.0 => Err(self.singular("y")),
            Self::SwII { .. } if x == 0.0 => Err(self.singular("x")),
            Self::SwIII { .. } | Self::SwIV { .. } if x == 0.0 && y == 0.0 => Err(self.singular("r")),
            // 1/cos²(φ/2) and 1/sin²(φ/2) blow up on the x-axis.
            Self::SwIII { .. } if y == 0.0 => Err(self.singular("y")),
            _ => Ok(()),
        }
    }

    /// V(x, y) in floating point.
    pub fn value(&self, params: &Parameters, x: f64, y: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFinite("x"));
        }
        if !y.is_finite() {
            return Err(Error::NonFinite("y"));
        }
        self.check_domain(x, y)?;
        let m = params.mass.to_f64();
        let v = match self {
            Self::IsotropicOscillator { omega } => 0.5 * m * omega.to_f64().powi(2) * (x * x + y * y),
            Self::OscillatorGravity { omega, gravity } => {
                0.5 * m * omega.to_f64().powi(2) * (x * x + y * y) + m * gravity.to_f64() * y
            }
            Self::AnisotropicOscillator { omega_x, omega_y } => {
                0.5 * m * (omega_x.to_f64().powi(2) * x * x + omega_y.to_f64().powi(2) * y * y)
            }
            Self::SwI { alpha, beta, gamma } => {
                alpha.to_f64() * (x * x + y * y) + beta.to_f64() / (x * x) + gamma.to_f64() / (y * y)
            }
            Self::SwII { alpha, beta, gamma } => {
                alpha.to_f64() * (x * x + 4.0 * y * y) + beta.to_f64() / (x * x) + gamma.to_f64() * y
            }
            Self::SwIII { alpha, beta, gamma } => {
                let (r, half) = polar(x, y);
                let (c, s) = (half.cos(), half.sin());
                alpha.to_f64() / r + (beta.to_f64() / (c * c) + gamma.to_f64() / (s * s)) / (r * r)
            }
            Self::SwIV { alpha, beta, gamma } => {
                let (r, half) = polar(x, y);
                alpha.to_f64() / r + (beta.to_f64() * half.cos() + gamma.to_f64() * half.sin()) / r.sqrt()
            }
        };
        Ok(v)
    }

    /// Closed-form gradient (∂V/∂x, ∂V/∂y).
    pub fn gradient(&self, params: &Parameters, x: f64, y: f64) -> Result<(f64, f64)> {
        if !x.is_finite() {
            return Err(Error::NonFinite("x"));
        }
        if !y.is_finite() {
            return Err(Error::NonFinite("y"));
        }
        self.check_domain(x, y)?;
        let m = params.mass.to_f64();
        let grad = match self {
            Self::IsotropicOscillator { omega } => {
                let k = m * omega.to_f64().powi(2);
                (k * x, k * y)
            }
            Self::OscillatorGravity { omega, gravity } => {
                let k = m * omega.to_f64().powi(2);
                (k * x, k * y + m * gravity.to_f64())
            }
            Self::AnisotropicOscillator { omega_x, omega_y } => {
                (m * omega_x.to_f64().powi(2) * x, m * omega_y.to_f64().powi(2) * y)
            }
            Self::SwI { alpha, beta, gamma } => {
                let (a, b, g) = (alpha.to_f64(), beta.to_f64(), gamma.to_f64());
                (2.0 * a * x - 2.0 * b / x.powi(3), 2.0 * a * y - 2.0 * g / y.powi(3))
            }
            Self::SwII { alpha, beta, gamma } => {
                let (a, b, g) = (alpha.to_f64(), beta.to_f64(), gamma.to_f64());
                (2.0 * a * x - 2.0 * b / x.powi(3), 8.0 * a * y + g)
            }
            Self::SwIII { alpha, beta, gamma } => {
                let (a, b, g) = (alpha.to_f64(), beta.to_f64(), gamma.to_f64());
                let (r, half) = polar(x, y);
                let (c, s) = (half.cos(), half.sin());
                let angular = b / (c * c) + g / (s * s);
                let d_r = -a / (r * r) - 2.0 * angular / r.powi(3);
                // d/dφ sec²(φ/2) = sec²(φ/2) tan(φ/2), d/dφ csc²(φ/2) = −csc²(φ/2) cot(φ/2)
                let d_phi = (b * s / c.powi(3) - g * c / s.powi(3)) / (r * r);
                from_polar_gradient(x, y, r, d_r, d_phi)
            }
            Self::SwIV { alpha, beta, gamma } => {
                let (a, b, g) = (alpha.to_f64(), beta.to_f64(), gamma.to_f64());
                let (r, half) = polar(x, y);
                let (c, s) = (half.cos(), half.sin());
                let d_r = -a / (r * r) - 0.5 * (b * c + g * s) / r.powf(1.5);
                let d_phi = 0.5 * (-b * s + g * c) / r.sqrt();
                from_polar_gradient(x, y, r, d_r, d_phi)
            }
        };
        Ok(grad)
    }

    /// V(x, y) in exact arithmetic. Only the rational families qualify.
    pub fn value_exact(&self, params: &ExactParameters, x: &BigRational, y: &BigRational) -> Result<BigRational> {
        let c = |r: &Real, name: &str| r.exact_or(name);
        let two = BigRational::from_integer(2.into());
        let half = BigRational::new(1.into(), 2.into());
        let v = match self {
            Self::IsotropicOscillator { omega } => {
                let w = c(omega, "omega")?;
                &half * &params.mass * &w * &w * (x * x + y * y)
            }
            Self::OscillatorGravity { omega, gravity } => {
                let (w, g) = (c(omega, "omega")?, c(gravity, "gravity")?);
                &half * &params.mass * &w * &w * (x * x + y * y) + &params.mass * g * y
            }
            Self::AnisotropicOscillator { omega_x, omega_y } => {
                let (wx, wy) = (c(omega_x, "omega_x")?, c(omega_y, "omega_y")?);
                &half * &params.mass * (&wx * &wx * x * x + &wy * &wy * y * y)
            }
            Self::SwI { alpha, beta, gamma } => {
                if x.is_zero() {
                    return Err(self.singular("x"));
                }
                if y.is_zero() {
                    return Err(self.singular("y"));
                }
                c(alpha, "alpha")? * (x * x + y * y) + c(beta, "beta")? / (x * x) + c(gamma, "gamma")? / (y * y)
            }
            Self::SwII { alpha, beta, gamma } => {
                if x.is_zero() {
                    return Err(self.singular("x"));
                }
                let four = &two * &two;
                c(alpha, "alpha")? * (x * x + four * y * y) + c(beta, "beta")? / (x * x) + c(gamma, "gamma")? * y
            }
            Self::SwIII { .. } | Self::SwIV { .. } => {
                return Err(Error::NotExact(format!("{} potential", self.name())));
            }
        };
        Ok(v)
    }
}

/// Returns (r, φ/2) with φ = atan2(y, x).
fn polar(x: f64, y: f64) -> (f64, f64) {
    (x.hypot(y), 0.5 * y.atan2(x))
}

fn from_polar_gradient(x: f64, y: f64, r: f64, d_r: f64, d_phi: f64) -> (f64, f64) {
    let (cos_phi, sin_phi) = (x / r, y / r);
    (cos_phi * d_r - sin_phi / r * d_phi, sin_phi * d_r + cos_phi / r * d_phi)
}

/// (px² + py²)/2M + V(x, y) + pθ²/2I at `state`.
pub fn hamiltonian_value(params: &Parameters, pot: &PotentialSpec, state: &PhaseState) -> Result<f64> {
    state.check_finite()?;
    let m = params.mass.to_f64();
    let i = params.inertia.to_f64();
    let kinetic = (state.px * state.px + state.py * state.py) / (2.0 * m);
    let rotor = state.ptheta * state.ptheta / (2.0 * i);
    Ok(kinetic + pot.value(params, state.x, state.y)? + rotor)
}

/// Exact counterpart of [`hamiltonian_value`] for rational inputs.
pub fn hamiltonian_value_exact(
    params: &Parameters,
    pot: &PotentialSpec,
    state: &PhaseState<BigRational>,
) -> Result<BigRational> {
    let exact = params.exact()?;
    let two = BigRational::from_integer(2.into());
    let kinetic = (&state.px * &state.px + &state.py * &state.py) / (&two * &exact.mass);
    let rotor = &state.ptheta * &state.ptheta / (&two * &exact.inertia);
    Ok(kinetic + pot.value_exact(&exact, &state.x, &state.y)? + rotor)
}
