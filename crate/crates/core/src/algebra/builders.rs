//! Named integrals of the rotor-coupled oscillator.
//!
//! With `H = (px² + py²)/2M + ½Mω²(x² + y²) + pθ²/2I (+ Mgy)`:
//!
//! ```text
//! F1 = H              F2 = pθ²/2I          L = x py − y px
//! G1 = px py/2M + ½Mω² x y
//! G2 = (px² − py²)/2M + ½Mω²(x² − y²)
//! u = x + iy          w = px + i py        Z = w + iMω u
//! K(m,n) = Z^m exp(−inθ),  P = (K + K̄)/2,  Q = (K − K̄)/2i
//! ```
//!
//! In the gravity variant the primed generators are the same expressions in
//! the recentred coordinate y' = y + g/ω², and `K(m,n)` uses the recentred
//! ladder function `Z' = Z − Mg/ω`.

use num::integer::Integer;
use num::{BigRational, One, Zero};

use super::coeff::RationalComplex;
use super::observable::{int, Observable};
use crate::error::{Error, Result};
use crate::model::{ExactParameters, OscillatorVariant};

/// Builds the named observables for one parameter set and variant.
#[derive(Debug, Clone)]
pub struct ObservableBuilder {
    params: ExactParameters,
    variant: OscillatorVariant,
}

impl ObservableBuilder {
    pub fn new(params: ExactParameters, variant: OscillatorVariant) -> Self {
        Self { params, variant }
    }

    pub fn params(&self) -> &ExactParameters {
        &self.params
    }

    pub fn variant(&self) -> OscillatorVariant {
        self.variant
    }

    /// g in the gravity variant, zero otherwise.
    pub fn gravity(&self) -> BigRational {
        match self.variant {
            OscillatorVariant::Isotropic => BigRational::zero(),
            OscillatorVariant::Gravity => self.params.gravity.clone(),
        }
    }

    /// The equilibrium offset g/ω².
    pub fn shift(&self) -> BigRational {
        self.gravity() / (&self.params.omega * &self.params.omega)
    }

    fn m_omega2_half(&self) -> BigRational {
        &self.params.mass * &self.params.omega * &self.params.omega / int(2)
    }

    fn inv_2m(&self) -> BigRational {
        BigRational::one() / (int(2) * &self.params.mass)
    }

    /// The Hamiltonian, including Mgy in the gravity variant.
    pub fn hamiltonian(&self) -> Observable {
        let (x, y, px, py) = (Observable::x(), Observable::y(), Observable::px(), Observable::py());
        let kinetic = (&px * &px + &py * &py).scale_real(&self.inv_2m());
        let potential = (&x * &x + &y * &y).scale_real(&self.m_omega2_half());
        let field = y.scale_real(&(&self.params.mass * self.gravity()));
        kinetic + potential + field + self.f2()
    }

    pub fn f1(&self) -> Observable {
        self.hamiltonian()
    }

    pub fn f2(&self) -> Observable {
        let pt = Observable::ptheta();
        (&pt * &pt).scale_real(&(BigRational::one() / (int(2) * &self.params.inertia)))
    }

    pub fn angular_momentum(&self) -> Observable {
        Observable::x() * Observable::py() - Observable::y() * Observable::px()
    }

    pub fn g1(&self) -> Observable {
        let kinetic = (Observable::px() * Observable::py()).scale_real(&self.inv_2m());
        kinetic + (Observable::x() * Observable::y()).scale_real(&self.m_omega2_half())
    }

    pub fn g2(&self) -> Observable {
        let (x, y, px, py) = (Observable::x(), Observable::y(), Observable::px(), Observable::py());
        let kinetic = (&px * &px - &py * &py).scale_real(&self.inv_2m());
        kinetic + (&x * &x - &y * &y).scale_real(&self.m_omega2_half())
    }

    /// L' = L − (g/ω²) px.
    pub fn angular_momentum_prime(&self) -> Observable {
        self.angular_momentum() - Observable::px().scale_real(&self.shift())
    }

    /// G1' = G1 + Mgx/2.
    pub fn g1_prime(&self) -> Observable {
        let m_g = &self.params.mass * self.gravity();
        self.g1() + Observable::x().scale_real(&(m_g / int(2)))
    }

    /// G2' = G2 − Mgy − Mg²/2ω².
    pub fn g2_prime(&self) -> Observable {
        let g = self.gravity();
        let m = &self.params.mass;
        let constant = m * &g * &g / (int(2) * &self.params.omega * &self.params.omega);
        self.g2() - Observable::y().scale_real(&(m * &g)) - Observable::rational(constant)
    }

    pub fn u(&self) -> Observable {
        Observable::x() + Observable::y().scale(&RationalComplex::i())
    }

    pub fn w(&self) -> Observable {
        Observable::px() + Observable::py().scale(&RationalComplex::i())
    }

    /// Z = w + iMωu = (px − Mωy) + i(py + Mωx).
    pub fn z(&self) -> Observable {
        let i_m_omega = RationalComplex::imag(&self.params.mass * &self.params.omega);
        self.w() + self.u().scale(&i_m_omega)
    }

    /// Z built on the recentred coordinate y'; equals Z when g = 0.
    pub fn z_prime(&self) -> Observable {
        let offset = &self.params.mass * self.gravity() / &self.params.omega;
        self.z() - Observable::rational(offset)
    }

    /// K(m,n) = Z^m exp(−inθ), with Z' in the gravity variant.
    pub fn k(&self, m: i64, n: i64) -> Result<Observable> {
        check_indices(m, n)?;
        Ok(self.z_prime().pow(m as u32) * Observable::fourier(-(n as i32)))
    }

    pub fn k_bar(&self, m: i64, n: i64) -> Result<Observable> {
        Ok(self.k(m, n)?.conjugate())
    }

    /// P(m,n) = (K + K̄)/2.
    pub fn p(&self, m: i64, n: i64) -> Result<Observable> {
        let k = self.k(m, n)?;
        Ok((&k + &k.conjugate()).scale_real(&BigRational::new(1.into(), 2.into())))
    }

    /// Q(m,n) = (K − K̄)/2i.
    pub fn q(&self, m: i64, n: i64) -> Result<Observable> {
        let k = self.k(m, n)?;
        let half_over_i = RationalComplex::imag(BigRational::new((-1).into(), 2.into()));
        Ok((&k - &k.conjugate()).scale(&half_over_i))
    }

    /// Resolves a name such as `H`, `G2'`, `Zbar` or `P_1_-2`.
    pub fn named(&self, name: &str) -> Result<Observable> {
        let obs = match name {
            "H" | "F1" => self.hamiltonian(),
            "F2" => self.f2(),
            "L" => self.angular_momentum(),
            "G1" => self.g1(),
            "G2" => self.g2(),
            "L'" => self.angular_momentum_prime(),
            "G1'" => self.g1_prime(),
            "G2'" => self.g2_prime(),
            "u" => self.u(),
            "w" => self.w(),
            "Z" => self.z(),
            "Z'" => self.z_prime(),
            "ubar" => self.u().conjugate(),
            "wbar" => self.w().conjugate(),
            "Zbar" => self.z().conjugate(),
            "Zbar'" => self.z_prime().conjugate(),
            "x" => Observable::x(),
            "y" => Observable::y(),
            "px" => Observable::px(),
            "py" => Observable::py(),
            "ptheta" | "p_theta" => Observable::ptheta(),
            _ => return self.indexed(name),
        };
        Ok(obs)
    }

    fn indexed(&self, name: &str) -> Result<Observable> {
        let unknown = || Error::UnknownObservable(name.to_string());
        let mut parts = name.splitn(3, '_');
        let (Some(family), Some(m), Some(n)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(unknown());
        };
        let m: i64 = m.parse().map_err(|_| unknown())?;
        let n: i64 = n.parse().map_err(|_| unknown())?;
        match family {
            "K" => self.k(m, n),
            "Kbar" => self.k_bar(m, n),
            "P" => self.p(m, n),
            "Q" => self.q(m, n),
            _ => Err(unknown()),
        }
    }
}

/// m ≥ 1, n ≠ 0 and gcd(m, |n|) = 1.
pub fn check_indices(m: i64, n: i64) -> Result<()> {
    let reason = if m <= 0 {
        "m must be positive"
    } else if n == 0 {
        "n must be nonzero"
    } else if m.gcd(&n) != 1 {
        "m and |n| must be coprime"
    } else if m > u32::MAX as i64 || n.unsigned_abs() > i32::MAX as u64 {
        "index out of range"
    } else {
        return Ok(());
    };
    Err(Error::InvalidIndices { m, n, reason })
}

/// Free-function form of [`ObservableBuilder::named`].
pub fn build_named(name: &str, params: &ExactParameters, variant: OscillatorVariant) -> Result<Observable> {
    ObservableBuilder::new(params.clone(), variant).named(name)
}
