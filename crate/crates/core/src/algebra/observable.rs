use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Complex, One, Zero};

use super::coeff::RationalComplex;
use crate::error::{Error, Result};
use crate::model::PhaseState;

/// A canonical phase-space coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Theta,
    Px,
    Py,
    Ptheta,
}

impl Var {
    /// Storage order of [`PhaseState`] and of Jacobian columns.
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Theta, Var::Px, Var::Py, Var::Ptheta];

    /// Conjugate (q, p) pairs.
    pub const PAIRS: [(Var, Var); 3] = [(Var::X, Var::Px), (Var::Y, Var::Py), (Var::Theta, Var::Ptheta)];

    /// Index into [`FourierMonomial::exponents`], or `None` for θ.
    fn slot(self) -> Option<usize> {
        match self {
            Var::X => Some(0),
            Var::Y => Some(1),
            Var::Px => Some(2),
            Var::Py => Some(3),
            Var::Ptheta => Some(4),
            Var::Theta => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Theta => "theta",
            Var::Px => "px",
            Var::Py => "py",
            Var::Ptheta => "ptheta",
        }
    }
}

/// `x^a y^b px^c py^d pθ^e · exp(i k θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FourierMonomial {
    /// Exponents of (x, y, px, py, pθ).
    pub exponents: [u32; 5],
    /// The k in exp(i k θ).
    pub fourier: i32,
}

/// Names of the polynomial variables in exponent order.
pub const POLY_VARS: [&str; 5] = ["x", "y", "px", "py", "ptheta"];

impl FourierMonomial {
    pub const ONE: Self = Self { exponents: [0; 5], fourier: 0 };

    pub fn new(exponents: [u32; 5], fourier: i32) -> Self {
        Self { exponents, fourier }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents;
        for (e, o) in exponents.iter_mut().zip(other.exponents) {
            *e += o;
        }
        Self { exponents, fourier: self.fourier + other.fourier }
    }
}

// Graded lexicographic on the exponents, ties broken by Fourier index.
impl Ord for FourierMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
            .then_with(|| self.fourier.cmp(&other.fourier))
    }
}

impl PartialOrd for FourierMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite sum of [`FourierMonomial`]s with [`RationalComplex`] coefficients.
///
/// Terms are kept in canonical form: sorted by the monomial order with no
/// zero coefficients, so two observables are equal iff their representations
/// are identical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Observable {
    terms: BTreeMap<FourierMonomial, RationalComplex>,
}

impl Observable {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RationalComplex) -> Self {
        Self::term(FourierMonomial::ONE, c)
    }

    pub fn rational(q: BigRational) -> Self {
        Self::constant(RationalComplex::real(q))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(RationalComplex::from_int(n))
    }

    pub fn term(monomial: FourierMonomial, coeff: RationalComplex) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Self { terms }
    }

    /// The coordinate function `v`. For θ, which only enters through Fourier
    /// modes, use [`Observable::fourier`] instead.
    pub fn var(v: Var) -> Self {
        let slot = v.slot().expect("theta is not a polynomial variable; use Observable::fourier");
        let mut exponents = [0; 5];
        exponents[slot] = 1;
        Self::term(FourierMonomial::new(exponents, 0), RationalComplex::one())
    }

    /// exp(i k θ).
    pub fn fourier(k: i32) -> Self {
        Self::term(FourierMonomial::new([0; 5], k), RationalComplex::one())
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }
    pub fn y() -> Self {
        Self::var(Var::Y)
    }
    pub fn px() -> Self {
        Self::var(Var::Px)
    }
    pub fn py() -> Self {
        Self::var(Var::Py)
    }
    pub fn ptheta() -> Self {
        Self::var(Var::Ptheta)
    }

    /// Builds an observable from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (FourierMonomial, RationalComplex)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.accumulate(m, &c);
        }
        out
    }

    fn accumulate(&mut self, monomial: FourierMonomial, coeff: &RationalComplex) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FourierMonomial, &RationalComplex)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &FourierMonomial) -> Option<&RationalComplex> {
        self.terms.get(monomial)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True iff the observable has no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the observable is real-valued on real phase space.
    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn scale(&self, c: &RationalComplex) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn scale_real(&self, q: &BigRational) -> Self {
        self.scale(&RationalComplex::real(q.clone()))
    }

    /// Complex conjugation on real phase space: c → c̄ and exp(ikθ) → exp(−ikθ).
    pub fn conjugate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (FourierMonomial { fourier: -m.fourier, ..*m }, c.conj())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::int(1);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        match v.slot() {
            Some(slot) => {
                for (m, c) in &self.terms {
                    let e = m.exponents[slot];
                    if e == 0 {
                        continue;
                    }
                    let mut dm = *m;
                    dm.exponents[slot] -= 1;
                    out.accumulate(dm, &c.scale_real(&BigRational::from_integer(e.into())));
                }
            }
            None => {
                for (m, c) in &self.terms {
                    if m.fourier == 0 {
                        continue;
                    }
                    let ik = RationalComplex::imag(BigRational::from_integer(m.fourier.into()));
                    out.accumulate(*m, &(c * &ik));
                }
            }
        }
        out
    }

    /// Canonical Poisson bracket over the pairs (x, px), (y, py), (θ, pθ).
    pub fn poisson_bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (q, p) in Var::PAIRS {
            let lhs = &self.partial_derivative(q) * &other.partial_derivative(p);
            let rhs = &self.partial_derivative(p) * &other.partial_derivative(q);
            out = &out + &(&lhs - &rhs);
        }
        out
    }

    /// Floating-point value at `state`.
    pub fn evaluate(&self, state: &PhaseState) -> Complex<f64> {
        self.compile().evaluate(state)
    }

    /// Exact value at a rational state. Fourier modes are evaluated exactly
    /// only at θ = 0; use [`Observable::evaluate_exact_at_angle`] otherwise.
    pub fn evaluate_exact(&self, state: &PhaseState<BigRational>) -> Result<RationalComplex> {
        if !state.theta.is_zero() && self.terms.keys().any(|m| m.fourier != 0) {
            return Err(Error::NotExact(format!(
                "exp(i k theta) at theta = {} (supply cos/sin explicitly)",
                state.theta
            )));
        }
        Ok(self.evaluate_with_unit(state, &RationalComplex::one()))
    }

    /// Exact value with θ given through a rational point (cos θ, sin θ) on
    /// the unit circle; `state.theta` is ignored.
    pub fn evaluate_exact_at_angle(
        &self,
        state: &PhaseState<BigRational>,
        cos: &BigRational,
        sin: &BigRational,
    ) -> Result<RationalComplex> {
        if cos * cos + sin * sin != BigRational::one() {
            return Err(Error::Domain(format!("({cos}, {sin}) is not on the unit circle")));
        }
        Ok(self.evaluate_with_unit(state, &RationalComplex::new(cos.clone(), sin.clone())))
    }

    fn evaluate_with_unit(&self, state: &PhaseState<BigRational>, unit: &RationalComplex) -> RationalComplex {
        let coords = [&state.x, &state.y, &state.px, &state.py, &state.ptheta];
        let mut total = RationalComplex::zero();
        for (m, c) in &self.terms {
            let mut poly = BigRational::one();
            for (base, &e) in coords.iter().zip(&m.exponents) {
                if e > 0 {
                    poly *= num::pow((*base).clone(), e as usize);
                }
            }
            let mut term = c.scale_real(&poly);
            if m.fourier != 0 {
                term = &term * &unit.powi(m.fourier as i64);
            }
            total += &term;
        }
        total
    }

    /// Pre-converted float form for repeated evaluation.
    pub fn compile(&self) -> CompiledObservable {
        CompiledObservable {
            terms: self.terms.iter().map(|(m, c)| (c.to_complex64(), m.exponents, m.fourier)).collect(),
        }
    }

    /// Pairs exp(±ikθ) into cos(kθ)/sin(kθ) terms for display and reality
    /// checks: `c₊ exp(ikθ) + c₋ exp(−ikθ) = (c₊ + c₋) cos kθ + i(c₊ − c₋) sin kθ`.
    pub fn trig_form(&self) -> Vec<TrigTerm> {
        let mut grouped: BTreeMap<([u32; 5], u32), (RationalComplex, RationalComplex)> = BTreeMap::new();
        for (m, c) in &self.terms {
            let harmonic = m.fourier.unsigned_abs();
            let entry = grouped.entry((m.exponents, harmonic)).or_default();
            match m.fourier.cmp(&0) {
                Ordering::Equal => entry.0 += c,
                Ordering::Greater => {
                    entry.0 += c;
                    entry.1 += &(c * &RationalComplex::i());
                }
                Ordering::Less => {
                    entry.0 += c;
                    entry.1 += &-&(c * &RationalComplex::i());
                }
            }
        }
        grouped
            .into_iter()
            .map(|((exponents, harmonic), (cos, sin))| TrigTerm { exponents, harmonic, cos, sin })
            .filter(|t| !(t.cos.is_zero() && t.sin.is_zero()))
            .collect()
    }
}

/// `x^a … pθ^e · (cos·cos(kθ) + sin·sin(kθ))`, with `sin` zero when k = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigTerm {
    pub exponents: [u32; 5],
    pub harmonic: u32,
    pub cos: RationalComplex,
    pub sin: RationalComplex,
}

impl TrigTerm {
    pub fn is_real(&self) -> bool {
        self.cos.is_real() && self.sin.is_real()
    }
}

/// Float coefficients ready for fast repeated evaluation along trajectories.
#[derive(Debug, Clone)]
pub struct CompiledObservable {
    terms: Vec<(Complex<f64>, [u32; 5], i32)>,
}

impl CompiledObservable {
    pub fn evaluate(&self, state: &PhaseState) -> Complex<f64> {
        let coords = [state.x, state.y, state.px, state.py, state.ptheta];
        self.terms
            .iter()
            .map(|(c, exps, k)| {
                let poly: f64 = coords.iter().zip(exps).map(|(b, &e)| b.powi(e as i32)).product();
                let phase = if *k == 0 {
                    Complex::new(1.0, 0.0)
                } else {
                    let a = *k as f64 * state.theta;
                    Complex::new(a.cos(), a.sin())
                };
                c * poly * phase
            })
            .sum()
    }
}

impl Add for &Observable {
    type Output = Observable;
    fn add(self, rhs: &Observable) -> Observable {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c);
        }
        out
    }
}

impl Sub for &Observable {
    type Output = Observable;
    fn sub(self, rhs: &Observable) -> Observable {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, &-c);
        }
        out
    }
}

impl Mul for &Observable {
    type Output = Observable;
    fn mul(self, rhs: &Observable) -> Observable {
        let mut out = Observable::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.accumulate(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Observable {
    type Output = Observable;
    fn neg(self) -> Observable {
        Observable { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Observable {
            type Output = Observable;
            fn $method(self, rhs: Observable) -> Observable {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Observable> for Observable {
            type Output = Observable;
            fn $method(self, rhs: &Observable) -> Observable {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Observable {
    type Output = Observable;
    fn neg(self) -> Observable {
        -&self
    }
}

/// Free-function form of [`Observable::poisson_bracket`].
pub fn poisson_bracket(a: &Observable, b: &Observable) -> Observable {
    a.poisson_bracket(b)
}

/// Integer helper used by builders.
pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational;

    fn st(v: [i64; 6]) -> PhaseState<BigRational> {
        PhaseState::from_array(v.map(int))
    }

    #[test]
    fn additive_inverse_is_zero() {
        let x = Observable::x();
        assert!((&x + &(-&x)).is_zero());
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn derivatives() {
        let x2 = Observable::x().pow(2);
        assert_eq!(x2.partial_derivative(Var::X), Observable::x().scale_real(&int(2)));
        let e3 = Observable::fourier(3);
        assert_eq!(e3.partial_derivative(Var::Theta), e3.scale(&RationalComplex::imag(int(3))));
        let pt2 = Observable::ptheta().pow(2);
        assert_eq!(pt2.partial_derivative(Var::Ptheta), Observable::ptheta().scale_real(&int(2)));
        assert!(pt2.partial_derivative(Var::Theta).is_zero());
    }

    #[test]
    fn canonical_pairs() {
        let coord = |v: Var| match v {
            Var::Theta => None,
            other => Some(Observable::var(other)),
        };
        assert_eq!(Observable::x().poisson_bracket(&Observable::px()), Observable::int(1));
        for q in [Var::X, Var::Y] {
            for p in [Var::Px, Var::Py, Var::Ptheta] {
                let expected = if Var::PAIRS.contains(&(q, p)) { 1 } else { 0 };
                let b = coord(q).unwrap().poisson_bracket(&coord(p).unwrap());
                assert_eq!(b, Observable::int(expected), "{{{q:?}, {p:?}}}");
            }
        }
        // {e^{iθ}, pθ} = i e^{iθ}
        let b = Observable::fourier(1).poisson_bracket(&Observable::ptheta());
        assert_eq!(b, Observable::fourier(1).scale(&RationalComplex::i()));
    }

    #[test]
    fn exact_evaluation_requires_exact_angle() {
        let e = &Observable::fourier(1) + &Observable::x();
        let mut s = st([2, 0, 0, 0, 0, 0]);
        assert_eq!(e.evaluate_exact(&s).unwrap(), RationalComplex::from_int(3));
        s.theta = rational(1, 2);
        assert!(e.evaluate_exact(&s).is_err());
        let v = e.evaluate_exact_at_angle(&s, &rational(3, 5), &rational(4, 5)).unwrap();
        assert_eq!(v, RationalComplex::new(rational(13, 5), rational(4, 5)));
        assert!(e.evaluate_exact_at_angle(&s, &rational(1, 2), &rational(1, 2)).is_err());
    }

    #[test]
    fn trig_form_of_cosine() {
        let half = RationalComplex::real(rational(1, 2));
        let cos = (&Observable::fourier(2) + &Observable::fourier(-2)).scale(&half);
        let t = cos.trig_form();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].harmonic, 2);
        assert_eq!(t[0].cos, RationalComplex::one());
        assert!(t[0].sin.is_zero());
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = FourierMonomial::new([0, 0, 0, 0, 2], 0);
        let b = FourierMonomial::new([1, 0, 0, 0, 0], 5);
        let c = FourierMonomial::new([1, 0, 0, 0, 0], -1);
        assert!(b < a);
        assert!(c < b);
        assert!(FourierMonomial::ONE < c);
    }
}
