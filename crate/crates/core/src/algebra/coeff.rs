use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, Complex, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::parse_rational;

/// An exact complex number `re + im·i` with arbitrary-precision rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RationalComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn imag(im: BigRational) -> Self {
        Self { re: BigRational::zero(), im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn i() -> Self {
        Self::imag(BigRational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale_real(&self, q: &BigRational) -> Self {
        Self { re: &self.re * q, im: &self.im * q }
    }

    /// Integer power; negative exponents invert. Panics on `0^-n`.
    pub fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "inverse of zero");
        Self { re: &self.re / &norm, im: -&self.im / &norm }
    }

    pub fn to_complex64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Parses the `p/q+r/s i` form written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{text}` is not a rational-complex coefficient"));
        let body = text.trim().strip_suffix(" i").ok_or_else(bad)?;
        // The separator is the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let re = parse_rational(&body[..split])?;
        let im_text = &body[split..];
        let im = parse_rational(im_text.strip_prefix('+').unwrap_or(im_text))?;
        Ok(Self { re, im })
    }
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{} i", self.re, sign, self.im.abs())
    }
}

impl From<BigRational> for RationalComplex {
    fn from(q: BigRational) -> Self {
        Self::real(q)
    }
}

impl Add for &RationalComplex {
    type Output = RationalComplex;
    fn add(self, rhs: Self) -> RationalComplex {
        RationalComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &RationalComplex {
    type Output = RationalComplex;
    fn sub(self, rhs: Self) -> RationalComplex {
        RationalComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &RationalComplex {
    type Output = RationalComplex;
    fn mul(self, rhs: Self) -> RationalComplex {
        RationalComplex { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &RationalComplex {
    type Output = RationalComplex;
    fn neg(self) -> RationalComplex {
        RationalComplex { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&RationalComplex> for RationalComplex {
    fn add_assign(&mut self, rhs: &RationalComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}
