//! Deterministic text form of observables.
//!
//! Each term prints as
//!
//! ```text
//! 1/2+0 i * x^0 y^0 px^2 py^0 ptheta^0 * exp(i 0 theta)
//! ```
//!
//! and terms are joined by ` + ` in canonical order. The zero observable
//! prints as `0`. Parsing the printed form returns an identical observable.

use std::fmt;
use std::str::FromStr;

use super::coeff::RationalComplex;
use super::observable::{FourierMonomial, Observable, POLY_VARS};
use crate::error::{Error, Result};

impl fmt::Display for FourierMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, e)) in POLY_VARS.iter().zip(self.exponents).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{name}^{e}")?;
        }
        write!(f, " * exp(i {} theta)", self.fourier)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * {m}")?;
        }
        Ok(())
    }
}

fn parse_term(text: &str) -> Result<(FourierMonomial, RationalComplex)> {
    let bad = |why: &str| Error::Parse(format!("term `{text}`: {why}"));
    let mut parts = text.split(" * ");
    let (Some(coeff), Some(poly), Some(phase), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(bad("expected `coeff * monomial * exp(i k theta)`"));
    };
    let coeff = RationalComplex::parse(coeff)?;

    let mut exponents = [0u32; 5];
    let factors: Vec<&str> = poly.split(' ').collect();
    if factors.len() != POLY_VARS.len() {
        return Err(bad("expected five variable powers"));
    }
    for ((slot, factor), name) in exponents.iter_mut().zip(factors).zip(POLY_VARS) {
        let e = factor
            .strip_prefix(name)
            .and_then(|r| r.strip_prefix('^'))
            .ok_or_else(|| bad(&format!("expected `{name}^e`, got `{factor}`")))?;
        *slot = e.parse().map_err(|_| bad(&format!("bad exponent `{e}`")))?;
    }

    let k = phase
        .strip_prefix("exp(i ")
        .and_then(|r| r.strip_suffix(" theta)"))
        .ok_or_else(|| bad("expected `exp(i k theta)`"))?;
    let fourier = k.parse().map_err(|_| bad(&format!("bad Fourier index `{k}`")))?;
    Ok((FourierMonomial::new(exponents, fourier), coeff))
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Observable::zero());
        }
        let terms = text.split(" + ").map(parse_term).collect::<Result<Vec<_>>>()?;
        Ok(Observable::from_terms(terms))
    }
}
