//! Resonance detection: the best rational m/n ≈ Ω/ω with |n| bounded.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResonanceResult {
    pub capital_omega: f64,
    pub omega: f64,
    pub m: i64,
    pub n: i64,
    pub max_denominator: u64,
    pub abs_error: f64,
    pub found: bool,
}

/// Best approximation m/n of Ω/ω with m ≥ 1 and 1 ≤ |n| ≤ `max_denominator`;
/// `found` iff |Ω/ω − m/n| ≤ `tol`.
///
/// Both inputs are converted to exact rationals before any arithmetic, so the
/// comparison against `tol` is not affected by rounding in the ratio.
pub fn resonance_detect(capital_omega: f64, omega: f64, max_denominator: u64, tol: f64) -> Result<ResonanceResult> {
    if !capital_omega.is_finite() {
        return Err(Error::Domain(format!("rotor frequency must be finite, got {capital_omega}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("tolerance must be nonnegative, got {tol}")));
    }
    let exact = |v: f64| BigRational::from_float(v).expect("finite");
    let mut result = resonance_detect_exact(&exact(capital_omega), &exact(omega), max_denominator, &exact(tol))?;
    result.capital_omega = capital_omega;
    result.omega = omega;
    Ok(result)
}

/// Exact-input form of [`resonance_detect`].
pub fn resonance_detect_exact(
    capital_omega: &BigRational,
    omega: &BigRational,
    max_denominator: u64,
    tol: &BigRational,
) -> Result<ResonanceResult> {
    if !omega.is_positive() {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    if max_denominator == 0 {
        return Err(Error::Domain("max_denominator must be at least 1".into()));
    }
    let ratio = capital_omega / omega;
    let (m, n) = best_ratio(&ratio, max_denominator);
    let error = (&ratio - BigRational::new(m.clone(), n.clone())).abs();
    let to_i64 =
        |v: &BigInt| v.to_i64().ok_or_else(|| Error::Domain(format!("ratio numerator {v} does not fit in 64 bits")));
    Ok(ResonanceResult {
        capital_omega: capital_omega.to_f64().unwrap_or(f64::NAN),
        omega: omega.to_f64().unwrap_or(f64::NAN),
        m: to_i64(&m)?,
        n: to_i64(&n)?,
        max_denominator,
        abs_error: error.to_f64().unwrap_or(f64::INFINITY),
        found: &error <= tol,
    })
}

/// (m, n) with m ≥ 1, n ≠ 0 of sign(ratio), gcd = 1, minimizing |ratio − m/n|
/// over 1 ≤ |n| ≤ `max_den`; ties go to the smaller |n|.
pub fn best_ratio(ratio: &BigRational, max_den: u64) -> (BigInt, BigInt) {
    let bound = BigInt::from(max_den);
    let (h, k) = best_positive(&ratio.abs(), &bound);
    // 0/1 is excluded since m ≥ 1; 1/max_den is then the closest admissible.
    let (h, k) = if h.is_zero() { (BigInt::one(), bound) } else { (h, k) };
    if ratio.is_negative() {
        (h, -k)
    } else {
        (h, k)
    }
}

/// Best rational approximation with denominator ≤ `bound` of a nonnegative
/// rational, from its continued-fraction convergents and the final
/// semiconvergent.
fn best_positive(target: &BigRational, bound: &BigInt) -> (BigInt, BigInt) {
    let (mut h_prev, mut k_prev) = (BigInt::zero(), BigInt::one());
    let (mut h, mut k) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if &k_next > bound {
            let t = (bound - &k_prev).div_floor(&k);
            let semi = (&t * &h + &h_prev, &t * &k + &k_prev);
            let err = |(p, q): &(BigInt, BigInt)| (target - BigRational::new(p.clone(), q.clone())).abs();
            let conv = (h, k);
            return if t.is_positive() && err(&semi) < err(&conv) { semi } else { conv };
        }
        (h_prev, k_prev, h, k) = (h, k, h_next, k_next);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return (h, k);
        }
        rest = frac.recip();
    }
}
