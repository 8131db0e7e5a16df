//! Shared generators and brute-force oracles for the integration tests and
//! the acceptance harness.
#![allow(dead_code)]

use num::{BigInt, BigRational, Integer, Signed, Zero};
use rand::Rng;
use rotor_core::algebra::{FourierMonomial, Observable, RationalComplex};
use rotor_core::model::{rational, ExactParameters};

/// A random small rational p/q with p in [lo, hi], q in [1, max_q].
pub fn small_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_q: i64) -> BigRational {
    rational(rng.random_range(lo..=hi), rng.random_range(1..=max_q))
}

pub fn positive_rational<R: Rng>(rng: &mut R) -> BigRational {
    small_rational(rng, 1, 12, 7)
}

pub fn random_parameters<R: Rng>(rng: &mut R) -> ExactParameters {
    ExactParameters {
        mass: positive_rational(rng),
        omega: positive_rational(rng),
        inertia: positive_rational(rng),
        gravity: positive_rational(rng),
    }
}

/// Up to `max_terms` terms of total degree ≤ 4 with Fourier index in [-3, 3]
/// and small complex rational coefficients.
pub fn random_observable<R: Rng>(rng: &mut R, max_terms: usize) -> Observable {
    let n = rng.random_range(1..=max_terms);
    Observable::from_terms((0..n).map(|_| {
        let mut exponents = [0u32; 5];
        for _ in 0..rng.random_range(0..=4) {
            exponents[rng.random_range(0..5)] += 1;
        }
        let monomial = FourierMonomial::new(exponents, rng.random_range(-3..=3));
        let coeff = RationalComplex::new(small_rational(rng, -5, 5, 4), small_rational(rng, -5, 5, 4));
        (monomial, coeff)
    }))
}

/// Exact rank as the size of the largest nonzero minor, by cofactor
/// expansion. Only for small matrices.
pub fn rank_by_minors(rows: &[Vec<BigRational>]) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    for size in (1..=n_rows.min(n_cols)).rev() {
        for rs in subsets(n_rows, size) {
            for cs in subsets(n_cols, size) {
                let minor: Vec<Vec<BigRational>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                if !determinant(&minor).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with_last = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut out = subsets(n - 1, k);
    out.extend(with_last);
    out
}

/// Laplace expansion along the first row.
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    match m.len() {
        0 => BigRational::from_integer(1.into()),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&j| !m[0][j].is_zero())
            .map(|j| {
                let sub: Vec<Vec<BigRational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][j] * determinant(&sub);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .fold(BigRational::zero(), |a, b| a + b),
    }
}

/// Brute-force best m/n ≈ ratio over 1 ≤ |n| ≤ max_den, m ≥ 1, lowest terms;
/// the first (smallest |n|, positive n first) strict minimum wins.
pub fn brute_force_ratio(ratio: &BigRational, max_den: u64) -> (BigInt, BigInt) {
    let mut best: Option<(BigRational, BigInt, BigInt)> = None;
    for abs_n in 1..=max_den as i64 {
        for n in [abs_n, -abs_n] {
            let n_big = BigInt::from(n);
            let target = ratio * BigRational::from_integer(n_big.clone());
            let lo = target.floor().to_integer();
            for m in [lo.clone(), lo + 1] {
                let m = if m < BigInt::from(1) { BigInt::from(1) } else { m };
                let err = (ratio - BigRational::new(m.clone(), n_big.clone())).abs();
                if best.as_ref().is_none_or(|(e, _, _)| &err < e) {
                    let g = m.gcd(&n_big);
                    best = Some((err, &m / &g, &n_big / &g));
                }
            }
        }
    }
    let (_, m, n) = best.expect("max_den ≥ 1");
    (m, n)
}
