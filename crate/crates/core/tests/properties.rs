mod common;

use num::{BigRational, ToPrimitive};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rotor_core::algebra::{FourierMonomial, Observable, RationalComplex, Var};
use rotor_core::model::{
    hamiltonian_value, hamiltonian_value_exact, rational, ExactParameters, OscillatorVariant, Parameters, PhaseState,
    PotentialSpec, Real,
};
use rotor_core::superint::{
    best_ratio, exact_rank, gradient_matrix, gradient_matrix_exact, rank, resonance_detect_exact, GradientMatrix,
    RankMode,
};

fn coefficient() -> impl Strategy<Value = RationalComplex> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4)
        .prop_map(|(a, b, c, d)| RationalComplex::new(rational(a, b), rational(c, d)))
}

fn monomial() -> impl Strategy<Value = FourierMonomial> {
    (prop::array::uniform5(0u32..=2), -3i32..=3)
        .prop_filter("total degree at most 4", |(e, _)| e.iter().sum::<u32>() <= 4)
        .prop_map(|(e, k)| FourierMonomial::new(e, k))
}

fn observable() -> impl Strategy<Value = Observable> {
    prop::collection::vec((monomial(), coefficient()), 0..4).prop_map(Observable::from_terms)
}

fn state() -> impl Strategy<Value = PhaseState> {
    prop::array::uniform6(-1.5f64..1.5).prop_map(PhaseState::from_array)
}

fn rational_state() -> impl Strategy<Value = PhaseState<BigRational>> {
    prop::array::uniform6((-6i64..=6, 1i64..=5)).prop_map(PhaseState::from_ratios)
}

fn close(a: num::complex::Complex<f64>, b: num::complex::Complex<f64>, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_is_antisymmetric(a in observable(), b in observable()) {
        prop_assert_eq!(a.poisson_bracket(&b), -b.poisson_bracket(&a));
    }

    #[test]
    fn bracket_is_a_derivation(a in observable(), b in observable(), c in observable()) {
        let lhs = a.poisson_bracket(&(&b * &c));
        let rhs = &a.poisson_bracket(&b) * &c + &b * &a.poisson_bracket(&c);
        prop_assert!((lhs - rhs).is_zero());
    }

    #[test]
    fn jacobi_identity(a in observable(), b in observable(), c in observable()) {
        let cyclic = a.poisson_bracket(&b.poisson_bracket(&c))
            + b.poisson_bracket(&c.poisson_bracket(&a))
            + c.poisson_bracket(&a.poisson_bracket(&b));
        prop_assert!(cyclic.is_zero());
    }

    #[test]
    fn text_round_trip(a in observable()) {
        let parsed: Observable = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in observable(), b in observable(), s in state()) {
        let (va, vb) = (a.evaluate(&s), b.evaluate(&s));
        prop_assert!(close((&a * &b).evaluate(&s), va * vb, 1e-12));
        prop_assert!(close((&a + &b).evaluate(&s), va + vb, 1e-12));
        prop_assert!(close(a.conjugate().evaluate(&s), va.conj(), 1e-12));
        prop_assert!(close(a.compile().evaluate(&s), va, 1e-12));
    }

    #[test]
    fn conjugation_is_an_involution(a in observable(), b in observable()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), a.conjugate() * b.conjugate());
        prop_assert!((&a + &a.conjugate()).is_real());
    }

    #[test]
    fn derivatives_match_finite_differences(a in observable(), s in state()) {
        let h = 1e-5;
        for v in Var::ALL {
            let shifted = |d: f64| {
                let mut arr = s.to_array();
                arr[v as usize] += d;
                a.evaluate(&PhaseState::from_array(arr))
            };
            let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
            let exact = a.partial_derivative(v).evaluate(&s);
            prop_assert!(close(exact, fd, 1e-8), "d/d{}: {} vs {}", v.name(), exact, fd);
        }
    }

    #[test]
    fn exact_evaluation_agrees_with_float(a in observable(), s in rational_state()) {
        let mut s = s;
        s.theta = rational(0, 1);
        let exact = a.evaluate_exact(&s).unwrap().to_complex64();
        prop_assert!(close(exact, a.evaluate(&s.to_f64()), 1e-12));
    }

    #[test]
    fn hamiltonian_is_theta_invariant(s in state(), delta in -10.0f64..10.0) {
        let params = Parameters::from_rod(1, 1, 1).unwrap().with_gravity(rational(49, 5)).unwrap()
            .with_anisotropy(3, 5).unwrap();
        let mut rotated = s;
        rotated.theta += delta;
        for pot in [PotentialSpec::isotropic(&params), PotentialSpec::gravity(&params), PotentialSpec::anisotropic(&params)] {
            prop_assert_eq!(hamiltonian_value(&params, &pot, &s).unwrap(), hamiltonian_value(&params, &pot, &rotated).unwrap());
        }
    }

    #[test]
    fn exact_hamiltonian_matches_float(s in rational_state()) {
        let params = Parameters::from_rod(rational(3, 2), rational(2, 3), 1).unwrap().with_gravity(rational(1, 2)).unwrap();
        for pot in [PotentialSpec::isotropic(&params), PotentialSpec::gravity(&params)] {
            let exact = hamiltonian_value_exact(&params, &pot, &s).unwrap().to_f64().unwrap();
            let float = hamiltonian_value(&params, &pot, &s.to_f64()).unwrap();
            prop_assert!((exact - float).abs() <= 1e-12 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn rank_ignores_row_order_and_scaling(s in rational_state(), scale in 1i64..=7, seed in any::<u64>()) {
        let mut s = s;
        s.theta = rational(0, 1);
        let b = rotor_core::algebra::ObservableBuilder::new(ExactParameters::unit_rod(), OscillatorVariant::Isotropic);
        let set = vec![b.f1(), b.f2(), b.g1(), b.g2(), b.p(1, 1).unwrap(), b.angular_momentum()];
        let GradientMatrix::Exact(rows) = gradient_matrix_exact(&set, &s).unwrap() else { unreachable!() };
        let base = exact_rank(&rows);
        prop_assert_eq!(base, common::rank_by_minors(&rows));

        let mut permuted = rows.clone();
        permuted.rotate_left((seed % 6) as usize);
        permuted.swap(0, (seed / 6 % 6) as usize);
        for row in permuted.iter_mut().step_by(2) {
            for v in row.iter_mut() {
                *v *= rational(-scale, 3);
            }
        }
        prop_assert_eq!(exact_rank(&permuted), base);

        let float = rank(&gradient_matrix(&set, &s.to_f64()).unwrap(), RankMode::Floating, 1e-10).unwrap();
        prop_assert_eq!(float.rank, base);
    }

    #[test]
    fn resonance_matches_brute_force(p in -500i64..=500, q in 1i64..=300, max_den in 1u64..=120) {
        let ratio = rational(p, q);
        prop_assert_eq!(best_ratio(&ratio, max_den), common::brute_force_ratio(&ratio, max_den));
    }

    #[test]
    fn resonance_on_float_inputs_matches_brute_force(w in -8.0f64..8.0, max_den in 1u64..=200) {
        let ratio = BigRational::from_float(w).unwrap();
        prop_assert_eq!(best_ratio(&ratio, max_den), common::brute_force_ratio(&ratio, max_den));
    }

    #[test]
    fn exact_resonance_means_zero_error(m in 1i64..=9, n in 1i64..=9, w in 1i64..=5) {
        let omega = rational(w, 1);
        let capital = rational(m, n) * &omega;
        let r = resonance_detect_exact(&capital, &omega, 9, &rational(0, 1)).unwrap();
        prop_assert!(r.found);
        prop_assert_eq!(rational(r.m, r.n), rational(m, n));
    }
}

#[test]
fn jacobi_on_seeded_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let [a, b, c] = std::array::from_fn(|_| common::random_observable(&mut rng, 3));
        let cyclic = a.poisson_bracket(&b.poisson_bracket(&c))
            + b.poisson_bracket(&c.poisson_bracket(&a))
            + c.poisson_bracket(&a.poisson_bracket(&b));
        assert!(cyclic.is_zero());
    }
}

#[test]
fn float_parameters_are_rejected_by_exact_algebra() {
    let params = Parameters::new(1, Real::Float(2f64.sqrt()), 1).unwrap();
    assert!(params.exact().is_err());
}
