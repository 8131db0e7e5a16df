use std::f64::consts::TAU;

use rotor_core::dynamics::{analytic_flow, recurrence_error, simulate, verlet_step, Method, SimulationOptions};
use rotor_core::model::{rational, OscillatorVariant, Parameters, PhaseState, PotentialSpec, Real};
use rotor_core::superint::{conservation_scan, resonance_detect_exact};

fn fig2() -> (Parameters, PhaseState) {
    let params =
        Parameters::from_rod(1, Parameters::omega_from_spring(&Real::from(1), &Real::from(1)).unwrap(), 1).unwrap();
    (params, PhaseState { x: 1.0, y: 0.0, theta: 0.0, px: 0.0, py: 0.5, ptheta: 1.0 / 12.0 })
}

#[test]
fn fig2_orbit_closes() {
    let (params, s0) = fig2();
    let pot = PotentialSpec::isotropic(&params);
    let analytic = simulate(&pot, &params, &s0, &SimulationOptions::new(Method::Analytic, 1e-3, TAU)).unwrap();
    assert!(recurrence_error(&analytic, TAU).unwrap() <= 1e-12);
    assert!((analytic.theta_advance(TAU).unwrap() - TAU).abs() <= 1e-12);
    let verlet = simulate(&pot, &params, &s0, &SimulationOptions::new(Method::Verlet, 1e-3, TAU)).unwrap();
    assert!(recurrence_error(&verlet, TAU).unwrap() <= 1e-5);
}

#[test]
fn verlet_is_second_order() {
    let (params, s0) = fig2();
    let pot = PotentialSpec::isotropic(&params);
    let exact = analytic_flow(&params, OscillatorVariant::Isotropic, &s0, TAU);
    let error = |dt: f64| {
        let traj = simulate(&pot, &params, &s0, &SimulationOptions::new(Method::Verlet, dt, TAU)).unwrap();
        let s = traj.states.last().unwrap();
        let d = [s.x - exact.x, s.y - exact.y, s.px - exact.px, s.py - exact.py];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    };
    for dt in [2e-2, 1e-2, 5e-3] {
        let ratio = error(dt) / error(dt / 2.0);
        assert!((3.6..=4.4).contains(&ratio), "dt {dt}: ratio {ratio}");
    }
}

#[test]
fn ptheta_is_bit_exact_under_verlet() {
    let params =
        Parameters::from_rod(1, 1, 1).unwrap().with_gravity(rational(49, 5)).unwrap().with_anisotropy(3, 5).unwrap();
    let c = |v: f64| Real::Float(v);
    let pots = [
        PotentialSpec::isotropic(&params),
        PotentialSpec::gravity(&params),
        PotentialSpec::anisotropic(&params),
        PotentialSpec::SwI { alpha: c(1.0), beta: c(0.1), gamma: c(0.2) },
        PotentialSpec::SwII { alpha: c(1.0), beta: c(0.1), gamma: c(0.3) },
        PotentialSpec::SwIII { alpha: c(-1.0), beta: c(0.05), gamma: c(0.05) },
        PotentialSpec::SwIV { alpha: c(0.5), beta: c(0.1), gamma: c(0.1) },
    ];
    let s0 = PhaseState { x: 1.0, y: 0.8, theta: 0.3, px: 0.1, py: -0.2, ptheta: 0.1234567 };
    for pot in &pots {
        let mut s = s0;
        for _ in 0..2000 {
            let next = verlet_step(pot, &params, &s, 1e-3).unwrap();
            assert_eq!(next.ptheta.to_bits(), s.ptheta.to_bits(), "{}", pot.name());
            s = next;
        }
    }
}

#[test]
fn anisotropic_lissajous_closes() {
    let params = Parameters::from_rod(1, 1, 1).unwrap().with_anisotropy(3, 5).unwrap();
    let s0 = PhaseState { x: 1.0, y: 0.5, theta: 0.0, px: 0.0, py: 1.0, ptheta: 1.0 / 12.0 };
    let opts = SimulationOptions::new(Method::Verlet, 1e-4, TAU);
    let traj = simulate(&PotentialSpec::anisotropic(&params), &params, &s0, &opts).unwrap();
    assert!(recurrence_error(&traj, TAU).unwrap() <= 1e-5);
}

#[test]
fn singular_start_is_an_error() {
    let params = Parameters::from_rod(1, 1, 1).unwrap();
    let pot = PotentialSpec::SwI { alpha: Real::from(1), beta: Real::from(1), gamma: Real::from(1) };
    let s0 = PhaseState { x: 0.0, y: 1.0, theta: 0.0, px: 0.0, py: 0.0, ptheta: 0.0 };
    let err = simulate(&pot, &params, &s0, &SimulationOptions::new(Method::Verlet, 1e-3, 1.0)).unwrap_err();
    assert!(err.to_string().contains("x = 0"), "{err}");
}

fn scan_state(ptheta: num::BigRational) -> PhaseState<num::BigRational> {
    PhaseState::new(rational(1, 1), rational(1, 2), rational(0, 1), rational(1, 3), rational(1, 5), ptheta)
}

#[test]
fn resonant_k_is_conserved_and_others_rotate() {
    let params = Parameters::from_rod(1, 1, 1).unwrap();
    let candidates = [(1, 1), (1, 2), (2, 1), (1, -1)];
    let scan =
        conservation_scan(&params, OscillatorVariant::Isotropic, &scan_state(rational(1, 12)), &candidates, 10.0 * TAU)
            .unwrap();
    let k11 = &scan[&(1, 1)];
    assert!(k11.resonant && k11.drift <= 1e-10 * k11.initial_modulus.max(1.0));
    let k12 = &scan[&(1, 2)];
    assert!(!k12.resonant);
    // K(t) = K(0) e^{i (m w - n Omega) t}; over ten periods the phase passes pi.
    assert!((k12.drift - 2.0 * k12.initial_modulus).abs() <= 1e-3 * k12.initial_modulus);
    for e in scan.values() {
        assert!(e.modulus_drift <= 1e-10 * e.initial_modulus.max(1.0));
    }

    let scan =
        conservation_scan(&params, OscillatorVariant::Isotropic, &scan_state(rational(1, 6)), &candidates, 10.0 * TAU)
            .unwrap();
    assert!(scan[&(2, 1)].resonant && scan[&(2, 1)].drift <= 1e-10 * scan[&(2, 1)].initial_modulus.max(1.0));
    assert!(!scan[&(1, 1)].resonant && scan[&(1, 1)].drift > 0.1 * scan[&(1, 1)].initial_modulus);
}

#[test]
fn scan_flag_agrees_with_exact_resonance_detection() {
    let params = Parameters::from_rod(1, rational(3, 2), 1).unwrap();
    let exact = params.exact().unwrap();
    let candidates: Vec<(i64, i64)> = rotor_core::superint::k_tower_indices();
    for (p, q) in [(1, 8), (1, 16), (3, 16), (1, 4), (-1, 8), (5, 7)] {
        let s0 = scan_state(rational(p, q));
        let scan = conservation_scan(&params, OscillatorVariant::Isotropic, &s0, &candidates, TAU).unwrap();
        for (&(m, n), entry) in &scan {
            let capital = &s0.ptheta / &exact.inertia;
            let r = resonance_detect_exact(&capital, &exact.omega, n.unsigned_abs(), &rational(0, 1)).unwrap();
            let exact_match = r.found && rational(r.m, r.n) == rational(m, n);
            assert_eq!(entry.resonant, exact_match, "ptheta {p}/{q}, K({m},{n})");
        }
    }
}

#[test]
fn gravity_flow_conserves_primed_integrals() {
    let params = Parameters::from_rod(1, 1, 1).unwrap().with_gravity(rational(49, 5)).unwrap();
    let s0 = PhaseState { x: 1.0, y: 0.0, theta: 0.0, px: 0.0, py: 0.5, ptheta: 1.0 / 12.0 };
    let opts = SimulationOptions::new(Method::Analytic, 1e-2, 2.0 * TAU).track(["H", "L", "L'", "G1'", "G2'", "P_1_1"]);
    let traj = simulate(&PotentialSpec::gravity(&params), &params, &s0, &opts).unwrap();
    let report = rotor_core::dynamics::drift_report(&traj).unwrap();
    for name in ["H", "L'", "G1'", "G2'", "P_1_1"] {
        assert!(report.get(name).unwrap().max_rel_deviation <= 1e-12, "{name}");
    }
    assert!(report.get("L").unwrap().max_abs_deviation > 1.0);
}
