//! Uniform gravity breaks rotational symmetry, {H, L} = M g x, but the
//! integrals recentred at y' = y + g/w^2 survive.

use std::f64::consts::TAU;

use rotor_core::algebra::{Observable, ObservableBuilder};
use rotor_core::dynamics::{drift_report, simulate, Method, SimulationOptions};
use rotor_core::model::{rational, OscillatorVariant, Parameters, PhaseState, PotentialSpec};

fn main() -> rotor_core::Result<()> {
    let params = Parameters::from_rod(1, 1, 1)?.with_gravity(rational(49, 5))?;
    let b = ObservableBuilder::new(params.exact()?, OscillatorVariant::Gravity);
    let h = b.f1();

    println!("{{H, L}}   = {}", h.poisson_bracket(&b.angular_momentum()));
    println!("M g x     = {}", Observable::x().scale_real(&rational(49, 5)));
    println!("{{H, L'}}  = {}", h.poisson_bracket(&b.angular_momentum_prime()));
    println!("{{H, G1'}} = {}", h.poisson_bracket(&b.g1_prime()));
    println!("{{H, G2'}} = {}", h.poisson_bracket(&b.g2_prime()));
    println!("Z' = {}", b.z_prime());
    println!();

    let s0 = PhaseState { x: 1.0, y: 0.0, theta: 0.0, px: 0.0, py: 0.5, ptheta: 1.0 / 12.0 };
    let options =
        SimulationOptions::new(Method::Analytic, 1e-3, 3.0 * TAU).track(["H", "L", "L'", "G1'", "G2'", "P_1_1"]);
    let traj = simulate(&PotentialSpec::gravity(&params), &params, &s0, &options)?;
    print!("{}", drift_report(&traj)?);
    Ok(())
}
