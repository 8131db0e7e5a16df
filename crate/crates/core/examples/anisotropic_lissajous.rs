//! Anisotropic 3:5 oscillator: velocity Verlet closes the Lissajous figure at
//! the common period 2pi, and halving dt cuts the error by four.

use std::f64::consts::TAU;
use std::path::Path;

use rotor_core::cli::load_scenario;
use rotor_core::dynamics::{recurrence_error, simulate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/aniso_3_5.toml");
    let scenario = load_scenario(&path)?;
    let s0 = scenario.initial_state.as_ref().expect("initial state").to_f64();

    let mut previous = None;
    for dt in [4e-4, 2e-4, 1e-4] {
        let mut run = scenario.run.clone();
        run.dt = dt;
        let traj = simulate(&scenario.potential, &scenario.params, &s0, &run)?;
        let err = recurrence_error(&traj, TAU)?;
        let ratio = previous.map_or(String::new(), |p: f64| format!("  ratio {:.3}", p / err));
        println!("dt = {dt:.0e}  recurrence {err:.3e}{ratio}");
        previous = Some(err);
    }

    if let Some(out) = std::env::args().nth(1) {
        let traj = simulate(&scenario.potential, &scenario.params, &s0, &scenario.run)?;
        traj.write_csv(std::fs::File::create(&out)?)?;
        println!("wrote {out}");
    }
    Ok(())
}
