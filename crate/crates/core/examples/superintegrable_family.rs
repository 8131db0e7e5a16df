//! The four Smorodinsky-Winternitz potentials with an attached rotor, under
//! velocity Verlet: bounded energy error and bit-exact ptheta.

use rotor_core::dynamics::{drift_report, simulate, Method, SimulationOptions};
use rotor_core::model::{Parameters, PhaseState, PotentialSpec, Real};

fn main() -> rotor_core::Result<()> {
    let params = Parameters::new(1, 1, Real::Exact(rotor_core::model::rational(1, 12)))?;
    let c = |v: f64| Real::Float(v);
    let family = [
        PotentialSpec::SwI { alpha: c(1.0), beta: c(0.1), gamma: c(0.2) },
        PotentialSpec::SwII { alpha: c(1.0), beta: c(0.1), gamma: c(0.3) },
        PotentialSpec::SwIII { alpha: c(-1.0), beta: c(0.05), gamma: c(0.05) },
        PotentialSpec::SwIV { alpha: c(0.5), beta: c(0.1), gamma: c(0.1) },
    ];
    let s0 = PhaseState { x: 1.0, y: 0.8, theta: 0.0, px: 0.1, py: -0.2, ptheta: 0.3 };
    for pot in &family {
        let options = SimulationOptions::new(Method::Verlet, 1e-4, 2.0).track(["H", "ptheta"]);
        match simulate(pot, &params, &s0, &options) {
            Ok(traj) => {
                let report = drift_report(&traj)?;
                let h = report.get("H").expect("tracked");
                let pt = report.get("ptheta").expect("tracked");
                println!(
                    "{:<4} H(0) = {:+.6}  max rel H drift {:.2e}  ptheta drift {:e}",
                    pot.name(),
                    h.initial.re,
                    h.max_rel_deviation,
                    pt.max_abs_deviation
                );
            }
            Err(e) => println!("{:<4} stopped: {e}", pot.name()),
        }
    }
    Ok(())
}
