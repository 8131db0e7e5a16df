//! Resonance detection for Omega/w, and the conservation scan that shows K(m, n)
//! is conserved exactly on resonant level sets.

use std::f64::consts::{SQRT_2, TAU};

use rotor_core::model::{rational, OscillatorVariant, Parameters, PhaseState};
use rotor_core::superint::{conservation_scan, resonance_detect};

fn main() -> rotor_core::Result<()> {
    for (capital, max_den, tol) in [(1.0, 10, 1e-9), (0.75, 10, 1e-9), (0.6, 10, 1e-9), (SQRT_2, 100, 1e-6)] {
        let r = resonance_detect(capital, 1.0, max_den, tol)?;
        println!("Omega/w = {capital:<18} -> {}/{}  error {:.3e}  found {}", r.m, r.n, r.abs_error, r.found);
    }
    println!();

    let params = Parameters::from_rod(1, 1, 1)?;
    let candidates = [(1, 1), (1, 2), (2, 1), (3, -1)];
    for ptheta in [rational(1, 12), rational(1, 6)] {
        println!("ptheta = {ptheta}");
        let s0 =
            PhaseState::new(rational(1, 1), rational(1, 2), rational(0, 1), rational(1, 3), rational(1, 5), ptheta);
        let scan = conservation_scan(&params, OscillatorVariant::Isotropic, &s0, &candidates, 10.0 * TAU)?;
        for ((m, n), e) in scan {
            println!(
                "  K({m},{n:>2}) resonant {:<5} |K(0)| {:.4}  drift {:.3e}  |K| drift {:.3e}",
                e.resonant, e.initial_modulus, e.drift, e.modulus_drift
            );
        }
    }
    Ok(())
}
