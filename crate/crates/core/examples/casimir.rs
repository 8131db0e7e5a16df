//! Casimir identities, with and without gravity, for random rational parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotor_core::model::{rational, ExactParameters, OscillatorVariant};
use rotor_core::superint::casimir_residual;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut draw = || rational(rng.random_range(1..=9), rng.random_range(1..=9));

    for _ in 0..5 {
        let params = ExactParameters { mass: draw(), omega: draw(), inertia: draw(), gravity: draw() };
        let iso = casimir_residual(&params, OscillatorVariant::Isotropic);
        let grav = casimir_residual(&params, OscillatorVariant::Gravity);
        println!(
            "M = {:<4} w = {:<4} g = {:<4}  isotropic residual: {:<3} gravity residual: {}",
            params.mass.to_string(),
            params.omega.to_string(),
            params.gravity.to_string(),
            iso.to_string(),
            grav
        );
    }
}
