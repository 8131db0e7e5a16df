//! The full claim suite as a JSON report, for both oscillator variants.

use rotor_core::model::{rational, ExactParameters, OscillatorVariant};
use rotor_core::superint::{AlgebraSuite, Status};

fn main() {
    let mut params = ExactParameters::unit_rod();
    let iso = AlgebraSuite::new(params.clone(), OscillatorVariant::Isotropic).run();
    params.gravity = rational(49, 5);
    let grav = AlgebraSuite::new(params, OscillatorVariant::Gravity).run();

    for report in [&iso, &grav] {
        let passed = report.claims.iter().filter(|c| c.status == Status::Pass).count();
        println!("{}: {passed}/{} claims pass", report.variant, report.claims.len());
    }
    let sample: Vec<_> =
        iso.claims.iter().filter(|c| c.claim_id.starts_with("su2") || c.claim_id.starts_with("rank")).collect();
    println!("{}", serde_json::to_string_pretty(&sample).unwrap());

    // A corrupted generator is caught.
    let mut suite = AlgebraSuite::new(ExactParameters::unit_rod(), OscillatorVariant::Isotropic);
    suite.g2 = suite.g2.scale_real(&rational(3, 1));
    let broken = suite.run();
    let failing: Vec<&str> =
        broken.claims.iter().filter(|c| c.status == Status::Fail).map(|c| c.claim_id.as_str()).collect();
    println!("with G2 scaled by 3, failing claims: {failing:?}");
}
