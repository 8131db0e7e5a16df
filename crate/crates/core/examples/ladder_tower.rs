//! The ladder function Z and the tower K(m, n) = Z^m e^{-i n theta}.
//!
//! {K, H} vanishes exactly when m w I = n ptheta, so K(m, n) is conserved on
//! that level set of ptheta only.

use rotor_core::algebra::{Observable, ObservableBuilder, RationalComplex};
use rotor_core::model::{rational, ExactParameters, OscillatorVariant};
use rotor_core::superint::k_tower_indices;

fn main() -> rotor_core::Result<()> {
    let params = ExactParameters::unit_rod();
    let b = ObservableBuilder::new(params.clone(), OscillatorVariant::Isotropic);
    let h = b.f1();

    println!("Z = {}", b.z());
    println!("{{Z, H}} = {}", b.z().poisson_bracket(&h));
    println!();

    for (m, n) in k_tower_indices().into_iter().take(6) {
        let k = b.k(m, n)?;
        let bracket = k.poisson_bracket(&h).scale_real(&params.inertia);
        let mwi = rational(m, 1) * &params.omega * &params.inertia;
        let rate = Observable::rational(mwi) - Observable::ptheta().scale_real(&rational(n, 1));
        let expected = rate.scale(&RationalComplex::i()) * &k;
        println!("K({m},{n:>2}): I{{K, H}} = i(m w I - n ptheta) K  holds: {}", (bracket - expected).is_zero());
    }
    println!();

    let p = b.p(1, 1)?;
    println!("P(1,1) real form:");
    for t in p.trig_form() {
        println!("  exps {:?} harmonic {}: cos {} sin {}", t.exponents, t.harmonic, t.cos, t.sin);
    }
    Ok(())
}
