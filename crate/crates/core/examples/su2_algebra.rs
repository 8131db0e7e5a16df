//! The oscillator's quadratic integrals L, G1, G2 close into su(2).

use rotor_core::algebra::ObservableBuilder;
use rotor_core::model::{rational, ExactParameters, OscillatorVariant};
use rotor_core::superint::verify_relation;

fn main() {
    let params = ExactParameters {
        mass: rational(3, 2),
        omega: rational(2, 3),
        inertia: rational(1, 8),
        gravity: rational(0, 1),
    };
    let omega2 = &params.omega * &params.omega;
    let b = ObservableBuilder::new(params, OscillatorVariant::Isotropic);
    let (l, g1, g2) = (b.angular_momentum(), b.g1(), b.g2());

    println!("L  = {l}");
    println!("G1 = {g1}");
    println!("G2 = {g2}");
    println!();

    let table = [
        ("{L, G1} = -G2", l.poisson_bracket(&g1), -&g2),
        ("{L, G2} = 4 G1", l.poisson_bracket(&g2), g1.scale_real(&rational(4, 1))),
        ("{G1, G2} = -w^2 L", g1.poisson_bracket(&g2), l.scale_real(&-omega2)),
    ];
    for (label, lhs, rhs) in table {
        let check = verify_relation(&lhs, &rhs);
        println!("{label:<20} exact zero: {}", check.exact_zero);
    }

    let h = b.f1();
    for (name, g) in [("L", &l), ("G1", &g1), ("G2", &g2)] {
        println!("{{H, {name}}} = {}", h.poisson_bracket(g));
    }
}
