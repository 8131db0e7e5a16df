//! Functional independence of {F1, F2, G1, G2, P(1,1)}: five integrals for a
//! system with three degrees of freedom.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotor_core::algebra::{Observable, ObservableBuilder};
use rotor_core::model::{ExactParameters, OscillatorVariant, PhaseState};
use rotor_core::superint::{
    certify_rank, max_floating_rank, rank_integrals, reference_state, RankMode, DEFAULT_RANK_TOLERANCE,
};

fn main() -> rotor_core::Result<()> {
    let params = ExactParameters::unit_rod();
    let b = ObservableBuilder::new(params.clone(), OscillatorVariant::Isotropic);
    let state = reference_state(&params);

    for (label, with_p, with_l) in
        [("with P(1,1)", true, false), ("without P(1,1)", false, false), ("with L", true, true)]
    {
        let set = rank_integrals(&b, with_p, with_l);
        let exact = certify_rank(&set, &state, RankMode::Exact, DEFAULT_RANK_TOLERANCE)?;
        let float = certify_rank(&set, &state, RankMode::Floating, DEFAULT_RANK_TOLERANCE)?;
        let sv: Vec<String> = float.singular_values.iter().map(|s| format!("{s:.3e}")).collect();
        println!("{label:<16} exact rank {}  floating rank {}  sv [{}]", exact.rank, float.rank, sv.join(", "));
    }

    // Rank is generic: sample random states and keep the maximum.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let states: Vec<PhaseState> =
        (0..100).map(|_| PhaseState::from_array(std::array::from_fn(|_| rng.random_range(-2.0..2.0)))).collect();
    let set: Vec<Observable> = rank_integrals(&b, true, false).into_iter().map(|(_, o)| o).collect();
    println!("max floating rank over 100 random states: {}", max_floating_rank(&set, &states, DEFAULT_RANK_TOLERANCE)?);

    let origin = PhaseState::from_ratios([(0, 1); 6]);
    let named = rank_integrals(&b, true, false);
    println!("rank at the origin: {}", certify_rank(&named, &origin, RankMode::Exact, 1e-10)?.rank);
    Ok(())
}
