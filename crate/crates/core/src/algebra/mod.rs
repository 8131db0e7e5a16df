//! Exact algebra of phase-space observables.
//!
//! An [`Observable`] is a finite sum of terms `c · x^a y^b px^c py^d pθ^e ·
//! exp(ikθ)` with exact rational-complex coefficients. Sums, products,
//! derivatives and Poisson brackets all stay in canonical form, so every
//! bracket identity reduces to an exact emptiness test.

mod builders;
mod coeff;
mod observable;
mod text;

pub use builders::{build_named, check_indices, ObservableBuilder};
pub use coeff::RationalComplex;
pub use observable::{poisson_bracket, CompiledObservable, FourierMonomial, Observable, TrigTerm, Var, POLY_VARS};
