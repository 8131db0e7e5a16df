//! Rotor-extended planar Hamiltonian systems.
//!
//! A rigid rotor with angle θ rides on a planar oscillator:
//!
//! ```text
//! H = (px² + py²) / 2M + V(x, y) + pθ² / 2I
//! ```
//!
//! The crate provides
//!
//! * [`model`]: parameters, states and the potential family with exact and
//!   floating-point Hamiltonian evaluation;
//! * [`algebra`]: exact observables with Poisson brackets, and builders for the
//!   integrals of the oscillator (H, L, G1, G2, Z, K, P, Q and the gravity-shifted
//!   forms);
//! * [`dynamics`]: closed-form flows, a velocity-Verlet integrator, trajectories,
//!   drift and recurrence diagnostics, CSV export;
//! * [`superint`]: Jacobian rank certification, resonance detection and the
//!   bracket-identity claim suite;
//! * [`cli`]: the `rotor` command-line front end and its scenario files.

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod superint;

pub use error::{Error, Result};
