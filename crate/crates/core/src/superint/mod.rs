//! Certification of the structural claims: functional independence, resonance,
//! and exact bracket identities.

mod rank;
mod resonance;
mod scan;
mod verify;

pub use rank::{
    certify_rank, exact_rank, gradient_matrix, gradient_matrix_exact, max_floating_rank, rank, GradientMatrix,
    RankMode, RankReport, RankResult, DEFAULT_RANK_TOLERANCE,
};
pub use resonance::{best_ratio, resonance_detect, resonance_detect_exact, ResonanceResult};
pub use scan::{conservation_scan, ScanEntry};
pub use verify::{
    casimir_residual, k_tower_indices, rank_integrals, reference_state, verify_relation, AlgebraSuite, Claim,
    ClaimResult, ParameterEcho, RelationCheck, Status, VerificationReport, REPORT_SCHEMA,
};
