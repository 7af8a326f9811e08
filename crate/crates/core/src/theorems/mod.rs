//! Spectral identities on spherical space forms, checked exactly at the level of degeneracy
//! sequences.

pub mod linalg;
mod relations;
mod solver;
mod verify;

pub use relations::{
    artin_sufficiency, artin_sufficiency_with, sunada_check, sunada_cyclic, verify_z2_relations, ArtinReport,
    RelationCheck, SunadaVerdict,
};
pub use solver::{
    check_overdetermined, classify, compare_with_reference, linear_system, solve_irrep_quantities, Comparison,
    Discrepancy, Equation, LinearSystem, Residual, SolutionMatrix,
};
pub use verify::{run_suite, Status, Suite, VerificationItem, VerificationReport, REPORT_SCHEMA_VERSION};
