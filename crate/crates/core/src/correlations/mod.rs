//! Mutual information, classical correlation, discord and super discord, the
//! basis optimizer they share, and the zero-correlation theorem verifier.

mod measures;
mod optimize;
mod report;
mod theorem;

pub use measures::{
    clamp_nonnegative, classical_correlation, conditional_entropy, discord, is_product,
    mutual_information, product_distance, super_discord, weak_conditional_entropy, CLAMP_FLOOR,
};
pub use optimize::{
    optimize_over_bases, OptimizeMode, GRID_PHI, GRID_THETA, SIMPLEX_DIAMETER_TOL,
    SIMPLEX_MAX_ITER,
};
pub use report::{analyze, BasisAngles, CorrelationReport};
pub use theorem::{
    evaluate_theorem, theorem_report, theorem_report_with, TheoremMeasures, TheoremThresholds,
    TheoremVerdict, DEFAULT_X_LIST,
};
