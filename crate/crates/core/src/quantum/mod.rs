//! Validated states, measurement operators and the seeded random ensembles.

mod density;
mod measurement;
mod random;
mod state_file;

pub use density::{
    bell_phi_plus, entropy, partial_trace, product_state, validate_density, DensityMatrix, Side,
    POSITIVITY_TOL, TRACE_TOL,
};
pub(crate) use density::shannon_bits;
pub use measurement::{
    embed, projective_outcomes, weak_operators, weak_outcomes, weak_weights, MeasurementBasis,
    ProjectiveBranch, WeakMeasurementPair, WeakOutcome, NEGLIGIBLE_PROBABILITY,
};
pub(crate) use measurement::check_strength;
pub use random::{random_density, random_local_unitary, random_product_state, random_qubit_density};
pub use state_file::{parse_state_json, state_to_json};
