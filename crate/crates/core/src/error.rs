use thiserror::Error;

use crate::correlations::TheoremVerdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("expected {expected} entries, got {actual}")]
    EntryCount { expected: usize, actual: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not Hermitian (max |a - a^dagger| = {0:e})")]
    NotHermitian(f64),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("density matrix dimension must be 2 or 4, got {0}")]
    BadDim(usize),
    #[error("trace must be 1, got {0}")]
    TraceNotOne(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("measurement strength x must be nonzero")]
    ZeroStrength,
    #[error("measurement strength x must be finite, got {0}")]
    NonFiniteStrength(f64),
    #[error("objective returned a non-finite value at theta={theta}, phi={phi}")]
    NonFiniteObjective { theta: f64, phi: f64 },
    #[error("theorem predicates disagree: {0:?}")]
    InconsistentVerdict(Box<TheoremVerdict>),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("phi-dependence {0:e} of the weak conditional entropy exceeds tolerance")]
    PhiDependence(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
