use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::{partial_trace_matrix, DensityMatrix, Side};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Branches whose probability falls below this are treated as impossible.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-14;

/// A rank-one projective qubit measurement `{pi_0, pi_1}` with
/// `pi_0 = |psi><psi|`, `|psi> = cos(theta)|0> + e^{i phi} sin(theta)|1>` and
/// `pi_1 = I - pi_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    /// Accepts only angles already on the chart `theta in [0, pi/2]`,
    /// `phi in [0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::BadParams(format!(
                "basis angles out of range: theta={theta}, phi={phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    /// Maps arbitrary real angles to the chart point describing the same
    /// projector `pi_0`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(PI);
        let mut phi = phi;
        if theta > FRAC_PI_2 {
            // cos(pi - t)|0> + e^{i phi} sin(pi - t)|1> = -(cos t|0> + e^{i(phi + pi)} sin t|1>)
            theta = PI - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn computational() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    /// The basis whose `pi_0` is this basis' `pi_1`.
    pub fn swapped(&self) -> Self {
        Self::from_angles(FRAC_PI_2 - self.theta, self.phi + PI)
    }

    pub fn ket(&self) -> [Complex64; 2] {
        [
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::from_polar(self.theta.sin(), self.phi),
        ]
    }

    /// `(pi_0, pi_1)`.
    pub fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let pi0 = ComplexMatrix::projector(&self.ket());
        let pi1 = &ComplexMatrix::identity(2) - &pi0;
        (pi0, pi1)
    }
}

/// Two-outcome weak measurement of strength `x` built on a projective basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakMeasurementPair {
    x: f64,
    basis: MeasurementBasis,
}

impl WeakMeasurementPair {
    pub fn new(x: f64, basis: MeasurementBasis) -> Result<Self> {
        check_strength(x)?;
        Ok(Self { x, basis })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn basis(&self) -> MeasurementBasis {
        self.basis
    }

    /// `(P(x), P(-x))`.
    pub fn operators(&self) -> (ComplexMatrix, ComplexMatrix) {
        weak_operators(self)
    }
}

pub(crate) fn check_strength(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFiniteStrength(x));
    }
    if x == 0.0 {
        return Err(Error::ZeroStrength);
    }
    Ok(())
}

/// Weights `(sqrt((1 - tanh x)/2), sqrt((1 + tanh x)/2))`.
///
/// Uses `(1 -+ tanh x)/2 = 1/(1 + e^{+-2x})` so neither weight cancels for
/// large `|x|`.
pub fn weak_weights(x: f64) -> (f64, f64) {
    let low = 1.0 / (1.0 + (2.0 * x).exp());
    let high = 1.0 / (1.0 + (-2.0 * x).exp());
    (low.sqrt(), high.sqrt())
}

/// `P(x) = w_- pi_0 + w_+ pi_1`, `P(-x) = w_+ pi_0 + w_- pi_1`.
pub fn weak_operators(pair: &WeakMeasurementPair) -> (ComplexMatrix, ComplexMatrix) {
    let (pi0, pi1) = pair.basis.projectors();
    let (low, high) = weak_weights(pair.x);
    let px = &pi0.scale_real(low) + &pi1.scale_real(high);
    let pmx = &pi0.scale_real(high) + &pi1.scale_real(low);
    (px, pmx)
}

/// Lifts a single-qubit operator to act on `side` of a two-qubit system.
pub fn embed(op: &ComplexMatrix, side: Side) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    match side {
        Side::A => op.kron(&id),
        Side::B => id.kron(op),
    }
}

/// One branch of a weak measurement.
#[derive(Debug, Clone)]
pub struct WeakOutcome {
    pub probability: f64,
    /// State of the unmeasured qubit given this outcome; `I/2` when the
    /// branch is negligible.
    pub conditional: DensityMatrix,
    pub negligible: bool,
}

fn conditional_branch(
    rho: &DensityMatrix,
    op: &ComplexMatrix,
    side: Side,
) -> Result<(f64, ComplexMatrix)> {
    let k = embed(op, side);
    let post = k.conjugate(rho.matrix());
    let p = post.trace().re.clamp(0.0, 1.0);
    Ok((p, post))
}

/// Outcomes `(+x, -x)` of measuring `side` of `rho` with `pair`.
pub fn weak_outcomes(
    rho: &DensityMatrix,
    pair: &WeakMeasurementPair,
    side: Side,
) -> Result<(WeakOutcome, WeakOutcome)> {
    if rho.dim() != 4 {
        return Err(Error::BadDim(rho.dim()));
    }
    let (px, pmx) = weak_operators(pair);
    let outcome = |op: &ComplexMatrix| -> Result<WeakOutcome> {
        let (p, post) = conditional_branch(rho, op, side)?;
        if p < NEGLIGIBLE_PROBABILITY {
            return Ok(WeakOutcome {
                probability: p,
                conditional: DensityMatrix::maximally_mixed(2)?,
                negligible: true,
            });
        }
        let reduced = partial_trace_matrix(&post, side.other());
        Ok(WeakOutcome {
            probability: p,
            conditional: DensityMatrix::from_positive_operator(&reduced)?,
            negligible: false,
        })
    };
    Ok((outcome(&px)?, outcome(&pmx)?))
}

/// One non-negligible branch of a projective measurement.
#[derive(Debug, Clone)]
pub struct ProjectiveBranch {
    /// Index `k` of the projector `pi_k`.
    pub index: usize,
    pub probability: f64,
    /// Normalized two-qubit post-measurement state.
    pub post: DensityMatrix,
}

/// Branches of measuring `side` of `rho` projectively in `basis`; branches
/// below [`NEGLIGIBLE_PROBABILITY`] are dropped.
pub fn projective_outcomes(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    side: Side,
) -> Result<Vec<ProjectiveBranch>> {
    if rho.dim() != 4 {
        return Err(Error::BadDim(rho.dim()));
    }
    let (pi0, pi1) = basis.projectors();
    let mut branches = Vec::with_capacity(2);
    for (index, pi) in [pi0, pi1].iter().enumerate() {
        let (p, post) = conditional_branch(rho, pi, side)?;
        if p < NEGLIGIBLE_PROBABILITY {
            continue;
        }
        branches.push(ProjectiveBranch {
            index,
            probability: p,
            post: DensityMatrix::from_positive_operator(&post)?,
        });
    }
    Ok(branches)
}
