use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix, HERMITIAN_TOL};

/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues in `[-POSITIVITY_TOL, 0)` are clipped to zero; anything more
/// negative is rejected.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Which qubit of a two-qubit state an operation refers to. `A` is the left
/// tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            other => Err(Error::Parse(format!("side must be A or B, got {other:?}"))),
        }
    }
}

/// A validated qubit (dim 2) or two-qubit (dim 4) density matrix.
///
/// The spectrum is computed once at construction, with tiny negative
/// eigenvalues clipped to zero, and reused for entropies.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate_density(m)
    }

    /// Normalizes an operator that is positive semidefinite by construction
    /// (e.g. `K rho K^dagger`) and clips rounding-level negative eigenvalues.
    pub(crate) fn from_positive_operator(m: &ComplexMatrix) -> Result<Self> {
        let trace = m.trace().re;
        if !(trace > 0.0) {
            return Err(Error::TraceNotOne(trace));
        }
        let matrix = m.hermitian_part().scale_real(1.0 / trace);
        let eigen = hermitian_eigen(&matrix)?;
        let spectrum = eigen.values.iter().map(|&l| l.max(0.0)).collect();
        Ok(Self { matrix, spectrum })
    }

    /// `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        validate_density(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// `|psi><psi|` for a (not necessarily normalized) ket.
    pub fn pure(ket: &[Complex64]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        validate_density(ComplexMatrix::projector(ket).scale_real(1.0 / norm))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Ascending eigenvalues after clipping.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn entropy(&self) -> f64 {
        entropy(self)
    }

    pub fn partial_trace(&self, keep: Side) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    /// `rho_A (x) rho_B` built from this state's own marginals.
    pub fn marginal_product(&self) -> Result<DensityMatrix> {
        let a = self.partial_trace(Side::A)?;
        let b = self.partial_trace(Side::B)?;
        product_state(&a, &b)
    }

    /// `U rho U^dagger`.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        validate_density(u.conjugate(&self.matrix).hermitian_part())
    }
}

/// Validates Hermiticity, unit trace and positivity of a 2x2 or 4x4 matrix.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let dim = m.rows();
    if dim != 2 && dim != 4 {
        return Err(Error::BadDim(dim));
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian(deviation));
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne(trace));
    }
    let matrix = m.hermitian_part();
    let eigen = hermitian_eigen(&matrix)?;
    let min = eigen.values[0];
    if min < -POSITIVITY_TOL {
        return Err(Error::NotPositive(min));
    }
    let spectrum = eigen.values.iter().map(|&l| l.max(0.0)).collect();
    Ok(DensityMatrix { matrix, spectrum })
}

/// Von Neumann entropy in bits, with `0 log 0 = 0`.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    shannon_bits(rho.spectrum())
}

pub(crate) fn shannon_bits(weights: &[f64]) -> f64 {
    weights
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Reduced state of `keep` for a two-qubit state (A is the left factor).
pub fn partial_trace(rho: &DensityMatrix, keep: Side) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadDim(rho.dim()));
    }
    DensityMatrix::from_positive_operator(&partial_trace_matrix(rho.matrix(), keep))
}

/// Partial trace of a raw 4x4 operator over the qubit not named by `keep`.
pub(crate) fn partial_trace_matrix(m: &ComplexMatrix, keep: Side) -> ComplexMatrix {
    debug_assert_eq!(m.shape(), (4, 4));
    let mut out = ComplexMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let z = match keep {
                // index = 2a + b
                Side::A => m.get(2 * i, 2 * j) + m.get(2 * i + 1, 2 * j + 1),
                Side::B => m.get(i, j) + m.get(2 + i, 2 + j),
            };
            out.set(i, j, z);
        }
    }
    out
}

/// `rho_A (x) rho_B` for two qubit states.
pub fn product_state(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    if a.dim() != 2 {
        return Err(Error::BadDim(a.dim()));
    }
    if b.dim() != 2 {
        return Err(Error::BadDim(b.dim()));
    }
    validate_density(a.matrix().kron(b.matrix()))
}

/// `|Phi+> = (|00> + |11>)/sqrt 2`.
pub fn bell_phi_plus() -> DensityMatrix {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    DensityMatrix::pure(&[one, zero, zero, one]).expect("Bell state is valid")
}
