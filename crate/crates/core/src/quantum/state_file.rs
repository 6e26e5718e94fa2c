//! JSON density-matrix files:
//! `{"dim": 4, "matrix": [[[re, im], ...], ...]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::{validate_density, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StateFile {
    dim: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Parses and validates a state file.
pub fn parse_state_json(text: &str) -> Result<DensityMatrix> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dim = file.dim;
    if dim != 2 && dim != 4 {
        return Err(Error::BadDim(dim));
    }
    if file.matrix.len() != dim || file.matrix.iter().any(|row| row.len() != dim) {
        return Err(Error::Parse(format!("\"matrix\" must be {dim} rows of {dim} entries")));
    }
    let data = file
        .matrix
        .iter()
        .flat_map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)))
        .collect();
    validate_density(ComplexMatrix::new(dim, dim, data)?)
}

/// Serializes a state in the file format (pretty-printed, newline-terminated).
pub fn state_to_json(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let file = StateFile {
        dim: rho.dim(),
        matrix: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("state file serializes");
    text.push('\n');
    text
}
