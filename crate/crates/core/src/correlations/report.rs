use serde::Serialize;

use super::measures::{classical_correlation, clamp_nonnegative, mutual_information, super_discord};
use crate::error::Result;
use crate::format::serialize_sig;
use crate::quantum::{check_strength, DensityMatrix, MeasurementBasis, Side};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisAngles {
    #[serde(serialize_with = "serialize_sig")]
    pub theta: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub phi: f64,
}

impl From<MeasurementBasis> for BasisAngles {
    fn from(b: MeasurementBasis) -> Self {
        Self { theta: b.theta, phi: b.phi }
    }
}

/// All four correlation measures of one state at one strength and side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    #[serde(serialize_with = "serialize_sig")]
    pub x: f64,
    pub side: Side,
    #[serde(serialize_with = "serialize_sig")]
    pub mutual_info: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub classical_corr: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub discord: f64,
    #[serde(serialize_with = "serialize_sig")]
    pub super_discord: f64,
    #[serde(rename = "argmax_basis_C")]
    pub argmax_basis_c: BasisAngles,
    #[serde(rename = "argmin_basis_Dw")]
    pub argmin_basis_dw: BasisAngles,
    /// Measures whose raw value was a rounding-level negative reported as 0.
    pub clamped: Vec<&'static str>,
}

impl CorrelationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn analyze(rho: &DensityMatrix, x: f64, side: Side) -> Result<CorrelationReport> {
    check_strength(x)?;
    let mut clamped = Vec::new();
    let mut clamp = |name: &'static str, v: f64| {
        let (v, hit) = clamp_nonnegative(v);
        if hit {
            clamped.push(name);
        }
        v
    };
    let i_raw = mutual_information(rho)?;
    let (c_raw, basis_c) = classical_correlation(rho, side)?;
    let (dw_raw, basis_dw) = super_discord(rho, x, side)?;
    let mutual_info = clamp("mutual_info", i_raw);
    let classical_corr = clamp("classical_corr", c_raw);
    let discord = clamp("discord", i_raw - c_raw);
    let super_discord = clamp("super_discord", dw_raw);
    Ok(CorrelationReport {
        x,
        side,
        mutual_info,
        classical_corr,
        discord,
        super_discord,
        argmax_basis_c: basis_c.into(),
        argmin_basis_dw: basis_dw.into(),
        clamped,
    })
}
