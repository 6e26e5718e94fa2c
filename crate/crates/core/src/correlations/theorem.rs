//! Numerical check that the seven zero-correlation conditions (product state,
//! C = 0, D_w = 0, I = 0, D = D_w, D = I, D_w = I) hold or fail together.

use serde::Serialize;

use super::measures::{
    classical_correlation, mutual_information, product_distance, super_discord,
};
use crate::error::{Error, Result};
use crate::quantum::{check_strength, DensityMatrix, Side};

/// Strengths at which the `x`-dependent predicates are evaluated by default.
pub const DEFAULT_X_LIST: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremThresholds {
    /// A measure at or below this counts as zero.
    pub zero: f64,
    /// `|lhs - rhs|` at or below this counts as equal.
    pub equal: f64,
    /// Frobenius distance to the marginal product at or below this counts as
    /// a product state.
    pub product: f64,
}

impl Default for TheoremThresholds {
    fn default() -> Self {
        Self {
            zero: 1e-6,
            equal: 1e-5,
            product: 1e-7,
        }
    }
}

/// Raw values behind a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremMeasures {
    pub product_distance: f64,
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub discord: f64,
    /// `(x, D_w(x))` for each evaluated strength.
    pub super_discord: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub side: Side,
    /// (a) product state
    pub product: bool,
    /// (b) C = 0
    pub zero_classical: bool,
    /// (c) D_w = 0 at every x
    pub zero_super_discord: bool,
    /// (d) I = 0
    pub zero_mutual_info: bool,
    /// (e) D = D_w at every x
    pub discord_eq_super: bool,
    /// (f) D = I
    pub discord_eq_mutual: bool,
    /// (g) D_w = I at every x
    pub super_eq_mutual: bool,
    pub thresholds: TheoremThresholds,
    pub measures: TheoremMeasures,
}

impl TheoremVerdict {
    pub fn predicates(&self) -> [bool; 7] {
        [
            self.product,
            self.zero_classical,
            self.zero_super_discord,
            self.zero_mutual_info,
            self.discord_eq_super,
            self.discord_eq_mutual,
            self.super_eq_mutual,
        ]
    }

    pub fn all_true(&self) -> bool {
        self.predicates().iter().all(|&p| p)
    }

    pub fn all_false(&self) -> bool {
        self.predicates().iter().all(|&p| !p)
    }

    pub fn is_consistent(&self) -> bool {
        self.all_true() || self.all_false()
    }
}

/// Evaluates the seven predicates with measurement on B at [`DEFAULT_X_LIST`]
/// and default thresholds.
pub fn theorem_report(rho: &DensityMatrix, x_list: &[f64]) -> Result<TheoremVerdict> {
    theorem_report_with(rho, x_list, Side::B, TheoremThresholds::default())
}

/// Evaluates the seven predicates; an inconsistent verdict is an error
/// carrying the full verdict.
pub fn theorem_report_with(
    rho: &DensityMatrix,
    x_list: &[f64],
    side: Side,
    thresholds: TheoremThresholds,
) -> Result<TheoremVerdict> {
    let verdict = evaluate_theorem(rho, x_list, side, thresholds)?;
    if verdict.is_consistent() {
        Ok(verdict)
    } else {
        Err(Error::InconsistentVerdict(Box::new(verdict)))
    }
}

/// Like [`theorem_report_with`] but returns the verdict even when the
/// predicates disagree.
pub fn evaluate_theorem(
    rho: &DensityMatrix,
    x_list: &[f64],
    side: Side,
    thresholds: TheoremThresholds,
) -> Result<TheoremVerdict> {
    let x_list: &[f64] = if x_list.is_empty() { &DEFAULT_X_LIST } else { x_list };
    for &x in x_list {
        check_strength(x)?;
    }
    let product_distance = product_distance(rho)?;
    let mutual_info = mutual_information(rho)?;
    let (classical_corr, _) = classical_correlation(rho, side)?;
    let discord = (mutual_info - classical_corr).max(0.0);
    let dws = x_list
        .iter()
        .map(|&x| super_discord(rho, x, side).map(|(v, _)| (x, v)))
        .collect::<Result<Vec<_>>>()?;

    let zero = |v: f64| v <= thresholds.zero;
    let equal = |a: f64, b: f64| (a - b).abs() <= thresholds.equal;
    Ok(TheoremVerdict {
        side,
        product: product_distance <= thresholds.product,
        zero_classical: zero(classical_corr),
        zero_super_discord: dws.iter().all(|&(_, dw)| zero(dw)),
        zero_mutual_info: zero(mutual_info),
        discord_eq_super: dws.iter().all(|&(_, dw)| equal(discord, dw)),
        discord_eq_mutual: equal(discord, mutual_info),
        super_eq_mutual: dws.iter().all(|&(_, dw)| equal(dw, mutual_info)),
        thresholds,
        measures: TheoremMeasures {
            product_distance,
            mutual_info,
            classical_corr,
            discord,
            super_discord: dws,
        },
    })
}
