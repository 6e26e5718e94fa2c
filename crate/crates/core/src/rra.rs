//! Super discord in the optimal case of ancilla-assisted discrimination of two
//! nonorthogonal states.
//!
//! After the coupling unitary, the system (left factor) and ancilla (right
//! factor) share
//! `|u_+-> = sqrt(1 - |a_+-|^2) |+-> |0> + a_+- |0> |1>`,
//! mixed with prior weights `p_+-`. At the optimum (`p_+ = 1/2`,
//! `a_+ = a_- = c` real) this reduces to the one-parameter family
//! [`rra_optimal_state`], which is block diagonal in the system's
//! computational basis. Measuring the system weakly then has closed-form
//! outcome probabilities and conditional spectra, implemented here next to
//! the generic numerical pipeline they are checked against.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::correlations::{clamp_nonnegative, conditional_entropy, weak_conditional_entropy};
use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::linalg::ComplexMatrix;
use crate::quantum::{
    check_strength, shannon_bits, validate_density, DensityMatrix, MeasurementBasis, Side,
    WeakMeasurementPair, NEGLIGIBLE_PROBABILITY,
};

/// Number of theta samples scanned before golden-section refinement.
pub const THETA_GRID: usize = 256;
/// Bracket width at which golden-section refinement stops.
pub const THETA_TOL: f64 = 1e-10;
/// Largest tolerated spread of the generic weak conditional entropy over phi.
pub const PHI_INDEPENDENCE_TOL: f64 = 1e-12;

pub const DEFAULT_C_STEPS: usize = 51;
pub const DEFAULT_X_STEPS: usize = 40;
pub const DEFAULT_C_RANGE: (f64, f64) = (0.0, 1.0);
pub const DEFAULT_X_RANGE: (f64, f64) = (0.05, 2.0);

/// Priors and ancilla amplitudes of the discrimination scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RraParams {
    p_plus: f64,
    alpha_plus: Complex64,
    alpha_minus: Complex64,
}

impl RraParams {
    pub fn new(p_plus: f64, alpha_plus: Complex64, alpha_minus: Complex64) -> Result<Self> {
        if !(p_plus > 0.0 && p_plus < 1.0) {
            return Err(Error::BadParams(format!("p_plus must lie in (0, 1), got {p_plus}")));
        }
        for (name, a) in [("alpha_plus", alpha_plus), ("alpha_minus", alpha_minus)] {
            if !(a.norm() <= 1.0) {
                return Err(Error::BadParams(format!("|{name}| must be <= 1, got {}", a.norm())));
            }
        }
        Ok(Self { p_plus, alpha_plus, alpha_minus })
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_minus(&self) -> f64 {
        1.0 - self.p_plus
    }

    pub fn alpha_plus(&self) -> Complex64 {
        self.alpha_plus
    }

    pub fn alpha_minus(&self) -> Complex64 {
        self.alpha_minus
    }

    /// `<psi_+|psi_->` implied by the coupling.
    pub fn overlap(&self) -> Complex64 {
        self.alpha_plus.conj() * self.alpha_minus
    }
}

fn post_coupling_ket(alpha: Complex64, sign: f64) -> [Complex64; 4] {
    let w = (1.0 - alpha.norm_sqr()).max(0.0).sqrt() * FRAC_1_SQRT_2;
    // index = 2 * system + ancilla
    [
        Complex64::new(w, 0.0),
        alpha,
        Complex64::new(sign * w, 0.0),
        Complex64::new(0.0, 0.0),
    ]
}

/// System-ancilla state after coupling, system as the left factor.
pub fn rra_state(params: &RraParams) -> Result<DensityMatrix> {
    let plus = ComplexMatrix::projector(&post_coupling_ket(params.alpha_plus, 1.0));
    let minus = ComplexMatrix::projector(&post_coupling_ket(params.alpha_minus, -1.0));
    validate_density(&plus.scale_real(params.p_plus) + &minus.scale_real(params.p_minus()))
}

fn check_c(c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::BadParams(format!("c must lie in [0, 1], got {c}")));
    }
    Ok(())
}

/// The optimal-case state
/// `(1-c^2)/2 I(x)|0><0| + |0><0|(x)[c^2|1><1| + (sqrt2 c sqrt(1-c^2)/2)(|0><1| + |1><0|)]`.
pub fn rra_optimal_state(c: f64) -> Result<DensityMatrix> {
    check_c(c)?;
    let c2 = c * c;
    let half_rest = (1.0 - c2) / 2.0;
    let coherence = FRAC_1_SQRT_2 * c * (1.0 - c2).sqrt();
    let m = ComplexMatrix::from_real_rows(&[
        &[half_rest, coherence, 0.0, 0.0],
        &[coherence, c2, 0.0, 0.0],
        &[0.0, 0.0, half_rest, 0.0],
        &[0.0, 0.0, 0.0, 0.0],
    ]);
    validate_density(m)
}

fn check_inputs(c: f64, x: f64) -> Result<()> {
    check_c(c)?;
    check_strength(x)
}

/// `tanh(x) cos(2 theta)`, the only way x and theta enter the closed forms.
fn bias(x: f64, theta: f64) -> f64 {
    x.tanh() * (2.0 * theta).cos()
}

/// Probability of the `+x` outcome when the system qubit of
/// [`rra_optimal_state`] is measured weakly: `(1 - tanh(x) cos(2 theta) c^2)/2`.
pub fn rra_p_x(c: f64, x: f64, theta: f64) -> Result<f64> {
    check_inputs(c, x)?;
    Ok(0.5 - 0.5 * bias(x, theta) * c * c)
}

/// Eigenvalues `(lambda_+, lambda_-)` of the ancilla state conditioned on the
/// `+x` outcome. For a vanishing branch, `(1/2, 1/2)` is returned to match the
/// maximally mixed placeholder of the generic pipeline.
pub fn rra_lambda(c: f64, x: f64, theta: f64) -> Result<(f64, f64)> {
    check_inputs(c, x)?;
    let u = bias(x, theta);
    let c2 = c * c;
    let denom = 1.0 - u * c2;
    if denom / 2.0 < NEGLIGIBLE_PROBABILITY {
        return Ok((0.5, 0.5));
    }
    let radicand =
        1.0 - 2.0 * c2 + 2.0 * c2 * c2 - 2.0 * c2 * u + (2.0 * c2 - c2 * c2) * u * u;
    let root = radicand.max(0.0).sqrt();
    let lambda_plus = ((denom + root) / (2.0 * denom)).min(1.0);
    Ok((lambda_plus, 1.0 - lambda_plus))
}

/// Closed-form weak conditional entropy of the ancilla given a weak
/// measurement of the system, in bits.
pub fn rra_weak_conditional_entropy(c: f64, x: f64, theta: f64) -> Result<f64> {
    let mut total = 0.0;
    for s in [x, -x] {
        let p = rra_p_x(c, s, theta)?;
        if p < NEGLIGIBLE_PROBABILITY {
            continue;
        }
        let (lp, lm) = rra_lambda(c, s, theta)?;
        total += p * shannon_bits(&[lp, lm]);
    }
    Ok(total)
}

/// Checks numerically that the generic weak conditional entropy of
/// `rho_c` does not depend on the measurement phase phi.
pub fn check_phi_independence(rho_c: &DensityMatrix, x: f64) -> Result<f64> {
    let mut spread = 0.0_f64;
    for theta in [0.3, 0.9, 1.3] {
        let values = [0.0, 1.7, 4.1]
            .iter()
            .map(|&phi| {
                let pair = WeakMeasurementPair::new(x, MeasurementBasis::from_angles(theta, phi))?;
                weak_conditional_entropy(rho_c, &pair, Side::A)
            })
            .collect::<Result<Vec<_>>>()?;
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        spread = spread.max(hi - lo);
    }
    if spread > PHI_INDEPENDENCE_TOL {
        return Err(Error::PhiDependence(spread));
    }
    Ok(spread)
}

fn golden_section<F>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    while hi - lo > THETA_TOL {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a)?;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b)?;
        }
    }
    // endpoints matter when the minimum sits on the chart boundary
    let candidates = [(a, fa), (b, fb), (lo, f(lo)?), (hi, f(hi)?)];
    Ok(candidates
        .into_iter()
        .fold((f64::NAN, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best }))
}

/// Super discord with the weak measurement on the system qubit of
/// [`rra_optimal_state`], minimized over theta only. Returns the value and
/// the minimizing theta.
pub fn rra_super_discord(c: f64, x: f64) -> Result<(f64, f64)> {
    check_inputs(c, x)?;
    let rho = rra_optimal_state(c)?;
    check_phi_independence(&rho, x)?;

    let objective = |theta: f64| rra_weak_conditional_entropy(c, x, theta);
    let step = FRAC_PI_2 / (THETA_GRID - 1) as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..THETA_GRID {
        let v = objective(step * i as f64)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let lo = step * best.0.saturating_sub(1) as f64;
    let hi = (step * (best.0 + 1) as f64).min(FRAC_PI_2);
    let (mut theta_opt, mut min_sw) = golden_section(objective, lo, hi)?;
    if best.1 < min_sw {
        theta_opt = step * best.0 as f64;
        min_sw = best.1;
    }
    let value = min_sw - conditional_entropy(&rho, Side::A)?;
    Ok((clamp_nonnegative(value).0, theta_opt))
}

/// One cell of the `(c, x)` super-discord surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub c: f64,
    pub x: f64,
    pub theta_opt: f64,
    pub super_discord: f64,
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

pub fn default_c_grid() -> Vec<f64> {
    linspace(DEFAULT_C_RANGE.0, DEFAULT_C_RANGE.1, DEFAULT_C_STEPS)
}

pub fn default_x_grid() -> Vec<f64> {
    linspace(DEFAULT_X_RANGE.0, DEFAULT_X_RANGE.1, DEFAULT_X_STEPS)
}

/// Evaluates every `(c, x)` cell, c-major. Cells run in parallel; the output
/// order follows the input grids.
pub fn sweep(c_grid: &[f64], x_grid: &[f64]) -> Result<Vec<SweepRecord>> {
    if c_grid.is_empty() || x_grid.is_empty() {
        return Err(Error::BadParams("sweep grids must be nonempty".into()));
    }
    for &c in c_grid {
        check_c(c)?;
    }
    for &x in x_grid {
        check_strength(x)?;
    }
    (0..c_grid.len() * x_grid.len())
        .into_par_iter()
        .map(|k| {
            let c = c_grid[k / x_grid.len()];
            let x = x_grid[k % x_grid.len()];
            let (super_discord, theta_opt) = rra_super_discord(c, x)?;
            Ok(SweepRecord { c, x, theta_opt, super_discord })
        })
        .collect()
}

pub const CSV_HEADER: &str = "c,x,theta_opt,super_discord";

pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(r.c),
            fmt_sig(r.x),
            fmt_sig(r.theta_opt),
            fmt_sig(r.super_discord)
        )?;
    }
    Ok(())
}

pub fn sweep_to_csv(records: &[SweepRecord]) -> String {
    let mut buf = Vec::new();
    write_sweep_csv(records, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{entropy, partial_trace};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn params_validation() {
        let z = Complex64::new(0.0, 0.0);
        assert!(RraParams::new(0.0, z, z).is_err());
        assert!(RraParams::new(1.0, z, z).is_err());
        assert!(RraParams::new(0.5, Complex64::new(1.1, 0.0), z).is_err());
        let p = RraParams::new(0.3, Complex64::new(0.0, 0.5), Complex64::new(0.4, 0.0)).unwrap();
        assert!((p.p_minus() - 0.7).abs() < 1e-16);
        assert!((p.overlap() - Complex64::new(0.0, -0.2)).norm() < 1e-16);
    }

    #[test]
    fn zero_amplitudes_give_product_state() {
        let z = Complex64::new(0.0, 0.0);
        let rho = rra_state(&RraParams::new(0.3, z, z).unwrap()).unwrap();
        // (0.3|+><+| + 0.7|-><-|) (x) |0><0|
        let sys = ComplexMatrix::from_real_rows(&[&[0.5, -0.2], &[-0.2, 0.5]]);
        let expected = sys.kron(&ComplexMatrix::diag(&[1.0, 0.0]));
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn unit_amplitudes_give_basis_state() {
        let one = Complex64::new(1.0, 0.0);
        let rho = rra_state(&RraParams::new(0.4, one, -one).unwrap()).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::diag(&[0.0, 1.0, 0.0, 0.0])) < 1e-15);
    }

    #[test]
    fn optimal_state_boundaries() {
        let rho0 = rra_optimal_state(0.0).unwrap();
        assert!(rho0.matrix().max_abs_diff(&ComplexMatrix::diag(&[0.5, 0.0, 0.5, 0.0])) < 1e-16);
        let rho1 = rra_optimal_state(1.0).unwrap();
        assert!(rho1.matrix().max_abs_diff(&ComplexMatrix::diag(&[0.0, 1.0, 0.0, 0.0])) < 1e-16);
        assert!(rra_optimal_state(1.2).is_err());
    }

    #[test]
    fn optimal_state_at_point_six() {
        let rho = rra_optimal_state(0.6).unwrap();
        let s = rho.spectrum();
        assert!(s[0].abs() < 1e-14 && s[1].abs() < 1e-14);
        assert!((s[2] - 0.32).abs() < 1e-14);
        assert!((s[3] - 0.68).abs() < 1e-14);
        let sa = entropy(&partial_trace(&rho, Side::A).unwrap());
        assert!((rho.entropy() - sa).abs() < 1e-10);
    }

    #[test]
    fn p_x_special_cases() {
        assert_eq!(rra_p_x(0.7, 1.3, FRAC_PI_4).unwrap(), 0.5);
        assert_eq!(rra_p_x(0.0, 1.3, 0.2).unwrap(), 0.5);
        assert!(matches!(rra_p_x(0.5, 0.0, 0.2), Err(Error::ZeroStrength)));
        for (c, x, t) in [(0.3, 0.7, 0.1), (0.9, 2.0, 1.2), (0.55, 0.05, 0.77)] {
            let s = rra_p_x(c, x, t).unwrap() + rra_p_x(c, -x, t).unwrap();
            assert!((s - 1.0).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn lambda_special_cases() {
        let c: f64 = 0.6;
        let r = (1.0 - 2.0 * c * c + 2.0 * c.powi(4)).sqrt();
        assert!((r * r - 0.5392).abs() < 1e-15);
        let (lp, lm) = rra_lambda(c, 0.9, FRAC_PI_4).unwrap();
        assert!((lp - (1.0 + r) / 2.0).abs() < 1e-15);
        assert!((lm - (1.0 - r) / 2.0).abs() < 1e-15);
        for (x, theta) in [(0.3, 0.0), (1.0, 0.6), (-2.0, 1.5)] {
            let (lp, lm) = rra_lambda(1.0, x, theta).unwrap();
            assert!((lp - 1.0).abs() < 1e-15 && lm.abs() < 1e-15);
            assert_eq!(lp + lm, 1.0);
        }
    }

    #[test]
    fn closed_form_entropy_boundaries() {
        for x in [0.1, 1.0, 2.0] {
            for theta in [0.0, 0.5, FRAC_PI_2] {
                assert!(rra_weak_conditional_entropy(0.0, x, theta).unwrap().abs() < 1e-15);
                assert!(rra_weak_conditional_entropy(1.0, x, theta).unwrap().abs() < 1e-15);
            }
        }
    }

    #[test]
    fn closed_form_matches_generic_at_point_six() {
        let rho = rra_optimal_state(0.6).unwrap();
        let pair = WeakMeasurementPair::new(1.0, MeasurementBasis::new(FRAC_PI_4, 0.0).unwrap()).unwrap();
        let generic = weak_conditional_entropy(&rho, &pair, Side::A).unwrap();
        let closed = rra_weak_conditional_entropy(0.6, 1.0, FRAC_PI_4).unwrap();
        let r = 0.5392f64.sqrt();
        let lambda = [(1.0 + r) / 2.0, (1.0 - r) / 2.0];
        let by_hand: f64 = lambda.iter().map(|l| -l * l.log2()).sum();
        assert!((generic - closed).abs() < 1e-10);
        assert!((closed - by_hand).abs() < 1e-14);
    }

    #[test]
    fn super_discord_boundaries_vanish() {
        for x in [0.05, 1.0, 2.0] {
            assert!(rra_super_discord(0.0, x).unwrap().0 <= 1e-6);
            assert!(rra_super_discord(1.0, x).unwrap().0 <= 1e-6);
        }
    }

    #[test]
    fn phi_independence_holds() {
        for c in [0.2, 0.6, 0.95] {
            let spread = check_phi_independence(&rra_optimal_state(c).unwrap(), 0.8).unwrap();
            assert!(spread <= PHI_INDEPENDENCE_TOL);
        }
    }

    #[test]
    fn phi_dependence_detected_on_generic_state() {
        let rho = crate::quantum::random_density(4);
        assert!(matches!(check_phi_independence(&rho, 0.8), Err(Error::PhiDependence(_))));
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.05, 2.0, 40);
        assert_eq!(g.len(), 40);
        assert_eq!(g[0], 0.05);
        assert_eq!(g[39], 2.0);
        assert_eq!(default_c_grid().len(), 51);
    }

    #[test]
    fn small_sweep_and_csv() {
        let records = sweep(&[0.0, 1.0], &[1.0]).unwrap();
        assert_eq!(records.len(), 2);
        assert!(records.iter().all(|r| r.super_discord <= 1e-6));
        let csv = sweep_to_csv(&records);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("0,1,"));
        assert!(csv.ends_with('\n'));
        assert!(sweep(&[], &[1.0]).is_err());
        assert!(matches!(sweep(&[0.5], &[0.0]), Err(Error::ZeroStrength)));
    }
}
