use super::optimize::{optimize_over_bases, OptimizeMode};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::quantum::{
    check_strength, embed, entropy, partial_trace, weak_outcomes, DensityMatrix,
    MeasurementBasis, Side, WeakMeasurementPair,
};

/// Values in `[-CLAMP_FLOOR, 0)` are rounding noise on a nonnegative quantity
/// and are reported as zero.
pub const CLAMP_FLOOR: f64 = 1e-9;

/// Clamps rounding-level negatives to zero; the flag reports whether that
/// happened.
pub fn clamp_nonnegative(value: f64) -> (f64, bool) {
    if (-CLAMP_FLOOR..0.0).contains(&value) {
        (0.0, true)
    } else {
        (value, false)
    }
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::BadDim(rho.dim()));
    }
    Ok(())
}

/// `I = S(A) + S(B) - S(AB)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let a = partial_trace(rho, Side::A)?;
    let b = partial_trace(rho, Side::B)?;
    Ok(entropy(&a) + entropy(&b) - entropy(rho))
}

/// `S(rho) - S(rho_measured)`: entropy of the unmeasured qubit conditioned on
/// the measured one.
pub fn conditional_entropy(rho: &DensityMatrix, measured: Side) -> Result<f64> {
    require_two_qubit(rho)?;
    Ok(entropy(rho) - entropy(&partial_trace(rho, measured)?))
}

/// `sum_k (pi_k) rho (pi_k)` with the projectors acting on `side`.
fn dephase(rho: &DensityMatrix, basis: &MeasurementBasis, side: Side) -> Result<DensityMatrix> {
    let (pi0, pi1) = basis.projectors();
    let mut out = ComplexMatrix::zeros(4, 4);
    for pi in [pi0, pi1] {
        out = &out + &embed(&pi, side).conjugate(rho.matrix());
    }
    DensityMatrix::from_positive_operator(&out)
}

/// Classical correlation: the largest mutual information left after a
/// rank-one projective measurement on `side`, with the maximizing basis.
pub fn classical_correlation(rho: &DensityMatrix, side: Side) -> Result<(f64, MeasurementBasis)> {
    require_two_qubit(rho)?;
    let (basis, value) = optimize_over_bases(
        |b| mutual_information(&dephase(rho, b, side)?),
        OptimizeMode::Max,
    )?;
    Ok((value.max(0.0), basis))
}

/// Discord `I - C` for measurement on `side`.
pub fn discord(rho: &DensityMatrix, side: Side) -> Result<f64> {
    let i = mutual_information(rho)?;
    let (c, _) = classical_correlation(rho, side)?;
    Ok(clamp_nonnegative(i - c).0)
}

/// `p(x) S(rho|+x) + p(-x) S(rho|-x)` for a weak measurement on `side`.
/// Negligible branches contribute zero.
pub fn weak_conditional_entropy(
    rho: &DensityMatrix,
    pair: &WeakMeasurementPair,
    side: Side,
) -> Result<f64> {
    let (plus, minus) = weak_outcomes(rho, pair, side)?;
    let term = |o: &crate::quantum::WeakOutcome| {
        if o.negligible {
            0.0
        } else {
            o.probability * entropy(&o.conditional)
        }
    };
    Ok(term(&plus) + term(&minus))
}

/// Super discord at strength `x` with the weak measurement on `side`,
/// together with the minimizing basis.
pub fn super_discord(rho: &DensityMatrix, x: f64, side: Side) -> Result<(f64, MeasurementBasis)> {
    check_strength(x)?;
    require_two_qubit(rho)?;
    let (basis, min_sw) = optimize_over_bases(
        |b| weak_conditional_entropy(rho, &WeakMeasurementPair::new(x, *b)?, side),
        OptimizeMode::Min,
    )?;
    let value = min_sw - conditional_entropy(rho, side)?;
    Ok((clamp_nonnegative(value).0, basis))
}

/// Frobenius distance from `rho` to the product of its own marginals.
pub fn product_distance(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    rho.matrix().frobenius_distance(rho.marginal_product()?.matrix())
}

/// `rho` equals `rho_A (x) rho_B` to within `tol` in Frobenius norm.
pub fn is_product(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    Ok(product_distance(rho)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{bell_phi_plus, random_product_state, validate_density};

    fn classical_mixture() -> DensityMatrix {
        validate_density(ComplexMatrix::diag(&[0.5, 0.0, 0.0, 0.5])).unwrap()
    }

    #[test]
    fn clamp_window() {
        assert_eq!(clamp_nonnegative(-5e-10), (0.0, true));
        assert_eq!(clamp_nonnegative(-1e-8), (-1e-8, false));
        assert_eq!(clamp_nonnegative(0.25), (0.25, false));
    }

    #[test]
    fn bell_state_measures() {
        let rho = bell_phi_plus();
        assert!((mutual_information(&rho).unwrap() - 2.0).abs() < 1e-12);
        let (c, _) = classical_correlation(&rho, Side::B).unwrap();
        assert!((c - 1.0).abs() < 1e-9);
        assert!((discord(&rho, Side::B).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classical_mixture_has_unit_classical_correlation() {
        let rho = classical_mixture();
        let (c, basis) = classical_correlation(&rho, Side::B).unwrap();
        assert!((c - 1.0).abs() < 1e-9);
        // computational basis (or its swap) attains it
        assert!(basis.theta < 1e-3 || (basis.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
        assert!(discord(&rho, Side::B).unwrap() < 1e-9);
    }

    #[test]
    fn product_state_has_nothing() {
        let rho = random_product_state(5);
        assert!(mutual_information(&rho).unwrap().abs() < 1e-12);
        assert!(classical_correlation(&rho, Side::A).unwrap().0 < 1e-9);
        assert!(discord(&rho, Side::B).unwrap() < 1e-9);
        let (dw, _) = super_discord(&rho, 0.7, Side::B).unwrap();
        assert!(dw < 1e-9);
        assert!(is_product(&rho, 1e-10).unwrap());
    }

    #[test]
    fn weak_conditional_entropy_of_product_is_marginal_entropy() {
        let rho = random_product_state(9);
        let sa = entropy(&partial_trace(&rho, Side::A).unwrap());
        for (x, theta, phi) in [(0.3, 0.2, 1.0), (2.0, 1.4, 5.0), (-1.0, 0.8, 0.0)] {
            let pair = WeakMeasurementPair::new(x, MeasurementBasis::new(theta, phi).unwrap()).unwrap();
            let sw = weak_conditional_entropy(&rho, &pair, Side::B).unwrap();
            assert!((sw - sa).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_super_discord_projective_limit() {
        let (dw, _) = super_discord(&bell_phi_plus(), 10.0, Side::B).unwrap();
        assert!((dw - 1.0).abs() < 1e-3, "{dw}");
    }

    #[test]
    fn zero_strength_rejected() {
        assert!(matches!(
            super_discord(&bell_phi_plus(), 0.0, Side::B),
            Err(Error::ZeroStrength)
        ));
    }

    #[test]
    fn is_product_bands() {
        assert!(!is_product(&bell_phi_plus(), 1e-2).unwrap());
    }
}
