//! Exit-gate criteria. Every criterion runs at its stated scale and tolerance
//! and prints one PASS/FAIL line; the test fails if any criterion fails.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use superdiscord::correlations::{
    analyze, discord, mutual_information, product_distance, super_discord, theorem_report_with,
    TheoremThresholds,
};
use superdiscord::linalg::ComplexMatrix;
use superdiscord::quantum::{
    entropy, partial_trace, random_density, random_local_unitary, random_product_state,
    weak_operators, weak_outcomes, DensityMatrix, MeasurementBasis, Side, WeakMeasurementPair,
};
use superdiscord::rra::{
    default_c_grid, default_x_grid, linspace, rra_lambda, rra_optimal_state, rra_p_x,
    rra_super_discord, sweep,
};
use superdiscord::Error;

const X_SET: [f64; 3] = [0.5, 1.0, 2.0];

struct Criterion {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn criterion(name: &'static str, passed: bool, detail: String) -> Criterion {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("[{status}] {name}: {detail}");
    Criterion { name, passed, detail }
}

fn operator_identities() -> Criterion {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_completeness = 0.0_f64;
    let mut worst_sum = 0.0_f64;
    for _ in 0..1000 {
        let mag: f64 = rng.gen_range(0.01..6.0);
        let x = if rng.gen_bool(0.5) { mag } else { -mag };
        let basis = MeasurementBasis::from_angles(rng.gen_range(0.0..FRAC_PI_2), rng.gen_range(0.0..TAU));
        let pair = WeakMeasurementPair::new(x, basis).unwrap();
        let (px, pmx) = weak_operators(&pair);
        let sum = &px.adjoint().matmul(&px) + &pmx.adjoint().matmul(&pmx);
        worst_completeness = worst_completeness.max(sum.max_abs_diff(&ComplexMatrix::identity(2)));
        let rho = random_density(rng.gen());
        let side = if rng.gen_bool(0.5) { Side::A } else { Side::B };
        let (plus, minus) = weak_outcomes(&rho, &pair, side).unwrap();
        worst_sum = worst_sum.max((plus.probability + minus.probability - 1.0).abs());
    }
    let elapsed = start.elapsed();
    criterion(
        "operator identities",
        worst_completeness <= 1e-12 && worst_sum <= 1e-12 && elapsed < Duration::from_secs(1),
        format!(
            "max completeness error {worst_completeness:e}, max |p(x)+p(-x)-1| {worst_sum:e}, {elapsed:?}"
        ),
    )
}

fn inequality_chain() -> Criterion {
    let start = Instant::now();
    let violations: Vec<String> = (0..200u64)
        .into_par_iter()
        .flat_map_iter(|i| {
            let rho = random_density(10_000 + i);
            let mi = mutual_information(&rho).unwrap();
            let mut bad = Vec::new();
            for side in [Side::A, Side::B] {
                let d = discord(&rho, side).unwrap();
                for x in X_SET {
                    let (dw, _) = super_discord(&rho, x, side).unwrap();
                    if !(mi + 1e-4 >= dw && dw >= d - 2e-6) {
                        bad.push(format!("state {i} side {side} x {x}: I={mi} D_w={dw} D={d}"));
                    }
                }
            }
            bad
        })
        .collect();
    let elapsed = start.elapsed();
    criterion(
        "inequality chain I >= D_w >= D",
        violations.is_empty() && elapsed < Duration::from_secs(120),
        format!("200 states x 3 strengths x 2 sides, {} violations {:?}, {elapsed:?}", violations.len(), violations.first()),
    )
}

fn theorem_equivalence() -> Criterion {
    let thresholds = TheoremThresholds::default();
    let products: Vec<Result<bool, Error>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let rho = random_product_state(20_000 + i);
            let v = theorem_report_with(&rho, &X_SET, Side::B, thresholds)?;
            let m = &v.measures;
            let zeros_small = m.mutual_info <= 1e-6
                && m.classical_corr <= 1e-6
                && m.super_discord.iter().all(|&(_, dw)| dw <= 1e-6);
            Ok(v.all_true() && zeros_small)
        })
        .collect();

    let mut candidates = Vec::new();
    let mut seed = 30_000u64;
    while candidates.len() < 100 {
        let rho = random_density(seed);
        if product_distance(&rho).unwrap() >= 1e-2 {
            candidates.push(rho);
        }
        seed += 1;
    }
    let non_products: Vec<Result<(bool, f64), Error>> = candidates
        .par_iter()
        .map(|rho| {
            let v = theorem_report_with(rho, &X_SET, Side::B, thresholds)?;
            let m = &v.measures;
            let mut separations = vec![m.mutual_info, m.classical_corr, (m.discord - m.mutual_info).abs()];
            for &(_, dw) in &m.super_discord {
                separations.extend([dw, (m.discord - dw).abs(), (dw - m.mutual_info).abs()]);
            }
            let smallest = separations.into_iter().fold(f64::INFINITY, f64::min);
            Ok((v.all_false() && smallest >= 1e-4, smallest))
        })
        .collect();

    let inconsistent = products
        .iter()
        .map(|r| r.as_ref().err())
        .chain(non_products.iter().map(|r| r.as_ref().err()))
        .flatten()
        .filter(|e| matches!(e, Error::InconsistentVerdict(_)))
        .count();
    let other_errors = products.iter().filter(|r| r.is_err()).count()
        + non_products.iter().filter(|r| r.is_err()).count()
        - inconsistent;
    let product_ok = products.iter().filter(|r| matches!(r, Ok(true))).count();
    let non_product_ok = non_products.iter().filter(|r| matches!(r, Ok((true, _)))).count();
    let min_sep = non_products
        .iter()
        .filter_map(|r| r.as_ref().ok().map(|&(_, s)| s))
        .fold(f64::INFINITY, f64::min);
    criterion(
        "zero-correlation equivalence",
        product_ok == 100 && non_product_ok == 100 && inconsistent == 0 && other_errors == 0,
        format!(
            "products all-true {product_ok}/100, non-products all-false {non_product_ok}/100 \
             (smallest separation {min_sep:e}), inconsistent verdicts {inconsistent}"
        ),
    )
}

fn strength_limits() -> Criterion {
    let gaps: Vec<(f64, f64)> = (0..20u64)
        .into_par_iter()
        .map(|i| {
            let rho = random_density(40_000 + i);
            let d = discord(&rho, Side::B).unwrap();
            let mi = mutual_information(&rho).unwrap();
            let (strong, _) = super_discord(&rho, 10.0, Side::B).unwrap();
            let (weak, _) = super_discord(&rho, 1e-4, Side::B).unwrap();
            ((strong - d).abs(), (weak - mi).abs())
        })
        .collect();
    let strong = gaps.iter().map(|g| g.0).fold(0.0, f64::max);
    let weak = gaps.iter().map(|g| g.1).fold(0.0, f64::max);
    criterion(
        "measurement-strength limits",
        strong <= 1e-3 && weak <= 5e-3,
        format!("max |D_w(10)-D| {strong:e}, max |D_w(1e-4)-I| {weak:e}"),
    )
}

fn local_unitary_invariance() -> Criterion {
    let worst = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let rho = random_density(50_000 + i);
            let (u, v) = random_local_unitary(60_000 + i);
            let rotated = rho.conjugated(&u.kron(&v)).unwrap();
            [Side::A, Side::B]
                .iter()
                .map(|&side| {
                    let (a, _) = super_discord(&rho, 1.0, side).unwrap();
                    let (b, _) = super_discord(&rotated, 1.0, side).unwrap();
                    (a - b).abs()
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    criterion(
        "local-unitary invariance",
        worst <= 1e-4,
        format!("max |delta D_w| over 50 triples {worst:e}"),
    )
}

fn maximally_mixed() -> Criterion {
    let rho = DensityMatrix::maximally_mixed(4).unwrap();
    let mut worst = 0.0_f64;
    for x in X_SET {
        let r = analyze(&rho, x, Side::B).unwrap();
        worst = worst
            .max(r.mutual_info)
            .max(r.classical_corr)
            .max(r.discord)
            .max(r.super_discord);
    }
    criterion(
        "maximally mixed state",
        worst <= 1e-9,
        format!("largest of I, C, D, D_w at x in {{0.5, 1, 2}}: {worst:e}"),
    )
}

fn rra_analytic_numeric() -> Criterion {
    let cs = linspace(0.0, 1.0, 20);
    let xs = linspace(0.05, 2.0, 20);
    let thetas = linspace(0.0, FRAC_PI_2, 20);
    let (lambda_err, p_err) = cs
        .par_iter()
        .map(|&c| {
            let rho = rra_optimal_state(c).unwrap();
            let mut worst = (0.0_f64, 0.0_f64);
            for &x in &xs {
                for &theta in &thetas {
                    let pair = WeakMeasurementPair::new(x, MeasurementBasis::from_angles(theta, 0.0)).unwrap();
                    let (plus, minus) = weak_outcomes(&rho, &pair, Side::A).unwrap();
                    for (s, o) in [(x, plus), (-x, minus)] {
                        worst.1 = worst.1.max((rra_p_x(c, s, theta).unwrap() - o.probability).abs());
                        let (lp, lm) = rra_lambda(c, s, theta).unwrap();
                        let spec = o.conditional.spectrum();
                        worst.0 = worst.0.max((lp - spec[1]).abs()).max((lm - spec[0]).abs());
                    }
                }
            }
            worst
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    let entropy_err = linspace(0.0, 1.0, 50)
        .into_iter()
        .map(|c| {
            let rho = rra_optimal_state(c).unwrap();
            (entropy(&rho) - entropy(&partial_trace(&rho, Side::A).unwrap())).abs()
        })
        .fold(0.0, f64::max);
    criterion(
        "RRA analytic/numeric equivalence",
        lambda_err <= 1e-10 && p_err <= 1e-12 && entropy_err <= 1e-10,
        format!("lambda {lambda_err:e}, p(x) {p_err:e}, |S(AB)-S(A)| {entropy_err:e}"),
    )
}

fn rra_correlation_structure() -> Criterion {
    let cs = [0.2, 0.35, 0.5, 0.65, 0.8];
    let mut max_left = 0.0_f64;
    let mut min_right = f64::INFINITY;
    let mut min_dw = f64::INFINITY;
    for c in cs {
        let rho = rra_optimal_state(c).unwrap();
        max_left = max_left.max(discord(&rho, Side::A).unwrap());
        min_right = min_right.min(discord(&rho, Side::B).unwrap());
        for x in X_SET {
            min_dw = min_dw.min(rra_super_discord(c, x).unwrap().0);
        }
    }
    let mut max_boundary = 0.0_f64;
    for c in [0.0, 1.0] {
        for x in X_SET {
            max_boundary = max_boundary.max(rra_super_discord(c, x).unwrap().0);
        }
    }
    criterion(
        "RRA correlation structure",
        max_left <= 1e-6 && min_right >= 1e-3 && min_dw >= 1e-3 && max_boundary <= 1e-6,
        format!(
            "max D(side A) {max_left:e}, min D(side B) {min_right:e}, min D_w(B:A) {min_dw:e}, \
             boundary max {max_boundary:e}"
        ),
    )
}

fn surface_shape() -> Criterion {
    let mut monotone = true;
    for c in [0.3, 0.5, 0.7] {
        let values: Vec<f64> = (1..=10)
            .map(|k| rra_super_discord(c, 0.2 * k as f64).unwrap().0)
            .collect();
        monotone &= values.windows(2).all(|w| w[1] < w[0]);
    }
    let start = Instant::now();
    let records = sweep(&default_c_grid(), &default_x_grid()).unwrap();
    let elapsed = start.elapsed();
    let step = records.len() / 50;
    let two_path = (0..50)
        .into_par_iter()
        .map(|k| {
            let r = records[k * step];
            let rho = rra_optimal_state(r.c).unwrap();
            let (generic, _) = super_discord(&rho, r.x, Side::A).unwrap();
            (generic - r.super_discord).abs()
        })
        .reduce(|| 0.0, f64::max);
    let nonneg = records.iter().all(|r| r.super_discord >= -1e-9);
    criterion(
        "super discord surface shape",
        monotone && records.len() == 2040 && nonneg && elapsed < Duration::from_secs(300) && two_path <= 1e-5,
        format!(
            "strictly decreasing in x: {monotone}, sweep {} cells in {elapsed:?}, \
             two-path max diff {two_path:e}",
            records.len()
        ),
    )
}

#[test]
fn acceptance() {
    let results = [
        operator_identities(),
        inequality_chain(),
        theorem_equivalence(),
        strength_limits(),
        local_unitary_invariance(),
        maximally_mixed(),
        rra_analytic_numeric(),
        rra_correlation_structure(),
        surface_shape(),
    ];
    let failed: Vec<_> = results.iter().filter(|c| !c.passed).collect();
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed.len(),
        results.len()
    );
    assert!(
        failed.is_empty(),
        "failed criteria: {:?}",
        failed.iter().map(|c| (c.name, &c.detail)).collect::<Vec<_>>()
    );
}
