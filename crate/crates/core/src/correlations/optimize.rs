//! Global search over projective qubit bases: a fixed grid scan on the
//! `(theta, phi)` chart followed by Nelder-Mead refinement from the best cell.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quantum::MeasurementBasis;

pub const GRID_THETA: usize = 64;
pub const GRID_PHI: usize = 64;
pub const SIMPLEX_DIAMETER_TOL: f64 = 1e-9;
pub const SIMPLEX_MAX_ITER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizeMode {
    Min,
    Max,
}

impl OptimizeMode {
    fn sign(self) -> f64 {
        match self {
            OptimizeMode::Min => 1.0,
            OptimizeMode::Max => -1.0,
        }
    }
}

/// Grid point `(i, j)`: theta spans `[0, pi/2]` inclusive, phi spans `[0, 2 pi)`.
fn grid_angles(i: usize, j: usize) -> (f64, f64) {
    let theta = FRAC_PI_2 * i as f64 / (GRID_THETA - 1) as f64;
    let phi = TAU * j as f64 / GRID_PHI as f64;
    (theta, phi)
}

fn evaluate<F>(objective: &F, sign: f64, theta: f64, phi: f64) -> Result<f64>
where
    F: Fn(&MeasurementBasis) -> Result<f64>,
{
    let value = objective(&MeasurementBasis::from_angles(theta, phi))?;
    if !value.is_finite() {
        return Err(Error::NonFiniteObjective { theta, phi });
    }
    Ok(sign * value)
}

/// Optimizes `objective` over all rank-one projective bases.
///
/// Grid cells are evaluated in parallel but reduced in lexicographic
/// `(theta, phi)` order, so the result does not depend on scheduling. The
/// returned value is never worse than the best grid sample.
pub fn optimize_over_bases<F>(objective: F, mode: OptimizeMode) -> Result<(MeasurementBasis, f64)>
where
    F: Fn(&MeasurementBasis) -> Result<f64> + Sync,
{
    let sign = mode.sign();
    let values: Vec<Result<f64>> = (0..GRID_THETA * GRID_PHI)
        .into_par_iter()
        .map(|k| {
            let (theta, phi) = grid_angles(k / GRID_PHI, k % GRID_PHI);
            evaluate(&objective, sign, theta, phi)
        })
        .collect();

    let mut best = (0usize, f64::INFINITY);
    for (k, v) in values.into_iter().enumerate() {
        let v = v?;
        if v < best.1 {
            best = (k, v);
        }
    }
    let (theta0, phi0) = grid_angles(best.0 / GRID_PHI, best.0 % GRID_PHI);
    let steps = [
        FRAC_PI_2 / (GRID_THETA - 1) as f64,
        TAU / GRID_PHI as f64,
    ];
    let (point, value) = nelder_mead(
        |p| evaluate(&objective, sign, p[0], p[1]),
        [theta0, phi0],
        best.1,
        steps,
    )?;
    Ok((MeasurementBasis::from_angles(point[0], point[1]), sign * value))
}

type Point = [f64; 2];

fn diameter(simplex: &[(Point, f64); 3]) -> f64 {
    let mut d = 0.0_f64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let dx = simplex[i].0[0] - simplex[j].0[0];
            let dy = simplex[i].0[1] - simplex[j].0[1];
            d = d.max(dx.hypot(dy));
        }
    }
    d
}

/// Unconstrained 2-D Nelder-Mead (reflection 1, expansion 2, contraction and
/// shrink 1/2). The angles are periodic, so no bounds are needed.
fn nelder_mead<F>(f: F, start: Point, start_value: f64, steps: Point) -> Result<(Point, f64)>
where
    F: Fn(Point) -> Result<f64>,
{
    let p1 = [start[0] + steps[0], start[1]];
    let p2 = [start[0], start[1] + steps[1]];
    let mut simplex = [(start, start_value), (p1, f(p1)?), (p2, f(p2)?)];

    let lerp = |a: Point, b: Point, t: f64| -> Point {
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
    };

    for _ in 0..SIMPLEX_MAX_ITER {
        // stable sort keeps the incumbent first among ties
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if diameter(&simplex) < SIMPLEX_DIAMETER_TOL {
            break;
        }
        let (best, mid, worst) = (simplex[0], simplex[1], simplex[2]);
        let centroid = lerp(best.0, mid.0, 0.5);

        let reflected = lerp(centroid, worst.0, -1.0);
        let fr = f(reflected)?;
        if fr < best.1 {
            let expanded = lerp(centroid, worst.0, -2.0);
            let fe = f(expanded)?;
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < mid.1 {
            simplex[2] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst.1 {
            let c = lerp(centroid, reflected, 0.5);
            (c, f(c)?)
        } else {
            let c = lerp(centroid, worst.0, 0.5);
            (c, f(c)?)
        };
        if fc < worst.1.min(fr) {
            simplex[2] = (contracted, fc);
            continue;
        }
        for k in 1..3 {
            let p = lerp(best.0, simplex[k].0, 0.5);
            simplex[k] = (p, f(p)?);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(simplex[0])
}
