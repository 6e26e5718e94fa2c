//! Seeded random ensembles: Ginibre density matrices and Gaussian-orthonormalized
//! local unitaries. Every generator takes an explicit 64-bit seed.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::density::{product_state, validate_density, DensityMatrix};
use crate::linalg::ComplexMatrix;

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

fn ginibre(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let data = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(n, n, data).expect("gaussian draws are finite")
}

fn ginibre_state(rng: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let g = ginibre(rng, n);
    let ggd = g.matmul(&g.adjoint());
    let trace = ggd.trace().re;
    validate_density(ggd.scale_real(1.0 / trace)).expect("G G^dagger / tr is a density matrix")
}

/// `G G^dagger / tr(G G^dagger)` with `G` a 4x4 complex Ginibre matrix.
pub fn random_density(seed: u64) -> DensityMatrix {
    ginibre_state(&mut ChaCha8Rng::seed_from_u64(seed), 4)
}

/// Single-qubit Ginibre state.
pub fn random_qubit_density(seed: u64) -> DensityMatrix {
    ginibre_state(&mut ChaCha8Rng::seed_from_u64(seed), 2)
}

/// `rho_A (x) rho_B` with independent Ginibre factors.
pub fn random_product_state(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = ginibre_state(&mut rng, 2);
    let b = ginibre_state(&mut rng, 2);
    product_state(&a, &b).expect("product of qubit states")
}

/// Gram-Schmidt on the columns of a Gaussian matrix. The resulting `R` factor
/// has a positive real diagonal, which fixes the column phases.
fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let mut q = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut col = g.column(j);
        for k in 0..j {
            let qk = q.column(k);
            let proj: Complex64 = qk.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
            for (c, a) in col.iter_mut().zip(&qk) {
                *c -= proj * a;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (i, c) in col.iter().enumerate() {
            q.set(i, j, c / norm);
        }
    }
    q
}

/// A pair `(U, V)` of 2x2 unitaries for local-unitary tests.
pub fn random_local_unitary(seed: u64) -> (ComplexMatrix, ComplexMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unitary(&mut rng, 2);
    let v = random_unitary(&mut rng, 2);
    (u, v)
}
