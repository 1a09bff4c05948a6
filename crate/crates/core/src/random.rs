//! Random fixtures for property checks: Haar-like pure states, Wishart-style mixed
//! states and local unitaries.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::qstate::DensityMatrix;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalized vector of complex Gaussians (Haar-distributed direction).
pub fn random_pure_amplitudes<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    DensityMatrix::pure(&random_pure_amplitudes(rng, dim)).expect("normalized by construction")
}

/// `G G† / tr(G G†)` with `G` a `dim × rank` complex Gaussian matrix.
pub fn random_mixed_state<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> DensityMatrix {
    let g = DMatrix::from_fn(dim, rank, |_, _| gaussian(rng));
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::from_hermitized(w.unscale(tr)).expect("Wishart matrix is a valid state")
}

/// Alternates between pure states and mixed states of random rank so both ends of the
/// spectrum are covered.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    if rng.random_bool(0.25) {
        random_pure_state(rng, dim)
    } else {
        let rank = rng.random_range(1..=dim);
        random_mixed_state(rng, dim, rank)
    }
}

/// Haar unitary via Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DMatrix<Complex64> {
    let mut u = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex64 = u.column(k).dotc(&u.column(j));
            let col_k = u.column(k).clone_owned();
            let mut col_j = u.column_mut(j);
            col_j -= col_k * proj;
        }
        let n = u.column(j).norm();
        u.column_mut(j).unscale_mut(n);
    }
    u
}

/// `U_a ⊗ U_b` with independent Haar factors.
pub fn random_local_unitary<R: Rng + ?Sized>(rng: &mut R) -> DMatrix<Complex64> {
    let a = random_unitary(rng, 2);
    let b = random_unitary(rng, 2);
    a.kronecker(&b)
}
