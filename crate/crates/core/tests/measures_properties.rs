use std::f64::consts::PI;

use chargeq::measures::*;
use chargeq::qstate::{von_neumann_entropy, DensityMatrix};
use chargeq::random::{random_density_matrix, random_local_unitary};
use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn states(seed: u64, count: usize) -> Vec<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_density_matrix(&mut rng, 4))
        .collect()
}

fn random_basis(rng: &mut ChaCha8Rng) -> MeasurementBasis {
    MeasurementBasis::new(rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI))
}

#[test]
fn local_unitary_invariance() {
    let opt = OptimizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cases: Vec<(DensityMatrix, DMatrix<Complex64>)> = (0..40)
        .map(|_| {
            (
                random_density_matrix(&mut rng, 4),
                random_local_unitary(&mut rng),
            )
        })
        .collect();
    cases.par_iter().for_each(|(rho, u)| {
        let rotated = rho.conjugate_by(u).unwrap();
        let x = evaluate_all(rho, 0.0, &opt);
        let y = evaluate_all(&rotated, 0.0, &opt);
        for (name, a, b, tol) in [
            ("T_c", x.total, y.total, 1e-10),
            ("Q_c", x.quantum, y.quantum, 1e-10),
            ("C_c", x.classical, y.classical, 1e-10),
            ("I_Lo", x.local_information, y.local_information, 1e-10),
            ("Q_def", x.quantum_deficit, y.quantum_deficit, 1e-5),
            ("C_def", x.classical_deficit, y.classical_deficit, 1e-5),
        ] {
            assert!((a - b).abs() < tol, "{name}: {a} vs {b}");
        }
    });
}

#[test]
fn negativity_bounds_and_separable_fixtures() {
    for rho in states(32, 1000) {
        let q = negativity(&rho).unwrap();
        assert!((0.0..=1.0).contains(&q));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..200 {
        // convex mixture of up to four product states
        let terms = rng.random_range(1..=4);
        let mut weights: Vec<f64> = (0..terms).map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let mut m = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
        for w in weights {
            let a = random_density_matrix(&mut rng, 2);
            let b = random_density_matrix(&mut rng, 2);
            m += DensityMatrix::product(&a, &b).unwrap().matrix().scale(w);
        }
        let rho = DensityMatrix::from_hermitized(m).unwrap();
        assert!(negativity(&rho).unwrap() < 1e-10);
    }
}

#[test]
fn dephasing_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for rho in states(35, 1000) {
        let a = random_basis(&mut rng);
        let b = random_basis(&mut rng);
        let d = dephase(&rho, &a, &b).unwrap();
        assert!((d.matrix().trace().re - 1.0).abs() < 1e-10);
        let s0 = von_neumann_entropy(&rho).unwrap();
        let s1 = von_neumann_entropy(&d).unwrap();
        assert!(s1 >= s0 - 1e-10, "{s1} < {s0}");
    }
}

#[test]
fn projectors_are_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..100 {
        let [p0, p1] = random_basis(&mut rng).projectors();
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!((&p0 + &p1 - id).iter().all(|z| z.norm() < 1e-14));
        assert!((&p0 * &p1).iter().all(|z| z.norm() < 1e-14));
    }
}

#[test]
fn feasibility_and_unitality_bounds() {
    let opt = OptimizerConfig::default();
    states(37, 1000).par_iter().for_each(|rho| {
        let rec = evaluate_all(rho, 0.0, &opt);
        assert!(!rec.has_warnings(), "{:?}", rec.warnings);
        assert!(
            rec.classical_deficit >= -1e-6,
            "C_def = {}",
            rec.classical_deficit
        );
        assert!(
            rec.quantum_deficit >= -1e-6,
            "Q_def = {}",
            rec.quantum_deficit
        );
        assert!((rec.classical - (rec.total - rec.quantum)).abs() < 1e-12);
        let info = 2.0 - rec.s_ab;
        let sum = rec.quantum_deficit + rec.classical_deficit;
        assert!((sum - (info - rec.local_information)).abs() < 2e-6);
    });
}

/// Conditional operators `⟨a_k| ρ |a_k⟩` on qubit b for one basis of qubit a.
fn conditionals(rho: &DensityMatrix, a: &MeasurementBasis) -> [Matrix2<Complex64>; 2] {
    let m = rho.matrix();
    a.vectors().map(|v| {
        Matrix2::from_fn(|j, l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                for k in 0..2 {
                    acc += v[i].conj() * m[(2 * i + j, 2 * k + l)] * v[k];
                }
            }
            acc
        })
    })
}

fn grid_minimum(rho: &DensityMatrix, n: usize) -> f64 {
    let bases: Vec<MeasurementBasis> = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                MeasurementBasis::new(i as f64 * PI / n as f64, j as f64 * 2.0 * PI / n as f64)
            })
        })
        .collect();
    let vectors: Vec<[[Complex64; 2]; 2]> = bases.iter().map(|b| b.vectors()).collect();
    bases
        .par_iter()
        .map(|a| {
            let cond = conditionals(rho, a);
            let mut best = f64::INFINITY;
            for vb in &vectors {
                let mut s = 0.0;
                for c in &cond {
                    for v in vb {
                        let p = (v[0].conj() * (c[(0, 0)] * v[0] + c[(0, 1)] * v[1])
                            + v[1].conj() * (c[(1, 0)] * v[0] + c[(1, 1)] * v[1]))
                            .re;
                        if p > 0.0 {
                            s -= p * p.log2();
                        }
                    }
                }
                best = best.min(s);
            }
            best
        })
        .reduce(|| f64::INFINITY, f64::min)
}

#[test]
fn optimizer_beats_coarse_grid() {
    let opt = OptimizerConfig::default();
    for rho in states(38, 50) {
        let loz = localizable_information(&rho, &opt).unwrap();
        let grid_best = 2.0 - grid_minimum(&rho, 32);
        assert!(
            loz.value >= grid_best - 1e-4,
            "optimizer {} < grid {}",
            loz.value,
            grid_best
        );
    }
}
