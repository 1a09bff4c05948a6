use chargeq::dynamics::*;
use chargeq::oracle::{build_full_hamiltonian, deviation_report, DeviationReport};
use chargeq::qstate::{DensityMatrix, MaxAbs};
use chargeq::random::random_pure_amplitudes;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_params(rng: &mut ChaCha8Rng, field: FieldSpec) -> ModelParams {
    let q1 = random_pure_amplitudes(rng, 2);
    let q2 = random_pure_amplitudes(rng, 2);
    let delta = rng.random_range(-2.0..2.0);
    ModelParams::new(delta, field, q1[0], q1[1], q2[0], q2[1]).unwrap()
}

fn grid(n: usize, end: f64) -> Vec<f64> {
    (0..n).map(|i| end * i as f64 / (n - 1) as f64).collect()
}

fn figure_regimes() -> Vec<ModelParams> {
    let mut out = Vec::new();
    for delta in [0.5, 1.0] {
        for nbar in [10.0, 20.0] {
            out.push(ModelParams::excited(delta, FieldSpec::coherent(nbar)));
            out.push(ModelParams::ground(delta, FieldSpec::coherent(nbar)));
        }
    }
    out
}

#[test]
fn norm_and_excitation_are_conserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 0..20 {
        let field = if k % 2 == 0 {
            FieldSpec::coherent(rng.random_range(0.0..15.0))
        } else {
            FieldSpec::fock(rng.random_range(0..12))
        };
        let params = random_params(&mut rng, field);
        let engine = ManifoldEngine::new(&params).unwrap();
        let n0 = mean_excitation(&engine.state_at(0.0).unwrap(), engine.n_max()).unwrap();
        for tau in grid(41, 30.0) {
            let psi = engine.state_at(tau).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-10);
            let n = mean_excitation(&psi, engine.n_max()).unwrap();
            assert!((n - n0).abs() < 1e-9, "excitation drifted {n0} -> {n}");
        }
    }
}

#[test]
fn block_unitarity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let n = rng.random_range(-2..200);
        let delta = rng.random_range(-3.0..3.0);
        let tau = rng.random_range(0.0..100.0);
        let u = build_block(n, delta).unwrap().propagator(tau);
        let id = DMatrix::<Complex64>::identity(u.nrows(), u.nrows());
        assert!((u.adjoint() * &u - id).max_abs() < 1e-10);
    }
}

#[test]
fn resonant_closed_form_frequencies() {
    for n in 0..500 {
        let cf = closed_form_frequencies(n, 0.0).unwrap();
        let r = (2.0 * (cf.beta.powi(2) + cf.gamma.powi(2))).sqrt();
        let mut mu = cf.mu.to_vec();
        mu.sort_by(f64::total_cmp);
        for (x, y) in mu.iter().zip([-r, 0.0, r]) {
            assert!((x - y).abs() < 1e-10, "n = {n}: {mu:?}");
        }
        assert!(cf.diagnosis.matches());
    }
}

#[test]
fn closed_form_matches_blocks_off_resonance() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let n = rng.random_range(0..300);
        let delta = rng.random_range(-5.0..5.0);
        let cf = closed_form_frequencies(n, delta).unwrap();
        assert!(
            cf.diagnosis.matches(),
            "n = {n}, Δ = {delta}: {:?}",
            cf.diagnosis
        );
        let block = build_block(n, delta).unwrap();
        let tau = rng.random_range(0.0..20.0);
        let u = block.propagator(tau);
        assert!((cf.ee_gg_element(tau) - u[(0, 3)]).norm() < 1e-8);
    }
}

fn swap_qubits(rho: &DensityMatrix) -> DMatrix<Complex64> {
    let perm = [0usize, 2, 1, 3];
    DMatrix::from_fn(4, 4, |r, c| rho.matrix()[(perm[r], perm[c])])
}

#[test]
fn qubit_exchange_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let taus = grid(26, 25.0);
    for _ in 0..10 {
        let field = FieldSpec::coherent(rng.random_range(0.0..12.0));
        let params = random_params(&mut rng, field);
        let direct = reduced_density_series(&params, &taus).unwrap();
        let swapped = reduced_density_series(&params.swapped(), &taus).unwrap();
        for (r, s) in direct.iter().zip(&swapped) {
            assert!((swap_qubits(s) - r.matrix()).max_abs() < 1e-12);
        }
    }
}

#[test]
fn reduced_states_are_valid() {
    let params = ModelParams::excited(0.0, FieldSpec::fock(0));
    for rho in reduced_density_series(&params, &grid(201, 25.0)).unwrap() {
        assert!(rho.trace_error() < 1e-10);
        assert!(rho.hermiticity_deviation() < 1e-12);
        assert!(rho.min_eigenvalue() > -1e-10);
    }
}

fn assert_passes(report: &DeviationReport, bound: f64) {
    assert!(
        report.max_deviation < bound,
        "deviation {:e} at τ = {}",
        report.max_deviation,
        report.argmax_tau
    );
    assert!(!report.convention_mismatch);
}

#[test]
fn oracle_single_manifold_exactness() {
    let params = ModelParams::excited(0.0, FieldSpec::fock(0));
    let report = deviation_report(&params, &grid(51, 10.0)).unwrap();
    assert_passes(&report, 1e-10);
}

#[test]
fn oracle_stationary_state() {
    let params = ModelParams::ground(0.3, FieldSpec::fock(0));
    let report = deviation_report(&params, &grid(11, 10.0)).unwrap();
    assert_passes(&report, 1e-14);
}

#[test]
fn oracle_agrees_on_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for k in 0..8 {
        let field = if k % 2 == 0 {
            FieldSpec::coherent(rng.random_range(0.0..6.0))
        } else {
            FieldSpec::fock(rng.random_range(0..6))
        };
        let params = random_params(&mut rng, field);
        let report = deviation_report(&params, &grid(21, 20.0)).unwrap();
        assert_passes(&report, 1e-8);
    }
}

#[test]
fn oracle_agrees_on_figure_regimes() {
    for params in figure_regimes() {
        let report = deviation_report(&params, &grid(26, 25.0)).unwrap();
        assert_passes(&report, 1e-8);
    }
}

#[test]
fn cutoff_stability_on_figure_regimes() {
    let taus = grid(26, 25.0);
    for params in figure_regimes() {
        let base = ManifoldEngine::new(&params).unwrap();
        let wide = ManifoldEngine::with_cutoff(&params, base.n_max() + 10).unwrap();
        for &t in &taus {
            let d = base.reduced_at(t).unwrap().matrix() - wide.reduced_at(t).unwrap().matrix();
            assert!(d.max_abs() < 1e-10);
        }
    }
}

#[test]
fn energy_is_conserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..5 {
        let field = FieldSpec::coherent(rng.random_range(0.0..8.0));
        let params = random_params(&mut rng, field);
        let engine = ManifoldEngine::new(&params).unwrap();
        let h = build_full_hamiltonian(params.delta, engine.n_max()).unwrap();
        let e0 = h.expectation(&engine.state_at(0.0).unwrap());
        for tau in grid(21, 25.0) {
            let e = h.expectation(&engine.state_at(tau).unwrap());
            assert!((e - e0).abs() < 1e-9, "energy drifted {e0} -> {e}");
        }
    }
}

#[test]
fn hamiltonian_commutes_with_excitation_number() {
    for delta in [-1.0, 0.0, 0.5, 2.0] {
        let h = build_full_hamiltonian(delta, 12).unwrap();
        assert!(h.excitation_commutator() < 1e-12);
    }
}
