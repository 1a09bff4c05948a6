//! Brute-force reference evolution on the full truncated space qubit ⊗ qubit ⊗ Fock.
//!
//! The Hamiltonian is assembled from Kronecker products of single-site operators and
//! diagonalized as one dense matrix. Nothing here reuses the manifold propagation code;
//! only the field preparation and `qstate` utilities are shared.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{check_grid, ManifoldEngine, ModelParams};
use crate::qstate::{
    hermitian_eigensystem, hermiticity_deviation, partial_trace_field, DensityMatrix, MaxAbs,
    PureState, Spectrum,
};
use crate::{Error, Result};

/// Largest Fock cutoff the dense oracle accepts.
pub const MAX_ORACLE_CUTOFF: usize = 4096;
/// Engines agree when the elementwise deviation is below this.
pub const PASS_THRESHOLD: f64 = 1e-8;
/// Above this the engines are taken to disagree on a basis convention.
pub const CONVENTION_MISMATCH_THRESHOLD: f64 = 1e-4;
/// Extra Fock levels the oracle keeps above the manifold layout.
pub const ORACLE_EXTRA_LEVELS: usize = 2;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn sigma_z() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
}

/// `σ_+ = |e⟩⟨g|` with `|e⟩` as basis index 0.
fn sigma_plus() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)])
}

fn annihilation(n_max: usize) -> DMatrix<Complex64> {
    let levels = n_max + 1;
    DMatrix::from_fn(levels, levels, |i, j| {
        if j == i + 1 {
            c((j as f64).sqrt())
        } else {
            c(0.0)
        }
    })
}

fn kron3(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    f: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    a.kronecker(b).kronecker(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian {
    pub matrix: DMatrix<Complex64>,
    pub n_max: usize,
    pub delta: f64,
}

impl DenseHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |[H, N_exc]|`.
    pub fn excitation_commutator(&self) -> f64 {
        let n = excitation_operator(self.n_max);
        (&self.matrix * &n - &n * &self.matrix).max_abs()
    }

    pub fn expectation(&self, psi: &PureState) -> f64 {
        let v = psi.amplitudes();
        v.dotc(&(&self.matrix * v)).re
    }
}

/// `Σ_j (Δ/2) σ_z^(j) + ψ† σ_-^(j) + ψ σ_+^(j)` on qubit ⊗ qubit ⊗ Fock(n_max + 1).
pub fn build_full_hamiltonian(delta: f64, n_max: usize) -> Result<DenseHamiltonian> {
    if n_max > MAX_ORACLE_CUTOFF {
        return Err(Error::CutoffCap {
            required: n_max,
            cap: MAX_ORACLE_CUTOFF,
        });
    }
    if !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("detuning {delta}")));
    }
    let id2 = DMatrix::<Complex64>::identity(2, 2);
    let idf = DMatrix::<Complex64>::identity(n_max + 1, n_max + 1);
    let a = annihilation(n_max);
    let a_dag = a.adjoint();
    let sp = sigma_plus();
    let sm = sp.adjoint();
    let sz = sigma_z();

    let mut h = (kron3(&sz, &id2, &idf) + kron3(&id2, &sz, &idf)).scale(delta / 2.0);
    h += kron3(&sm, &id2, &a_dag) + kron3(&sp, &id2, &a);
    h += kron3(&id2, &sm, &a_dag) + kron3(&id2, &sp, &a);

    let deviation = hermiticity_deviation(&h);
    if deviation >= 1e-12 {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(DenseHamiltonian {
        matrix: h,
        n_max,
        delta,
    })
}

/// Total excitation number `n_e^(a) + n_e^(b) + ψ†ψ` on the same space.
pub fn excitation_operator(n_max: usize) -> DMatrix<Complex64> {
    let id2 = DMatrix::<Complex64>::identity(2, 2);
    let idf = DMatrix::<Complex64>::identity(n_max + 1, n_max + 1);
    let excited = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    let a = annihilation(n_max);
    let number = a.adjoint() * a;
    kron3(&excited, &id2, &idf) + kron3(&id2, &excited, &idf) + kron3(&id2, &id2, &number)
}

/// `ψ(τ) = V e^{-iΛτ} V† ψ₀`. Diagonalizes on every call; use [`DenseEvolver`] for grids.
pub fn evolve_dense(h: &DenseHamiltonian, psi0: &PureState, tau: f64) -> Result<PureState> {
    DenseEvolver::new(h)?.evolve(psi0, tau)
}

/// A dense Hamiltonian with its eigendecomposition cached.
#[derive(Debug, Clone)]
pub struct DenseEvolver {
    spectrum: Spectrum,
    n_max: usize,
}

impl DenseEvolver {
    pub fn new(h: &DenseHamiltonian) -> Result<Self> {
        Ok(Self {
            spectrum: hermitian_eigensystem(&h.matrix)?,
            n_max: h.n_max,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn evolve(&self, psi0: &PureState, tau: f64) -> Result<PureState> {
        let dim = self.spectrum.values.len();
        if psi0.dim() != dim {
            return Err(Error::Layout {
                expected: dim,
                actual: psi0.dim(),
            });
        }
        let v = &self.spectrum.vectors;
        let coeffs = v.adjoint() * psi0.amplitudes();
        let phased = DVector::from_iterator(
            dim,
            coeffs
                .iter()
                .zip(&self.spectrum.values)
                .map(|(z, &e)| z * Complex64::from_polar(1.0, -e * tau)),
        );
        PureState::new(v * phased)
    }
}

/// Product initial state `(a1|e⟩+b1|g⟩) ⊗ (a2|e⟩+b2|g⟩) ⊗ Σ w_m|m⟩` in the oracle layout.
pub fn initial_state(params: &ModelParams, n_max: usize) -> Result<PureState> {
    params.validate()?;
    let field = params.field.weights()?;
    if field.n_max() > n_max {
        return Err(Error::CutoffOverflow {
            n_max,
            weight: field.weights()[n_max + 1..].iter().map(|w| w * w).sum(),
        });
    }
    let qa = DVector::from_vec(vec![params.a1, params.b1]);
    let qb = DVector::from_vec(vec![params.a2, params.b2]);
    let mut f = DVector::from_element(n_max + 1, c(0.0));
    for (m, &w) in field.weights().iter().enumerate() {
        f[m] = c(w);
    }
    PureState::new(qa.kronecker(&qb).kronecker(&f))
}

/// Knobs for [`deviation_report_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeviationOptions {
    pub extra_levels: usize,
    /// Relabel `|ee⟩ ↔ |gg⟩` in the manifold result before comparing. Negative control
    /// for the convention check; never set it outside of tests.
    pub misorder_basis: bool,
}

impl Default for DeviationOptions {
    fn default() -> Self {
        Self {
            extra_levels: ORACLE_EXTRA_LEVELS,
            misorder_basis: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    /// `max_τ max_ij |ρ_manifold − ρ_oracle|`.
    pub max_deviation: f64,
    pub argmax_tau: f64,
    pub field_n_max: usize,
    pub manifold_n_max: usize,
    pub oracle_n_max: usize,
    pub points: usize,
    /// Deviation above [`CONVENTION_MISMATCH_THRESHOLD`].
    pub convention_mismatch: bool,
    pub manifold_states: Vec<DensityMatrix>,
    pub oracle_states: Vec<DensityMatrix>,
}

impl DeviationReport {
    pub fn passed(&self) -> bool {
        self.max_deviation < PASS_THRESHOLD
    }
}

pub fn deviation_report(params: &ModelParams, taus: &[f64]) -> Result<DeviationReport> {
    deviation_report_with(params, taus, DeviationOptions::default())
}

/// Runs both engines on the same grid and reports their largest disagreement on `ρ_ab`.
pub fn deviation_report_with(
    params: &ModelParams,
    taus: &[f64],
    options: DeviationOptions,
) -> Result<DeviationReport> {
    check_grid(taus)?;
    if taus.is_empty() {
        return Err(Error::InvalidParameter("empty time grid".into()));
    }
    let engine = ManifoldEngine::new(params)?;
    let oracle_n_max = engine.n_max() + options.extra_levels;
    let evolver = DenseEvolver::new(&build_full_hamiltonian(params.delta, oracle_n_max)?)?;
    let psi0 = initial_state(params, oracle_n_max)?;

    let pairs: Vec<(DensityMatrix, DensityMatrix)> = taus
        .par_iter()
        .map(|&t| {
            let mut manifold = engine.reduced_at(t)?;
            if options.misorder_basis {
                manifold = swap_ee_gg(&manifold)?;
            }
            let oracle = partial_trace_field(&evolver.evolve(&psi0, t)?, oracle_n_max)?;
            Ok((manifold, oracle))
        })
        .collect::<Result<_>>()?;

    let mut max_deviation = 0.0;
    let mut argmax_tau = taus[0];
    for (&t, (m, o)) in taus.iter().zip(&pairs) {
        let d = (m.matrix() - o.matrix()).max_abs();
        if d > max_deviation {
            max_deviation = d;
            argmax_tau = t;
        }
    }
    let (manifold_states, oracle_states) = pairs.into_iter().unzip();
    Ok(DeviationReport {
        max_deviation,
        argmax_tau,
        field_n_max: engine.field().n_max(),
        manifold_n_max: engine.n_max(),
        oracle_n_max,
        points: taus.len(),
        convention_mismatch: max_deviation > CONVENTION_MISMATCH_THRESHOLD,
        manifold_states,
        oracle_states,
    })
}

fn swap_ee_gg(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let perm = [3, 1, 2, 0];
    let m = rho.matrix();
    DensityMatrix::new(DMatrix::from_fn(4, 4, |i, j| m[(perm[i], perm[j])]))
}
