use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;

use super::block::{build_block, ManifoldBlock, QubitPair};
use super::field::{FieldSpec, FieldWeights};
use crate::qstate::{partial_trace_field, DensityMatrix, PureState, NORM_TOL};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Model definition in units of the coupling λ.
///
/// Qubit j starts in `a_j|e⟩ + b_j|g⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub delta: f64,
    pub field: FieldSpec,
    pub a1: Complex64,
    pub b1: Complex64,
    pub a2: Complex64,
    pub b2: Complex64,
}

impl ModelParams {
    pub fn new(
        delta: f64,
        field: FieldSpec,
        a1: Complex64,
        b1: Complex64,
        a2: Complex64,
        b2: Complex64,
    ) -> Result<Self> {
        let p = Self {
            delta,
            field,
            a1,
            b1,
            a2,
            b2,
        };
        p.validate()?;
        Ok(p)
    }

    /// Both qubits in `|e⟩`.
    pub fn excited(delta: f64, field: FieldSpec) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self {
            delta,
            field,
            a1: one,
            b1: ZERO,
            a2: one,
            b2: ZERO,
        }
    }

    /// Both qubits in `|g⟩`.
    pub fn ground(delta: f64, field: FieldSpec) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self {
            delta,
            field,
            a1: ZERO,
            b1: one,
            a2: ZERO,
            b2: one,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.delta.is_finite() {
            return Err(Error::InvalidParameter(format!("detuning {}", self.delta)));
        }
        for (name, a, b) in [("qubit 1", self.a1, self.b1), ("qubit 2", self.a2, self.b2)] {
            let norm = a.norm_sqr() + b.norm_sqr();
            if !((norm - 1.0).abs() <= NORM_TOL) {
                return Err(Error::InvalidParameter(format!(
                    "{name} amplitudes have squared norm {norm}"
                )));
            }
        }
        Ok(())
    }

    /// Initial two-qubit amplitudes in canonical order `ee, eg, ge, gg`.
    pub fn pair_amplitudes(&self) -> [Complex64; 4] {
        [
            self.a1 * self.a2,
            self.a1 * self.b2,
            self.b1 * self.a2,
            self.b1 * self.b2,
        ]
    }

    /// The same model with the two qubits exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            a1: self.a2,
            b1: self.b2,
            a2: self.a1,
            b2: self.b1,
            ..*self
        }
    }
}

#[derive(Debug, Clone)]
struct PreparedBlock {
    block: ManifoldBlock,
    /// Global indices of the block members.
    slots: Vec<usize>,
    initial: DVector<Complex64>,
}

/// Exact propagator for the qubit-field state, one excitation manifold at a time.
///
/// Block spectra are computed once at construction; each time point then costs one small
/// matrix-vector product per manifold.
#[derive(Debug, Clone)]
pub struct ManifoldEngine {
    params: ModelParams,
    field: FieldWeights,
    n_max: usize,
    blocks: Vec<PreparedBlock>,
}

impl ManifoldEngine {
    /// Uses the smallest layout that holds every manifold reached from the truncated field:
    /// two Fock levels above the field cutoff.
    pub fn new(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        let field = params.field.weights()?;
        let n_max = field.n_max() + 2;
        Self::assemble(params, field, n_max)
    }

    /// Uses an explicit Fock cutoff for the global layout. Field components within two
    /// levels of the top cannot be propagated; they are dropped if their total weight is
    /// below the truncation epsilon, otherwise this fails.
    pub fn with_cutoff(params: &ModelParams, n_max: usize) -> Result<Self> {
        params.validate()?;
        let full = params.field.weights()?;
        let eps = params.field.truncation_epsilon;
        let field = if n_max < 2 {
            None
        } else {
            full.truncated(n_max - 2, eps)
        };
        let Some(field) = field else {
            let keep = n_max.saturating_sub(1).min(full.n_max() + 1);
            let weight = full.weights()[keep..].iter().map(|w| w * w).sum();
            return Err(Error::CutoffOverflow { n_max, weight });
        };
        Self::assemble(params, field, n_max)
    }

    fn assemble(params: &ModelParams, field: FieldWeights, n_max: usize) -> Result<Self> {
        let levels = n_max + 1;
        let pair = params.pair_amplitudes();
        let w = field.weights();
        let amplitude = |p: QubitPair, photons: usize| -> Complex64 {
            w.get(photons).map_or(ZERO, |&x| pair[p.index()] * x)
        };

        let mut blocks = Vec::new();
        for n in -2..=(field.n_max() as i64) {
            let block = build_block(n, params.delta)?;
            let initial = DVector::from_iterator(
                block.dim(),
                block.members().iter().map(|m| amplitude(m.pair, m.photons)),
            );
            if initial.iter().all(|z| *z == ZERO) {
                continue;
            }
            let slots = block
                .members()
                .iter()
                .map(|m| m.pair.index() * levels + m.photons)
                .collect();
            blocks.push(PreparedBlock {
                block,
                slots,
                initial,
            });
        }
        Ok(Self {
            params: *params,
            field,
            n_max,
            blocks,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Fock cutoff of the global layout.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn field(&self) -> &FieldWeights {
        &self.field
    }

    /// Number of manifolds with non-zero initial population.
    pub fn active_manifolds(&self) -> usize {
        self.blocks.len()
    }

    /// Global state `ψ(τ)` in qubit-a ⊗ qubit-b ⊗ Fock(n_max + 1) layout.
    pub fn state_at(&self, tau: f64) -> Result<PureState> {
        if !tau.is_finite() {
            return Err(Error::InvalidParameter(format!("time {tau}")));
        }
        let mut psi = DVector::from_element(4 * (self.n_max + 1), ZERO);
        // Manifolds occupy disjoint slots, so the assembly order is irrelevant.
        for b in &self.blocks {
            let evolved = b.block.propagator(tau) * &b.initial;
            for (&slot, z) in b.slots.iter().zip(evolved.iter()) {
                psi[slot] = *z;
            }
        }
        PureState::new(psi)
    }

    pub fn reduced_at(&self, tau: f64) -> Result<DensityMatrix> {
        partial_trace_field(&self.state_at(tau)?, self.n_max)
    }
}

/// `ψ(τ)` for the given model.
pub fn propagate(params: &ModelParams, tau: f64) -> Result<PureState> {
    ManifoldEngine::new(params)?.state_at(tau)
}

/// Reduced two-qubit states `ρ_ab(τ)` over an ascending time grid, in grid order.
pub fn reduced_density_series(params: &ModelParams, taus: &[f64]) -> Result<Vec<DensityMatrix>> {
    check_grid(taus)?;
    let engine = ManifoldEngine::new(params)?;
    taus.par_iter().map(|&t| engine.reduced_at(t)).collect()
}

pub(crate) fn check_grid(taus: &[f64]) -> Result<()> {
    if taus.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter(
            "time grid has non-finite entries".into(),
        ));
    }
    if taus.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("time grid is not ascending".into()));
    }
    Ok(())
}

/// Mean total excitation number (qubit excitations plus photons) of a global state.
pub fn mean_excitation(psi: &PureState, n_max: usize) -> Result<f64> {
    let levels = n_max + 1;
    if psi.dim() != 4 * levels {
        return Err(Error::Layout {
            expected: 4 * levels,
            actual: psi.dim(),
        });
    }
    Ok(psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let pair = QubitPair::ALL[i / levels];
            (pair.excitations() + i % levels) as f64 * z.norm_sqr()
        })
        .sum())
}
