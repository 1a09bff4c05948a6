//! Excitation-manifold blocks of the rotating-frame Hamiltonian
//! `H = Σ_j (Δ/2) σ_z^(j) + (ψ† σ_-^(j) + ψ σ_+^(j))`.
//!
//! Manifold `n` is spanned by `|ee,n⟩, |eg,n+1⟩, |ge,n+1⟩, |gg,n+2⟩`. For `n = -1` the
//! `|ee⟩` member does not exist and for `n = -2` only `|gg,0⟩` is left.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[cfg(test)]
use crate::qstate::MaxAbs;
use crate::qstate::{hermitian_eigensystem, Spectrum};
use crate::{Error, Result};

/// Two-qubit configuration, in the crate's canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitPair {
    EE = 0,
    EG = 1,
    GE = 2,
    GG = 3,
}

impl QubitPair {
    pub const ALL: [QubitPair; 4] = [QubitPair::EE, QubitPair::EG, QubitPair::GE, QubitPair::GG];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn excitations(self) -> usize {
        match self {
            QubitPair::EE => 2,
            QubitPair::EG | QubitPair::GE => 1,
            QubitPair::GG => 0,
        }
    }

    /// Diagonal energy `(Δ/2)(σ_z^a + σ_z^b)`.
    fn detuning_energy(self, delta: f64) -> f64 {
        (self.excitations() as f64 - 1.0) * delta
    }

    /// Configurations reachable by de-exciting one qubit, i.e. `σ_-` on a or b.
    fn lowered(self) -> &'static [QubitPair] {
        match self {
            QubitPair::EE => &[QubitPair::GE, QubitPair::EG],
            QubitPair::EG | QubitPair::GE => &[QubitPair::GG],
            QubitPair::GG => &[],
        }
    }
}

/// One basis vector `|pair, photons⟩` of a manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Member {
    pub pair: QubitPair,
    pub photons: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldBlock {
    n: i64,
    delta: f64,
    members: Vec<Member>,
    hamiltonian: DMatrix<f64>,
    spectrum: Spectrum,
}

impl ManifoldBlock {
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `√(n+1)`, the `|ee,n⟩ ↔ |eg,n+1⟩` coupling (0 for the boundary blocks).
    pub fn gamma(&self) -> f64 {
        ((self.n + 1).max(0) as f64).sqrt()
    }

    /// `√(n+2)`, the `|eg,n+1⟩ ↔ |gg,n+2⟩` coupling.
    pub fn beta(&self) -> f64 {
        ((self.n + 2).max(0) as f64).sqrt()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn hamiltonian(&self) -> &DMatrix<f64> {
        &self.hamiltonian
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// `e^{-i H τ}` restricted to this manifold.
    pub fn propagator(&self, tau: f64) -> DMatrix<Complex64> {
        self.spectrum.exp_i(tau)
    }

    /// Position of `pair` inside the block, if present.
    pub fn position(&self, pair: QubitPair) -> Option<usize> {
        self.members.iter().position(|m| m.pair == pair)
    }
}

pub fn build_block(n: i64, delta: f64) -> Result<ManifoldBlock> {
    if n < -2 {
        return Err(Error::InvalidParameter(format!("manifold index {n} < -2")));
    }
    if !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("detuning {delta}")));
    }
    // photons = n + 2 - excitations
    let members: Vec<Member> = QubitPair::ALL
        .iter()
        .filter_map(|&pair| {
            let photons = n + 2 - pair.excitations() as i64;
            (photons >= 0).then_some(Member {
                pair,
                photons: photons as usize,
            })
        })
        .collect();

    let dim = members.len();
    let mut h = DMatrix::zeros(dim, dim);
    for (i, upper) in members.iter().enumerate() {
        h[(i, i)] = upper.pair.detuning_energy(delta);
        for &lower in upper.pair.lowered() {
            if let Some(j) = members.iter().position(|m| m.pair == lower) {
                // ⟨lower, m+1| ψ† σ_- |upper, m⟩ = √(m+1)
                let g = ((upper.photons + 1) as f64).sqrt();
                h[(i, j)] = g;
                h[(j, i)] = g;
            }
        }
    }
    let spectrum = hermitian_eigensystem(&h.map(|x| Complex64::new(x, 0.0)))?;
    Ok(ManifoldBlock {
        n,
        delta,
        members,
        hamiltonian: h,
        spectrum,
    })
}

/// Free-function form of [`ManifoldBlock::propagator`].
pub fn block_propagator(block: &ManifoldBlock, tau: f64) -> DMatrix<Complex64> {
    block.propagator(tau)
}
