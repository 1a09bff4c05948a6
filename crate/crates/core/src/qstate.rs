//! Density-matrix algebra for one and two qubits.
//!
//! Basis ordering is fixed crate-wide: a single qubit is `{|e⟩, |g⟩}` and a pair is
//! `|ee⟩, |eg⟩, |ge⟩, |gg⟩` (qubit a is the most significant index). Joint qubit-field
//! vectors are laid out as qubit-a ⊗ qubit-b ⊗ Fock, so the amplitude of
//! `|pair, photons⟩` sits at `pair * (n_max + 1) + photons`.

use nalgebra::{DMatrix, DVector, Dim, Matrix, RawStorage, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

/// Maximum tolerated `|M - M†|` entry.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Maximum tolerated `|tr ρ - 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-NEGATIVE_EIG_TOL, 0)` are round-off; anything lower is an error.
pub const NEGATIVE_EIG_TOL: f64 = 1e-10;
/// Maximum tolerated `| ‖ψ‖² - 1 |`.
pub const NORM_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest entry modulus of a complex matrix or vector.
pub trait MaxAbs {
    fn max_abs(&self) -> f64;
}

impl<R: Dim, C: Dim, S: RawStorage<Complex64, R, C>> MaxAbs for Matrix<Complex64, R, C, S> {
    fn max_abs(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Selects one qubit of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qubit {
    A,
    B,
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Layout {
                expected: 1,
                actual: 0,
            });
        }
        let norm_sqr = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(amplitudes))
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn into_inner(self) -> DVector<Complex64> {
        self.amplitudes
    }
}

/// A validated one- or two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (down to round-off).
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || (dim != 2 && dim != 4) {
            return Err(Error::Dimension(dim));
        }
        let deviation = hermiticity_deviation(&entries);
        if !(deviation < HERMITIAN_TOL) {
            return Err(Error::NotHermitian { deviation });
        }
        let trace_error = (entries.trace().re - 1.0).abs();
        if !(trace_error <= TRACE_TOL) {
            return Err(Error::Trace(trace_error));
        }
        let eigenvalues = hermitian_eigensystem(&entries)?.values;
        let min = eigenvalues.last().copied().unwrap_or(0.0);
        if min < -NEGATIVE_EIG_TOL {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(Self {
            entries,
            eigenvalues,
        })
    }

    /// Like [`DensityMatrix::new`], after replacing `M` by `(M + M†)/2`.
    pub fn from_hermitized(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Dimension(entries.nrows()));
        }
        let sym = (&entries + entries.adjoint()).scale(0.5);
        Self::new(sym)
    }

    /// `|ψ⟩⟨ψ|` for a normalized 2- or 4-component vector.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let psi = PureState::from_slice(amplitudes)?;
        let v = psi.amplitudes();
        Self::new(v * v.adjoint())
    }

    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        let d = DVector::from_iterator(
            probabilities.len(),
            probabilities.iter().map(|&p| Complex64::new(p, 0.0)),
        );
        Self::new(DMatrix::from_diagonal(&d))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0 / dim as f64; dim])
    }

    /// `ρ_a ⊗ ρ_b` for two single-qubit states.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        if a.dim() != 2 || b.dim() != 2 {
            return Err(Error::Dimension(a.dim() * b.dim()));
        }
        Self::from_hermitized(a.entries.kronecker(&b.entries))
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Eigenvalues in descending order, as computed at construction.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn trace_error(&self) -> f64 {
        (self.entries.trace().re - 1.0).abs()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        hermiticity_deviation(&self.entries)
    }

    /// Applies `U ρ U†` for a unitary of matching dimension.
    pub fn conjugate_by(&self, unitary: &DMatrix<Complex64>) -> Result<Self> {
        Self::from_hermitized(unitary * &self.entries * unitary.adjoint())
    }
}

/// Largest eigenvalue first; eigenvectors are the matching columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Spectrum {
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let lambda = DMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        &self.vectors * lambda * self.vectors.adjoint()
    }

    /// `V e^{-iΛτ} V†`.
    pub fn exp_i(&self, tau: f64) -> DMatrix<Complex64> {
        let phases = DVector::from_iterator(
            self.values.len(),
            self.values
                .iter()
                .map(|&x| Complex64::from_polar(1.0, -x * tau)),
        );
        let scaled = DMatrix::from_fn(self.vectors.nrows(), self.vectors.ncols(), |i, j| {
            self.vectors[(i, j)] * phases[j]
        });
        scaled * self.vectors.adjoint()
    }
}

pub fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(d);
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
pub fn hermitian_eigensystem(m: &DMatrix<Complex64>) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Dimension(m.nrows()));
    }
    let deviation = hermiticity_deviation(m);
    if !(deviation < HERMITIAN_TOL) {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Spectrum { values, vectors })
}

/// Traces the resonator out of a qubit-a ⊗ qubit-b ⊗ Fock(n_max + 1) pure state.
pub fn partial_trace_field(global: &PureState, n_max: usize) -> Result<DensityMatrix> {
    let levels = n_max + 1;
    let expected = 4 * levels;
    if global.dim() != expected {
        return Err(Error::Layout {
            expected,
            actual: global.dim(),
        });
    }
    let psi = global.amplitudes();
    let mut rho = DMatrix::from_element(4, 4, ZERO);
    for i in 0..4 {
        for j in i..4 {
            let mut acc = ZERO;
            for m in 0..levels {
                acc += psi[i * levels + m] * psi[j * levels + m].conj();
            }
            if i == j {
                acc.im = 0.0;
            }
            rho[(i, j)] = acc;
            rho[(j, i)] = acc.conj();
        }
    }
    DensityMatrix::new(rho)
}

/// Reduced single-qubit state of a two-qubit density matrix.
pub fn marginal(rho: &DensityMatrix, which: Qubit) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(rho.dim()));
    }
    let m = rho.matrix();
    let mut out = DMatrix::from_element(2, 2, ZERO);
    for x in 0..2 {
        for y in 0..2 {
            out[(x, y)] = (0..2)
                .map(|k| match which {
                    Qubit::A => m[(2 * x + k, 2 * y + k)],
                    Qubit::B => m[(2 * k + x, 2 * k + y)],
                })
                .sum();
        }
    }
    out[(0, 0)].im = 0.0;
    out[(1, 1)].im = 0.0;
    out[(1, 0)] = out[(0, 1)].conj();
    DensityMatrix::new(out)
}

/// Transposes the indices of one qubit. The result is Hermitian with unit trace but
/// may have negative eigenvalues, so it is returned as a bare matrix.
pub fn partial_transpose(rho: &DensityMatrix, which: Qubit) -> Result<DMatrix<Complex64>> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(rho.dim()));
    }
    let m = rho.matrix();
    Ok(DMatrix::from_fn(4, 4, |r, c| {
        let (a, b) = (r / 2, r % 2);
        let (a2, b2) = (c / 2, c % 2);
        match which {
            Qubit::A => m[(2 * a2 + b, 2 * a + b2)],
            Qubit::B => m[(2 * a + b2, 2 * a2 + b)],
        }
    }))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    von_neumann_entropy_base(rho, 2.0)
}

/// Von Neumann entropy with an explicit logarithm base.
pub fn von_neumann_entropy_base(rho: &DensityMatrix, base: f64) -> Result<f64> {
    if !(base > 0.0 && base != 1.0) {
        return Err(Error::InvalidParameter(format!("logarithm base {base}")));
    }
    let mut s = 0.0;
    for &p in rho.eigenvalues() {
        if p < -NEGATIVE_EIG_TOL {
            return Err(Error::NegativeEigenvalue(p));
        }
        if p > 0.0 {
            s -= p * p.ln();
        }
    }
    Ok((s / base.ln()).max(0.0))
}
