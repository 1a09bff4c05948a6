//! Correlation and information-deficit measures of a two-qubit state.
//!
//! Information content of a `d`-dimensional state is `I(σ) = log₂ d − S(σ)`. Localizable
//! information is computed in the zero-way picture: the best complete dephasing in a
//! local product basis, found by multi-start simplex search over the Bloch angles of both
//! bases. This is a lower bound on the supremum over all LOCC protocols.

mod simplex;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qstate::{
    hermitian_eigensystem, marginal, partial_transpose, von_neumann_entropy, DensityMatrix, Qubit,
    NEGATIVE_EIG_TOL,
};
use crate::Result;

pub use simplex::{minimize, SimplexOptions, SimplexResult};

/// Local qubit basis `{cos(θ/2)|e⟩ + e^{iφ} sin(θ/2)|g⟩, −e^{−iφ} sin(θ/2)|e⟩ + cos(θ/2)|g⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub const COMPUTATIONAL: MeasurementBasis = MeasurementBasis {
        theta: 0.0,
        phi: 0.0,
    };

    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Basis whose first vector is `c0|e⟩ + c1|g⟩` up to a global phase.
    pub fn from_first_vector(c0: Complex64, c1: Complex64) -> Self {
        let theta = 2.0 * c1.norm().atan2(c0.norm());
        let phi = if c0.norm() > 0.0 && c1.norm() > 0.0 {
            (c1.arg() - c0.arg()).rem_euclid(2.0 * PI)
        } else {
            0.0
        };
        Self { theta, phi }
    }

    pub fn vectors(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        [
            [Complex64::new(c, 0.0), e * s],
            [-e.conj() * s, Complex64::new(c, 0.0)],
        ]
    }

    pub fn projectors(&self) -> [DMatrix<Complex64>; 2] {
        self.vectors()
            .map(|v| DMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj()))
    }
}

/// Settings for the localizable-information search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// The coarse seeding grid is `grid × grid` over `(θ_a, θ_b)` with `φ = 0`.
    pub grid: usize,
    /// Number of best grid points used as simplex starts.
    pub grid_starts: usize,
    pub random_starts: usize,
    /// Convergence tolerance on the dephased entropy (bits).
    pub tolerance: f64,
    /// Angle tolerance for simplex convergence (radians).
    pub angle_tolerance: f64,
    /// Total objective evaluations allowed across all starts.
    pub max_evals: usize,
    pub initial_step: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid: 8,
            grid_starts: 16,
            random_starts: 4,
            tolerance: 1e-6,
            angle_tolerance: 1e-4,
            max_evals: 20_000,
            initial_step: 0.4,
            seed: 0x5eed_c0de,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizableInformation {
    pub value: f64,
    /// Lowest dephased entropy found, `2 − value`.
    pub dephased_entropy: f64,
    pub basis_a: MeasurementBasis,
    pub basis_b: MeasurementBasis,
    pub evals: usize,
    pub converged: bool,
}

/// Mutual information `S(ρ_a) + S(ρ_b) − S(ρ_ab)`.
pub fn total_correlation(rho: &DensityMatrix) -> Result<f64> {
    let sa = von_neumann_entropy(&marginal(rho, Qubit::A)?)?;
    let sb = von_neumann_entropy(&marginal(rho, Qubit::B)?)?;
    let sab = von_neumann_entropy(rho)?;
    Ok(sa + sb - sab)
}

/// Negativity `Σ|λ| − 1` over the eigenvalues of the partial transpose.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho, Qubit::B)?;
    let spectrum = hermitian_eigensystem(&pt)?;
    let sum: f64 = spectrum
        .values
        .iter()
        .map(|&l| {
            if (-NEGATIVE_EIG_TOL..0.0).contains(&l) {
                0.0
            } else {
                l.abs()
            }
        })
        .sum();
    Ok((sum - 1.0).max(0.0))
}

/// `T_c − Q_c`: mutual information minus negativity.
pub fn classical_correlation(rho: &DensityMatrix) -> Result<f64> {
    Ok(total_correlation(rho)? - negativity(rho)?)
}

/// `log₂ d − S(σ)`.
pub fn information_content(sigma: &DensityMatrix) -> Result<f64> {
    Ok((sigma.dim() as f64).log2() - von_neumann_entropy(sigma)?)
}

/// `I(ρ_a) + I(ρ_b)`.
pub fn local_information(rho: &DensityMatrix) -> Result<f64> {
    Ok(information_content(&marginal(rho, Qubit::A)?)?
        + information_content(&marginal(rho, Qubit::B)?)?)
}

type Pair4 = [[Complex64; 4]; 4];

fn as_array(rho: &DensityMatrix) -> Pair4 {
    let m = rho.matrix();
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

fn product_vector(u: [Complex64; 2], v: [Complex64; 2]) -> [Complex64; 4] {
    [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]]
}

/// Outcome probabilities `⟨u_i ⊗ v_j|ρ|u_i ⊗ v_j⟩`, indexed `2i + j`.
fn outcome_probabilities(rho: &Pair4, a: &MeasurementBasis, b: &MeasurementBasis) -> [f64; 4] {
    let va = a.vectors();
    let vb = b.vectors();
    std::array::from_fn(|k| {
        let x = product_vector(va[k / 2], vb[k % 2]);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..4 {
                row += rho[i][j] * x[j];
            }
            acc += x[i].conj() * row;
        }
        acc.re.max(0.0)
    })
}

fn shannon_bits(p: &[f64]) -> f64 {
    let total: f64 = p.iter().sum();
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| {
            let q = x / total;
            q * q.log2()
        })
        .sum::<f64>()
}

/// Complete local dephasing `Σ_ij (P_i ⊗ Q_j) ρ (P_i ⊗ Q_j)`.
pub fn dephase(
    rho: &DensityMatrix,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<DensityMatrix> {
    let p = outcome_probabilities(&as_array(rho), basis_a, basis_b);
    let va = basis_a.vectors();
    let vb = basis_b.vectors();
    let mut out = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
    for (k, &pk) in p.iter().enumerate() {
        let x = product_vector(va[k / 2], vb[k % 2]);
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] += x[i] * x[j].conj() * pk;
            }
        }
    }
    DensityMatrix::from_hermitized(out)
}

/// Entropy of the dephased state as a function of `(θ_a, φ_a, θ_b, φ_b)`.
fn dephased_entropy(rho: &Pair4, x: &[f64]) -> f64 {
    let a = MeasurementBasis::new(x[0], x[1]);
    let b = MeasurementBasis::new(x[2], x[3]);
    shannon_bits(&outcome_probabilities(rho, &a, &b))
}

fn marginal_eigenbasis(rho: &DensityMatrix, which: Qubit) -> Result<MeasurementBasis> {
    let s = hermitian_eigensystem(marginal(rho, which)?.matrix())?;
    Ok(MeasurementBasis::from_first_vector(
        s.vectors[(0, 0)],
        s.vectors[(1, 0)],
    ))
}

/// `2 − min S(dephase(ρ, basis_a, basis_b))` over local product bases.
///
/// Starts: the marginal eigenbases (which alone guarantee the result is at least
/// `I(ρ_a) + I(ρ_b)`), the best points of a coarse `(θ_a, θ_b)` grid, and a few seeded
/// random angles.
pub fn localizable_information(
    rho: &DensityMatrix,
    opt: &OptimizerConfig,
) -> Result<LocalizableInformation> {
    let r = as_array(rho);
    let mut evals = 0usize;
    let mut best_x = vec![0.0; 4];
    let mut best_f = f64::INFINITY;
    let consider = |x: &[f64], f: f64, best_x: &mut Vec<f64>, best_f: &mut f64| {
        if f < *best_f {
            *best_f = f;
            best_x.copy_from_slice(x);
        }
    };

    let ma = marginal_eigenbasis(rho, Qubit::A)?;
    let mb = marginal_eigenbasis(rho, Qubit::B)?;
    let marginal_start = vec![ma.theta, ma.phi, mb.theta, mb.phi];
    let f = dephased_entropy(&r, &marginal_start);
    evals += 1;
    consider(&marginal_start, f, &mut best_x, &mut best_f);

    let mut grid_points = Vec::with_capacity(opt.grid * opt.grid);
    for ka in 0..opt.grid {
        for kb in 0..opt.grid {
            let x = vec![
                ka as f64 * PI / opt.grid as f64,
                0.0,
                kb as f64 * PI / opt.grid as f64,
                0.0,
            ];
            let f = dephased_entropy(&r, &x);
            evals += 1;
            consider(&x, f, &mut best_x, &mut best_f);
            grid_points.push((x, f));
        }
    }
    // stable sort keeps grid order among ties
    grid_points.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut starts = vec![marginal_start];
    starts.extend(
        grid_points
            .into_iter()
            .take(opt.grid_starts)
            .map(|(x, _)| x),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    for _ in 0..opt.random_starts {
        starts.push(vec![
            rng.random_range(0.0..PI),
            rng.random_range(0.0..2.0 * PI),
            rng.random_range(0.0..PI),
            rng.random_range(0.0..2.0 * PI),
        ]);
    }

    let mut converged = true;
    let margin = 6; // one simplex iteration in four dimensions
    for x0 in &starts {
        let remaining = opt.max_evals.saturating_sub(evals + margin);
        if remaining == 0 {
            converged = false;
            break;
        }
        let res = minimize(
            |x| dephased_entropy(&r, x),
            x0,
            &SimplexOptions {
                f_tol: opt.tolerance,
                x_tol: opt.angle_tolerance,
                initial_step: opt.initial_step,
                max_evals: remaining,
            },
        );
        evals += res.evals;
        converged &= res.converged;
        consider(&res.x, res.value, &mut best_x, &mut best_f);
    }

    Ok(LocalizableInformation {
        value: 2.0 - best_f,
        dephased_entropy: best_f,
        basis_a: MeasurementBasis::new(best_x[0], best_x[1]),
        basis_b: MeasurementBasis::new(best_x[2], best_x[3]),
        evals,
        converged,
    })
}

/// `I(ρ_ab) − I_loz`.
pub fn quantum_deficit(rho: &DensityMatrix, opt: &OptimizerConfig) -> Result<f64> {
    Ok(information_content(rho)? - localizable_information(rho, opt)?.value)
}

/// `I_loz − I_Lo`.
pub fn classical_deficit(rho: &DensityMatrix, opt: &OptimizerConfig) -> Result<f64> {
    Ok(localizable_information(rho, opt)?.value - local_information(rho)?)
}

/// Every measure at one time point. Entropies in bits; negativity is unitless.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub tau: f64,
    pub total: f64,
    pub quantum: f64,
    pub classical: f64,
    pub local_information: f64,
    pub localizable_information: f64,
    pub quantum_deficit: f64,
    pub classical_deficit: f64,
    pub s_ab: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub trace_error: f64,
    pub min_eigenvalue: f64,
    pub optimizer_evals: usize,
    pub warnings: Vec<String>,
}

impl CorrelationRecord {
    fn empty(rho: &DensityMatrix, tau: f64) -> Self {
        Self {
            tau,
            total: f64::NAN,
            quantum: f64::NAN,
            classical: f64::NAN,
            local_information: f64::NAN,
            localizable_information: f64::NAN,
            quantum_deficit: f64::NAN,
            classical_deficit: f64::NAN,
            s_ab: f64::NAN,
            s_a: f64::NAN,
            s_b: f64::NAN,
            trace_error: rho.trace_error(),
            min_eigenvalue: rho.min_eigenvalue(),
            optimizer_evals: 0,
            warnings: Vec::new(),
        }
    }

    pub fn has_warnings(&self) -> bool {
        !self.warnings.is_empty()
    }
}

/// Correlations only (`T_c`, `Q_c`, `C_c`, `I_Lo`); deficit fields stay NaN.
pub fn evaluate_correlations(rho: &DensityMatrix, tau: f64) -> CorrelationRecord {
    let mut rec = CorrelationRecord::empty(rho, tau);
    if let Err(e) = fill_correlations(rho, &mut rec) {
        rec.warnings.push(format!("correlations: {e}"));
    }
    rec
}

/// All measures. Failures are recorded as warnings on the record instead of aborting.
pub fn evaluate_all(rho: &DensityMatrix, tau: f64, opt: &OptimizerConfig) -> CorrelationRecord {
    let mut rec = evaluate_correlations(rho, tau);
    match localizable_information(rho, opt) {
        Ok(loz) => {
            rec.localizable_information = loz.value;
            rec.optimizer_evals = loz.evals;
            rec.quantum_deficit = (2.0 - rec.s_ab) - loz.value;
            rec.classical_deficit = loz.value - rec.local_information;
            if !loz.converged {
                rec.warnings
                    .push(format!("optimizer stopped after {} evaluations", loz.evals));
            }
        }
        Err(e) => rec.warnings.push(format!("localizable information: {e}")),
    }
    rec
}

fn fill_correlations(rho: &DensityMatrix, rec: &mut CorrelationRecord) -> Result<()> {
    let sa = von_neumann_entropy(&marginal(rho, Qubit::A)?)?;
    let sb = von_neumann_entropy(&marginal(rho, Qubit::B)?)?;
    let sab = von_neumann_entropy(rho)?;
    let q = negativity(rho)?;
    rec.s_a = sa;
    rec.s_b = sb;
    rec.s_ab = sab;
    rec.total = sa + sb - sab;
    rec.quantum = q;
    rec.classical = rec.total - q;
    rec.local_information = (1.0 - sa) + (1.0 - sb);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::MaxAbs;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure(&[c(h), c(0.0), c(0.0), c(h)]).unwrap()
    }

    fn classical_mixture() -> DensityMatrix {
        DensityMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap()
    }

    fn werner(p: f64) -> DensityMatrix {
        let m = bell().matrix().scale(p)
            + DensityMatrix::maximally_mixed(4)
                .unwrap()
                .matrix()
                .scale(1.0 - p);
        DensityMatrix::new(m).unwrap()
    }

    fn product() -> DensityMatrix {
        let a = DensityMatrix::pure(&[c(0.6), Complex64::new(0.0, 0.8)]).unwrap();
        let b = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        DensityMatrix::product(&a, &b).unwrap()
    }

    fn pure_product() -> DensityMatrix {
        // |e⟩ ⊗ (|e⟩ + i|g⟩)/√2 rotated away from the computational basis on qubit b
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = [c(h), Complex64::new(0.0, h)];
        let a = DensityMatrix::pure(&[c(1.0), c(0.0)]).unwrap();
        let b = DensityMatrix::pure(&v).unwrap();
        DensityMatrix::product(&a, &b).unwrap()
    }

    #[test]
    fn total_correlation_examples() {
        assert!((total_correlation(&bell()).unwrap() - 2.0).abs() < 1e-12);
        assert!(total_correlation(&product()).unwrap().abs() < 1e-10);
        assert!((total_correlation(&classical_mixture()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negativity_examples() {
        assert!((negativity(&bell()).unwrap() - 1.0).abs() < 1e-12);
        assert!(negativity(&product()).unwrap().abs() < 1e-12);
        // partial-transpose eigenvalues (1+p)/4 (×3) and (1−3p)/4 → 3(0.375) + 0.125 − 1
        assert!((negativity(&werner(0.5)).unwrap() - 0.25).abs() < 1e-12);
        assert!(negativity(&werner(1.0 / 3.0)).unwrap().abs() < 1e-10);
    }

    #[test]
    fn classical_correlation_examples() {
        assert!((classical_correlation(&bell()).unwrap() - 1.0).abs() < 1e-12);
        assert!(classical_correlation(&product()).unwrap().abs() < 1e-10);
        assert!((classical_correlation(&classical_mixture()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn local_information_examples() {
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(local_information(&mixed).unwrap().abs() < 1e-12);
        let eg = DensityMatrix::diagonal(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!((local_information(&eg).unwrap() - 2.0).abs() < 1e-12);
        assert!(local_information(&bell()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn basis_vectors_are_orthonormal() {
        for (t, p) in [(0.0, 0.0), (1.1, 2.3), (PI, 5.0), (0.3, -1.0)] {
            let b = MeasurementBasis::new(t, p);
            let [p0, p1] = b.projectors();
            let id = DMatrix::<Complex64>::identity(2, 2);
            assert!((&p0 + &p1 - id).max_abs() < 1e-14);
            assert!((&p0 * &p1).max_abs() < 1e-14);
        }
    }

    #[test]
    fn first_vector_round_trip() {
        let b = MeasurementBasis::new(1.2, 0.7);
        let [v0, _] = b.vectors();
        let phase = Complex64::from_polar(1.0, 0.4);
        let back = MeasurementBasis::from_first_vector(v0[0] * phase, v0[1] * phase);
        assert!((back.theta - 1.2).abs() < 1e-12);
        assert!((back.phi - 0.7).abs() < 1e-12);
    }

    #[test]
    fn dephasing_examples() {
        let comp = MeasurementBasis::COMPUTATIONAL;
        let d = dephase(&classical_mixture(), &comp, &comp).unwrap();
        assert!((d.matrix() - classical_mixture().matrix()).max_abs() < 1e-15);

        let d = dephase(&bell(), &comp, &comp).unwrap();
        assert!((d.matrix() - classical_mixture().matrix()).max_abs() < 1e-15);

        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        let d = dephase(
            &mixed,
            &MeasurementBasis::new(0.4, 1.0),
            &MeasurementBasis::new(2.0, 3.0),
        )
        .unwrap();
        assert!((d.matrix() - mixed.matrix()).max_abs() < 1e-14);
    }

    #[test]
    fn dephased_entropy_matches_dephase() {
        let rho = werner(0.7);
        let x = [0.3, 1.2, 2.2, 0.5];
        let a = MeasurementBasis::new(x[0], x[1]);
        let b = MeasurementBasis::new(x[2], x[3]);
        let s = von_neumann_entropy(&dephase(&rho, &a, &b).unwrap()).unwrap();
        assert!((s - dephased_entropy(&as_array(&rho), &x)).abs() < 1e-12);
    }

    #[test]
    fn localizable_information_examples() {
        let opt = OptimizerConfig::default();
        let l = localizable_information(&bell(), &opt).unwrap();
        assert!((l.value - 1.0).abs() < 1e-3, "{l:?}");
        assert!(l.converged);
        assert!(l.evals <= opt.max_evals);
        let l = localizable_information(&classical_mixture(), &opt).unwrap();
        assert!((l.value - 1.0).abs() < 1e-3);
        let l = localizable_information(&DensityMatrix::maximally_mixed(4).unwrap(), &opt).unwrap();
        assert!(l.value.abs() < 1e-6);
    }

    #[test]
    fn localizable_information_agrees_with_fine_grid_on_bell() {
        // 64 × 64 grid over (θ_a, θ_b) with φ_a = φ_b = 0 plus φ_b = π
        let r = as_array(&bell());
        let mut best = f64::INFINITY;
        for i in 0..64 {
            for j in 0..64 {
                for phi in [0.0, PI] {
                    let x = [i as f64 * PI / 63.0, 0.0, j as f64 * PI / 63.0, phi];
                    best = best.min(dephased_entropy(&r, &x));
                }
            }
        }
        assert!((best - 1.0).abs() < 1e-12);
        let l = localizable_information(&bell(), &OptimizerConfig::default()).unwrap();
        assert!((l.dephased_entropy - best).abs() < 1e-3);
    }

    #[test]
    fn deficit_examples() {
        let opt = OptimizerConfig::default();
        assert!((quantum_deficit(&bell(), &opt).unwrap() - 1.0).abs() < 1e-3);
        assert!(quantum_deficit(&classical_mixture(), &opt).unwrap().abs() < 1e-3);
        assert!(quantum_deficit(&pure_product(), &opt).unwrap().abs() < 1e-6);

        assert!((classical_deficit(&bell(), &opt).unwrap() - 1.0).abs() < 1e-3);
        assert!((classical_deficit(&classical_mixture(), &opt).unwrap() - 1.0).abs() < 1e-3);
        assert!(classical_deficit(&pure_product(), &opt).unwrap().abs() < 1e-6);
    }

    #[test]
    fn evaluate_all_examples() {
        let opt = OptimizerConfig::default();
        let rec = evaluate_all(&DensityMatrix::maximally_mixed(4).unwrap(), 0.0, &opt);
        for v in [
            rec.total,
            rec.quantum,
            rec.classical,
            rec.local_information,
            rec.localizable_information,
            rec.quantum_deficit,
            rec.classical_deficit,
        ] {
            assert!(v.abs() < 1e-6);
        }

        let rec = evaluate_all(&bell(), 1.5, &opt);
        let expected = [2.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0];
        let got = [
            rec.total,
            rec.quantum,
            rec.classical,
            rec.local_information,
            rec.localizable_information,
            rec.quantum_deficit,
            rec.classical_deficit,
        ];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-3, "{got:?}");
        }
        assert_eq!(rec.tau, 1.5);
        assert!(!rec.has_warnings());
        assert_eq!(rec.classical, rec.total - rec.quantum);
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let opt = OptimizerConfig {
            max_evals: 100,
            ..Default::default()
        };
        let rec = evaluate_all(&werner(0.6), 0.0, &opt);
        assert!(rec.has_warnings());
        assert!(rec.localizable_information.is_finite());
    }
}
