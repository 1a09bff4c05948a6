//! Trigonometric closed form for the three symmetric-subspace frequencies of a manifold.
//!
//! Used only as a cross-check of the block eigensolver; production propagation never
//! goes through these expressions.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::block::build_block;
use crate::{Error, Result};

/// Agreement threshold between the closed-form frequencies and block eigenvalues.
pub const FREQUENCY_MATCH_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrequencyDiagnosis {
    /// Every `μ_i` lies within [`FREQUENCY_MATCH_TOL`] of a block eigenvalue.
    Matches { max_discrepancy: f64 },
    /// The formulas evaluate but disagree with the block spectrum.
    Mismatch { max_discrepancy: f64 },
    /// `|−27Δ/κ³| > 1`, so `θ₁` is undefined.
    ArccosOutOfDomain { argument: f64 },
}

impl FrequencyDiagnosis {
    pub fn matches(&self) -> bool {
        matches!(self, FrequencyDiagnosis::Matches { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormFrequencies {
    pub n: i64,
    pub delta: f64,
    pub gamma: f64,
    pub beta: f64,
    /// `√(3(Δ² + 2(β² + γ²)))`
    pub kappa: f64,
    /// `−27Δ/κ³`
    pub arccos_argument: f64,
    pub theta: [f64; 3],
    /// `μ_i = (2/3) κ cos θ_i`
    pub mu: [f64; 3],
    /// `1/(μ₁₂μ₁₃)`, `1/(μ₁₂μ₂₃)`, `1/(μ₁₃μ₂₃)`
    pub alpha: [f64; 3],
    pub diagnosis: FrequencyDiagnosis,
}

impl ClosedFormFrequencies {
    /// The `|ee,n⟩ → |gg,n+2⟩` propagator element `2βγ Σ_i (−1)^{i+1} α_i e^{−iμ_i τ}`.
    pub fn ee_gg_element(&self, tau: f64) -> Complex64 {
        let sum: Complex64 = (0..3)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::from_polar(sign * self.alpha[i], -self.mu[i] * tau)
            })
            .sum();
        sum * (2.0 * self.beta * self.gamma)
    }
}

pub fn closed_form_frequencies(n: i64, delta: f64) -> Result<ClosedFormFrequencies> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!(
            "closed form needs a full manifold, got n = {n}"
        )));
    }
    let gamma = ((n + 1) as f64).sqrt();
    let beta = ((n + 2) as f64).sqrt();
    let kappa = (3.0 * (delta * delta + 2.0 * (beta * beta + gamma * gamma))).sqrt();
    let arccos_argument = -27.0 * delta / kappa.powi(3);

    if arccos_argument.abs() > 1.0 {
        return Ok(ClosedFormFrequencies {
            n,
            delta,
            gamma,
            beta,
            kappa,
            arccos_argument,
            theta: [f64::NAN; 3],
            mu: [f64::NAN; 3],
            alpha: [f64::NAN; 3],
            diagnosis: FrequencyDiagnosis::ArccosOutOfDomain {
                argument: arccos_argument,
            },
        });
    }

    let t1 = arccos_argument.acos() / 3.0;
    let t2 = 2.0 * PI / 3.0 + t1;
    let t3 = 2.0 * PI / 3.0 + t2;
    let theta = [t1, t2, t3];
    let mu = theta.map(|t| 2.0 / 3.0 * kappa * t.cos());
    let (m12, m13, m23) = (mu[0] - mu[1], mu[0] - mu[2], mu[1] - mu[2]);
    let alpha = [1.0 / (m12 * m13), 1.0 / (m12 * m23), 1.0 / (m13 * m23)];

    let eigenvalues = build_block(n, delta)?.spectrum().values.clone();
    let max_discrepancy = mu
        .iter()
        .map(|m| {
            eigenvalues
                .iter()
                .map(|e| (m - e).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let diagnosis = if max_discrepancy < FREQUENCY_MATCH_TOL {
        FrequencyDiagnosis::Matches { max_discrepancy }
    } else {
        FrequencyDiagnosis::Mismatch { max_discrepancy }
    };

    Ok(ClosedFormFrequencies {
        n,
        delta,
        gamma,
        beta,
        kappa,
        arccos_argument,
        theta,
        mu,
        alpha,
        diagnosis,
    })
}
