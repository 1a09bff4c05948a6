//! Initial resonator states and their Fock-space truncation.

use crate::{Error, Result};

/// Largest photon cutoff the crate will allocate.
pub const MAX_PHOTON_CUTOFF: usize = 4096;

/// Default probability mass allowed to fall outside the retained Fock levels.
pub const DEFAULT_TRUNCATION_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    /// Coherent state with mean photon number `nbar` and real amplitude `√nbar`.
    Coherent { nbar: f64 },
    /// Photon-number eigenstate `|n⟩`.
    Fock { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub truncation_epsilon: f64,
}

impl FieldSpec {
    pub fn coherent(nbar: f64) -> Self {
        Self {
            kind: FieldKind::Coherent { nbar },
            truncation_epsilon: DEFAULT_TRUNCATION_EPSILON,
        }
    }

    pub fn fock(n: usize) -> Self {
        Self {
            kind: FieldKind::Fock { n },
            truncation_epsilon: DEFAULT_TRUNCATION_EPSILON,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.truncation_epsilon = epsilon;
        self
    }

    pub fn weights(&self) -> Result<FieldWeights> {
        match self.kind {
            FieldKind::Coherent { nbar } => coherent_weights(nbar, self.truncation_epsilon),
            FieldKind::Fock { n } => {
                if n > MAX_PHOTON_CUTOFF {
                    return Err(Error::CutoffCap {
                        required: n,
                        cap: MAX_PHOTON_CUTOFF,
                    });
                }
                let mut weights = vec![0.0; n + 1];
                weights[n] = 1.0;
                Ok(FieldWeights {
                    weights,
                    retained_mass: 1.0,
                })
            }
        }
    }
}

/// Fock amplitudes `w_0 ..= w_{n_max}` of the initial field, normalized to unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldWeights {
    weights: Vec<f64>,
    retained_mass: f64,
}

impl FieldWeights {
    pub fn n_max(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Poisson mass kept before renormalization.
    pub fn retained_mass(&self) -> f64 {
        self.retained_mass
    }

    /// Drops levels above `n_max` and renormalizes. Returns `None` if more than
    /// `epsilon` of the probability would be lost.
    pub fn truncated(&self, n_max: usize, epsilon: f64) -> Option<FieldWeights> {
        if n_max >= self.n_max() {
            return Some(self.clone());
        }
        let lost: f64 = self.weights[n_max + 1..].iter().map(|w| w * w).sum();
        if lost > epsilon {
            return None;
        }
        let mut weights = self.weights[..=n_max].to_vec();
        let norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        weights.iter_mut().for_each(|w| *w /= norm);
        Some(FieldWeights {
            weights,
            retained_mass: self.retained_mass * (1.0 - lost),
        })
    }
}

/// Truncated coherent-state amplitudes `e^{-n̄/2} n̄^{n/2} / √(n!)`, evaluated in log space.
///
/// The cutoff is the smallest `n_max` whose Poisson tail `Σ_{n > n_max} p_n` is below
/// `epsilon`.
pub fn coherent_weights(nbar: f64, epsilon: f64) -> Result<FieldWeights> {
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mean photon number {nbar}"
        )));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "truncation epsilon {epsilon} not in (0, 1)"
        )));
    }
    if nbar == 0.0 {
        return Ok(FieldWeights {
            weights: vec![1.0],
            retained_mass: 1.0,
        });
    }

    // Evaluate well past the cap so the suffix sums see the whole distribution.
    let horizon = 2 * MAX_PHOTON_CUTOFF;
    let ln_nbar = nbar.ln();
    let mut ln_fact = 0.0;
    let mut probs = Vec::with_capacity(horizon + 1);
    for n in 0..=horizon {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        probs.push((n as f64 * ln_nbar - nbar - ln_fact).exp());
    }

    let mut tail = vec![0.0; horizon + 2];
    for n in (0..=horizon).rev() {
        tail[n] = tail[n + 1] + probs[n];
    }

    // Normalizing by the computed total cancels the drift of the summed log-factorials.
    let total = tail[0];
    let mut head = 0.0;
    for n_max in 0..=MAX_PHOTON_CUTOFF {
        head += probs[n_max] / total;
        if tail[n_max + 1] / total < epsilon && head >= 1.0 - epsilon {
            let norm = (head * total).sqrt();
            let weights = probs[..=n_max].iter().map(|p| p.sqrt() / norm).collect();
            return Ok(FieldWeights {
                weights,
                retained_mass: head,
            });
        }
    }
    Err(Error::CutoffCap {
        required: MAX_PHOTON_CUTOFF + 1,
        cap: MAX_PHOTON_CUTOFF,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Smallest cutoffs with Poisson tail < 1e-12, from exact 50-digit summation of
    // e^{-n̄} n̄^n / n!:  n̄ = 10 → 39 (tail 7.34e-13), n̄ = 20 → 59 (tail 4.23e-13).
    const CUTOFF_NBAR_10: usize = 39;
    const CUTOFF_NBAR_20: usize = 59;

    #[test]
    fn vacuum() {
        let w = coherent_weights(0.0, 1e-12).unwrap();
        assert_eq!(w.n_max(), 0);
        assert_eq!(w.weights(), &[1.0]);
    }

    #[test]
    fn cutoffs_match_exact_tails() {
        let w = coherent_weights(10.0, 1e-12).unwrap();
        assert_eq!(w.n_max(), CUTOFF_NBAR_10);
        assert!(w.retained_mass() >= 1.0 - 1e-12);
        let w = coherent_weights(20.0, 1e-12).unwrap();
        assert_eq!(w.n_max(), CUTOFF_NBAR_20);
        assert!(w.retained_mass() >= 1.0 - 1e-12);
    }

    #[test]
    fn weights_are_normalized_and_poissonian() {
        let w = coherent_weights(10.0, 1e-12).unwrap();
        let norm: f64 = w.weights().iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        // p_10 = e^{-10} 10^10 / 10! = 0.1251100357...
        let p10 = w.weights()[10].powi(2);
        assert!((p10 - 0.125_110_035_721_133_3).abs() < 1e-12);
        assert!(w.weights().iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn large_mean_does_not_overflow() {
        let w = coherent_weights(400.0, 1e-12).unwrap();
        assert!(w.weights().iter().all(|x| x.is_finite()));
        assert!(w.n_max() > 400 && w.n_max() < 600);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            coherent_weights(5000.0, 1e-12),
            Err(Error::CutoffCap { .. })
        ));
        assert!(matches!(
            FieldSpec::fock(5000).weights(),
            Err(Error::CutoffCap { .. })
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(coherent_weights(-1.0, 1e-12).is_err());
        assert!(coherent_weights(1.0, 0.0).is_err());
        assert!(coherent_weights(1.0, 1.0).is_err());
    }

    #[test]
    fn truncation_respects_epsilon() {
        let w = coherent_weights(10.0, 1e-12).unwrap();
        assert!(w.truncated(5, 1e-12).is_none());
        let t = w.truncated(35, 1e-8).unwrap();
        assert_eq!(t.n_max(), 35);
        let norm: f64 = t.weights().iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-14);
    }
}
