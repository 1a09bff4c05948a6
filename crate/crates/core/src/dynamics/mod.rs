//! Exact qubit-field dynamics, propagated manifold by manifold.
//!
//! The rotating-wave Hamiltonian conserves the total excitation number, so the joint
//! state splits into independent blocks of dimension at most four. Each block is
//! diagonalized once and `e^{-iHτ}` is applied per block.

mod block;
mod closed_form;
mod engine;
mod field;

pub use block::{block_propagator, build_block, ManifoldBlock, Member, QubitPair};
pub use closed_form::{
    closed_form_frequencies, ClosedFormFrequencies, FrequencyDiagnosis, FREQUENCY_MATCH_TOL,
};
pub use engine::{mean_excitation, propagate, reduced_density_series, ManifoldEngine, ModelParams};
pub use field::{
    coherent_weights, FieldKind, FieldSpec, FieldWeights, DEFAULT_TRUNCATION_EPSILON,
    MAX_PHOTON_CUTOFF,
};

pub(crate) use engine::check_grid;
