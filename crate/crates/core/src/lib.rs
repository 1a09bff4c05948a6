//! Two superconducting charge qubits coupled to a common stripline resonator.
//!
//! The crate is split along the physics pipeline:
//!
//! * [`qstate`]: density-matrix algebra (partial traces, partial transpose, entropies).
//! * [`dynamics`]: exact propagation of the qubit-field state, one excitation manifold at a time.
//! * [`oracle`]: brute-force propagation on the full truncated Hilbert space, used to check
//!   the manifold engine.
//! * [`measures`]: correlations, negativity, localizable information and the information deficits.
//!
//! All energies are in units of the qubit-resonator coupling λ and time is the
//! dimensionless `tau = λt`. Entropies are in bits unless a base is given explicitly.

pub mod dynamics;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod qstate;
pub mod random;

pub use error::{Error, Result};
