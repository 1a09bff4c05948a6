//! Library side of the `chargeq` command: configuration, scenario runs, sweeps,
//! oracle verification and plotting.

pub mod config;
pub mod error;
pub mod figures;
pub mod plot;
pub mod run;
pub mod sweep;
pub mod verify;

pub use error::CliError;
