//! Design calculator and Hamiltonian workbench for two superconducting
//! microwave resonators coupled through a SQUID.
//!
//! The SQUID terminating resonator A acts as a flux-tunable extension of
//! its length. Flux from resonator B's field modulates that length, which
//! gives an interaction of the optomechanical form −ℏg₀ a†a (b + b†).
//!
//! * [`circuit`]: SQUID energy, effective length, adiabatic checks
//! * [`modes`]: λ/4 and λ/2 mode spectra
//! * [`coupling`]: flux factor, geometric factors, g₀
//! * [`fock`], [`diag`], [`hamiltonian`]: truncated Fock-space operators,
//!   diagonalization and the Hamiltonian builders
//! * [`arrays`]: lattices of coupled unit cells
//! * [`config`], [`sweep`], [`spectrum`]: JSON input and tabular output

pub mod arrays;
pub mod circuit;
pub mod config;
pub mod constants;
pub mod coupling;
pub mod diag;
mod error;
pub mod fock;
pub mod hamiltonian;
pub mod modes;
pub mod spectrum;
pub mod sweep;

pub use circuit::{FluxBias, LineParams, ResonatorGeometry, SquidParams, ValidityReport};
pub use config::{load_config, DeviceConfig};
pub use coupling::{CouplingGeometry, GeometryKind, ValidityPolicy};
pub use error::{Error, Result};
pub use fock::FockOperator;
pub use hamiltonian::TwoModeParams;
