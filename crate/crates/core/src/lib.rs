//! Rule 184, ballistic annihilation and min-filter surface growth.
//!
//! The crate provides exact finite-lattice dynamics for the three models,
//! the transforms linking them, annihilation-partner combinatorics, the
//! second-class-particle encoding of phase-separated states, and Monte Carlo
//! estimators for their large-scale statistics.

pub mod annihilation;
pub mod dynamics;
pub mod error;
pub mod hydro;
pub mod init;
pub mod lattice;
pub mod measure;
pub mod phase;
pub mod rng;
pub mod stats;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use init::{sample_initial, Config, InitKind, InitSpec};
pub use lattice::{
    BaConfig, Ca184Config, Clock, ConfigClass, HeightProfile, SecondClassPath, Topology,
};
pub use stats::StatReport;
