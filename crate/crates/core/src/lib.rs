//! Paperfolding words and the runs of equal symbols inside them.
//!
//! [`foldcore`] builds words from unfolding instructions. [`runs`] computes
//! run tables and factor inventories of run-length words. [`automata`]
//! learns and checks multi-track automata for run starts, ends and lengths.
//! [`theorems`] bundles bounded checks into named suites, and [`contfrac`]
//! relates run lengths to continued fractions of dyadic numbers.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod automata;
pub mod cli;
pub mod contfrac;
pub mod error;
pub mod foldcore;
pub mod runs;
pub mod theorems;

pub use error::{Error, Result};
