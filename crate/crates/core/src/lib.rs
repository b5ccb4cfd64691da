//! Exact computer algebra for deformation problems controlled by differential
//! graded Lie algebras and L∞-algebras.
//!
//! All arithmetic is over the rationals and every object is finite
//! dimensional (truncations are explicit).

pub mod artin_dg;
pub mod dgla_mc;
pub mod error;
pub mod fixtures;
pub mod linfty;
pub mod obstruction;
pub mod graded_linear;
pub mod cli;
pub mod moduli_models;

pub use error::{Error, Result};
