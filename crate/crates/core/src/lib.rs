//! Quantized momentum spectra of the Feinberg-Horodecki equation for a
//! Kratzer plus screened Coulomb potential.
//!
//! The closed-form ladder lives in [`spectrum`], eigenfunctions in
//! [`wavefn`], an independent finite-difference check in [`oracle`] and a
//! generic Nikiforov-Uvarov reduction in [`nu`].

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod constants;
pub mod error;
pub mod io;
pub mod mapping;
pub mod molecule;
pub mod nu;
pub mod oracle;
pub mod potential;
pub mod spectrum;
pub mod tridiag;
pub mod wavefn;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use mapping::{Basis, TableMapping, Term};
pub use molecule::Molecule;
pub use potential::{combined_potential, greene_aldrich_potential, PotentialParams};
pub use spectrum::SpectrumResult;
pub use wavefn::WavefunctionSpec;
