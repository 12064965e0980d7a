//! Screened Floquet low-energy theory for a laser-driven, cavity-coupled
//! two-band Hubbard model.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] holds model parameters, the square-lattice Brillouin-zone
//!   mesh, band dispersions and zero-temperature occupations.
//! * [`screening`] evaluates the Hartree/ladder-screened laser detunings,
//!   the exciton resonance and the electron-hole t-matrix.
//! * [`floquet`] builds the Stark and Bloch-Siegert renormalised lower band
//!   and extracts the effective hopping.
//! * [`cavity`] builds the separable cavity-mediated interaction kernel and
//!   the excitonic enhancement scans.
//! * [`spectra`] computes the mean-field absorbance.
//! * [`ed_oracle`] is an independent dense-matrix check of the resummed
//!   formulas in small systems.
//! * [`config`], [`scan`] and [`scenario`] are the scenario runner used by
//!   the command-line tool.
//!
//! All energies are in eV with ħ = 1. Grid reductions go through
//! [`reduce`], which uses a fixed pairwise tree so results are
//! bit-identical for any number of worker threads.

pub mod cavity;
pub mod config;
pub mod ed_oracle;
pub mod error;
pub mod floquet;
pub mod lattice;
pub mod reduce;
pub mod scan;
pub mod scenario;
pub mod screening;
pub mod spectra;

pub use error::{Error, Result};
pub use lattice::{BzGrid, Band, ModelParams, Momentum, Occupation};
