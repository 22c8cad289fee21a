//! Exact pure-dephasing dynamics of an impurity qubit held in a double-well
//! potential and immersed in a homogeneous, thermal Bose-Einstein condensate.
//!
//! The crate is split along the computation:
//!
//! - [`units`] validates laboratory parameters and maps them onto the internal
//!   dimensionless unit system (`ħ = k_B = m_B = 1`, lengths in units of the
//!   impurity wavefunction width `τ`).
//! - [`bogoliubov`] evaluates every wavenumber-dependent factor of the
//!   decoherence integrand.
//! - [`quadrature`] integrates that integrand over `k`, including the
//!   oscillatory long-time regime, and carries a finite-box lattice sum used
//!   as an independent check of the continuum limit.
//! - [`dynamics`] builds the decoherence factor `Γ(t)`, its rate `γ(t)`, the
//!   negative-rate interval and the normalized non-Markovianity measure.
//! - [`sweeps`] runs parameter sweeps and brackets Markovian/non-Markovian
//!   crossovers.
//!
//! The crate is `no_std` (it needs `alloc`); file formats, the command line
//! and parallel execution live in the `bec-probe` companion crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod math;

pub mod bogoliubov;
pub mod dynamics;
pub mod quadrature;
pub mod sweeps;
pub mod units;

pub use error::Error;
pub use units::{Dimension, PhysicalConfig, ReducedParams};

pub type Result<T, E = Error> = core::result::Result<T, E>;
