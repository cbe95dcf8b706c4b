//! Stability analysis of a dense gas of dipolar oscillators coupled to the
//! transverse electromagnetic field, with the short-range depolarizing contact
//! interaction of the regularized electric-dipole picture kept in.
//!
//! The crate is organised bottom-up:
//!
//! * [`physcore`] – constants, species data and the Dicke critical density.
//! * [`quadrature`] – adaptive Gauss–Kronrod integration used by the kernels.
//! * [`kernels`] – cutoff profiles and the regularized kernels `K(r)`, `u(r)`.
//! * [`meanfield`] – depolarization shift, dispersion function, polariton
//!   branches and the critical density.
//! * [`microsim`] – finite-N hard-sphere configurations, the multimode
//!   dynamical matrix and spectral stability scans.

pub mod error;
pub mod kernels;
pub mod meanfield;
pub mod microsim;
pub mod physcore;
pub mod quadrature;

pub use error::{Error, Result};
