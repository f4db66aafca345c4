//! Covariance-level stabilizability analysis for Gaussian states of
//! N-mode continuous-variable systems under linear Lindblad dissipation.
//!
//! A Gaussian state with covariance matrix `V` is *stabilizable* with
//! respect to a dissipator built from Lindblad operators linear in the
//! quadratures if some quadratic Hamiltonian makes `V` stationary. This
//! crate evaluates the Hamiltonian-independent trace criteria deciding
//! that question, constructs the stabilizing Hamiltonian from the spectral
//! data of `V^{1/2} J V^{1/2}` when it exists, and integrates the moment
//! dynamics to verify stationarity in the time domain.
//!
//! Conventions: `hbar = 1`, quadrature ordering `(x_1..x_N, p_1..p_N)`,
//! vacuum symplectic eigenvalue `1/2`.
//!
//! The crate is `no_std` (with `alloc`); IO, scenario files and the CLI
//! live in the companion `gstab` binary crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod criteria;
pub mod dissipation;
pub mod dynamics;
pub mod error;
pub mod surfaces;
pub mod symplectic;
pub mod synthesis;

pub use error::{Error, Result};

/// Dense dynamically-sized real matrix used throughout.
pub type Mat = nalgebra::DMatrix<f64>;
/// Dense real vector.
pub type Vec2N = nalgebra::DVector<f64>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<num_complex::Complex64>;
/// Dense complex vector.
pub type CVec = nalgebra::DVector<num_complex::Complex64>;
