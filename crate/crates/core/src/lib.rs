//! Finite-strain isotropic elasticity kernel.
//!
//! The crate is organized bottom-up:
//!
//! - [`tensor3`]: closed-form 3×3 linear algebra (symmetric eigensystems,
//!   primary matrix functions, left polar decomposition).
//! - [`kinematics`]: stretch `V`, logarithmic stretch `L = log V`, their
//!   invariants, the volumetric-isochoric split and reference rebasing.
//! - [`constitutive`]: stored-energy models, isotropic stress laws and
//!   energy transformations.
//! - [`verification`]: numerical checks of hyperelasticity, integrability,
//!   decomposability and the classical inequalities.
//!
//! Everything is `no_std` with `alloc`; IO lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constitutive;
mod error;
pub mod kinematics;
mod math;
pub mod tensor3;
pub mod verification;

pub use error::{Error, Result};
