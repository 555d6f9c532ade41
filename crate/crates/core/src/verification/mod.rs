//! Numerical checks of structural properties of stress laws and energies.
//!
//! Every check returns a [`CheckReport`]. Randomized checks draw from a
//! seeded ChaCha stream (one stream per trial), so a report together with its
//! seed reproduces the witness exactly.

use alloc::string::String;
use alloc::vec::Vec;

mod decomposability;
mod domain;
mod inequalities;
mod integrability;
pub mod sampling;
mod work;

pub use decomposability::{decomposability_check, decomposability_check_with, mean_stress_check};
pub use domain::domain_check;
pub use inequalities::{
    inequality_suite, inequality_suite_with, principal_stresses, tension_extension_slopes,
};
pub use integrability::{integrability_check, integrability_check_law};
pub use work::{hyperelasticity_check, hyperelasticity_check_with, work_integral, StrainPath};

/// Verdict of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// A strict inequality holds only with equality (degenerate states).
    Boundary,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Boundary => "boundary",
        }
    }
}

/// Inputs of the worst case found by a check.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub label: String,
    pub values: Vec<f64>,
}

impl Witness {
    pub fn new(label: impl Into<String>, values: impl Into<Vec<f64>>) -> Self {
        Witness {
            label: label.into(),
            values: values.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub outcome: Outcome,
    pub residual: f64,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub witness: Option<Witness>,
}

impl CheckReport {
    /// Pass iff `residual ≤ tolerance`, otherwise `Fail`.
    pub fn from_residual(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let outcome = if residual <= tolerance {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        CheckReport {
            name: name.into(),
            outcome,
            residual,
            tolerance,
            seed: None,
            witness: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_witness(mut self, witness: Option<Witness>) -> Self {
        self.witness = witness;
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Knobs shared by the randomized checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckConfig {
    pub trials: usize,
    pub seed: u64,
    /// Relative finite-difference step.
    pub fd_step: f64,
    /// Simpson segments per path.
    pub segments: usize,
    /// Replaces the check's default tolerance.
    pub tolerance: Option<f64>,
    pub theta: f64,
}

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            trials: 20,
            seed: DEFAULT_SEED,
            fd_step: 1e-6,
            segments: 400,
            tolerance: None,
            theta: 0.0,
        }
    }
}

impl CheckConfig {
    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

/// Running maximum that remembers its witness.
struct Worst<T> {
    value: f64,
    at: Option<T>,
}

impl<T> Worst<T> {
    fn new() -> Self {
        Worst {
            value: 0.0,
            at: None,
        }
    }

    fn offer(&mut self, value: f64, at: impl FnOnce() -> T) {
        // NaN counts as worst.
        let value = if value.is_nan() { f64::INFINITY } else { value };
        if self.at.is_none() || value > self.value {
            self.value = value;
            self.at = Some(at());
        }
    }
}
