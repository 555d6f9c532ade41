//! Stored-energy models and isotropic stress laws.
//!
//! An [`EnergyModel`] is a scalar density in one of three invariant
//! coordinate systems (see [`Coordinates`]) plus a scalar state argument
//! `theta` (temperature for the isothermal law, entropy for the adiabatic
//! one; the formulas are identical). Stresses follow from the partials of the
//! density through the coordinate-specific evaluators in [`stress`].

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::kinematics::{self, InvariantSet, StretchState};
use crate::math::{abs, ln};
use crate::tensor3::Vec3;
use crate::{Error, Result};

pub mod builtins;
mod representation;
mod stress;
mod transform;

pub use representation::{representation_solve, COAXIAL_TOL};
pub use stress::{
    stress_from_energy, stress_from_energy_i, stress_from_energy_jkl, stress_from_energy_jyz,
    stress_hencky, stress_hooke, CoefficientBasis, CoefficientFn, StressLaw, StressResult,
};
pub use transform::{rebase_energy, shield_transform};

/// Invariant coordinates in which a density is declared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coordinates {
    /// `(j, k, l)`: traces of `L`, `L²`, `L³`.
    Jkl,
    /// `(j, y, z)`: `tr L` and the traces of `(dev L)²`, `(dev L)³`.
    Jyz,
    /// `(I₁, I₂, I₃) = (tr V, ½ tr V², det V)`.
    I123,
}

impl Coordinates {
    pub fn name(self) -> &'static str {
        match self {
            Coordinates::Jkl => "JKL",
            Coordinates::Jyz => "JYZ",
            Coordinates::I123 => "I123",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "JKL" | "jkl" => Some(Coordinates::Jkl),
            "JYZ" | "jyz" => Some(Coordinates::Jyz),
            "I123" | "i123" => Some(Coordinates::I123),
            _ => None,
        }
    }

    /// Coordinates of the state described by `inv`.
    pub fn of(self, inv: &InvariantSet) -> Vec3 {
        match self {
            Coordinates::Jkl => inv.jkl(),
            Coordinates::Jyz => inv.jyz(),
            Coordinates::I123 => inv.i123(),
        }
    }

    /// Principal log-stretches (descending) at coordinates `x`.
    pub fn log_stretches(self, x: Vec3) -> Vec3 {
        match self {
            Coordinates::Jkl => kinematics::log_stretches_from_jkl(x),
            Coordinates::Jyz => kinematics::log_stretches_from_jyz(x),
            Coordinates::I123 => kinematics::stretches_from_i123(x).map(ln),
        }
    }
}

/// A scalar energy density in some invariant coordinates.
pub trait EnergyDensity: Send + Sync {
    fn energy(&self, x: Vec3, theta: f64) -> f64;

    /// Analytic partials, when available.
    fn partials(&self, _x: Vec3, _theta: f64) -> Option<Vec3> {
        None
    }
}

/// Closure-backed density.
pub struct FnDensity<E, G> {
    energy: E,
    partials: Option<G>,
}

impl<E, G> EnergyDensity for FnDensity<E, G>
where
    E: Fn(Vec3, f64) -> f64 + Send + Sync,
    G: Fn(Vec3, f64) -> Vec3 + Send + Sync,
{
    fn energy(&self, x: Vec3, theta: f64) -> f64 {
        (self.energy)(x, theta)
    }

    fn partials(&self, x: Vec3, theta: f64) -> Option<Vec3> {
        self.partials.as_ref().map(|g| g(x, theta))
    }
}

type ThermalExpansion = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Relative central-difference step for energy partials: `h = FD_STEP·(1 + |x|)`.
pub const FD_STEP: f64 = 1e-6;

/// Scalar stored energy per unit reference volume.
#[derive(Clone)]
pub struct EnergyModel {
    name: String,
    coordinates: Coordinates,
    parameters: Vec<(String, f64)>,
    density: Arc<dyn EnergyDensity>,
    thermal_expansion: Option<ThermalExpansion>,
    fd_step: f64,
}

impl core::fmt::Debug for EnergyModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("EnergyModel")
            .field("name", &self.name)
            .field("coordinates", &self.coordinates)
            .field("parameters", &self.parameters)
            .field("thermal_expansion", &self.thermal_expansion.is_some())
            .finish()
    }
}

impl EnergyModel {
    pub fn new(
        name: impl Into<String>,
        coordinates: Coordinates,
        density: Arc<dyn EnergyDensity>,
    ) -> Self {
        EnergyModel {
            name: name.into(),
            coordinates,
            parameters: Vec::new(),
            density,
            thermal_expansion: None,
            fd_step: FD_STEP,
        }
    }

    /// Model from an energy closure; partials come from central differences.
    pub fn from_fn<E>(name: impl Into<String>, coordinates: Coordinates, energy: E) -> Self
    where
        E: Fn(Vec3, f64) -> f64 + Send + Sync + 'static,
    {
        let density = FnDensity::<E, fn(Vec3, f64) -> Vec3> {
            energy,
            partials: None,
        };
        Self::new(name, coordinates, Arc::new(density))
    }

    pub fn with_partials<E, G>(
        name: impl Into<String>,
        coordinates: Coordinates,
        energy: E,
        partials: G,
    ) -> Self
    where
        E: Fn(Vec3, f64) -> f64 + Send + Sync + 'static,
        G: Fn(Vec3, f64) -> Vec3 + Send + Sync + 'static,
    {
        let density = FnDensity {
            energy,
            partials: Some(partials),
        };
        Self::new(name, coordinates, Arc::new(density))
    }

    pub fn with_parameter(mut self, name: impl Into<String>, value: f64) -> Self {
        self.parameters.push((name.into(), value));
        self
    }

    /// Attaches the logarithmic thermal expansion `j₁ = φ(Θ₁)`.
    pub fn with_thermal_expansion(
        mut self,
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.thermal_expansion = Some(Arc::new(phi));
        self
    }

    pub fn with_fd_step(mut self, step: f64) -> Self {
        self.fd_step = step;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coordinates(&self) -> Coordinates {
        self.coordinates
    }

    pub fn parameters(&self) -> &[(String, f64)] {
        &self.parameters
    }

    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub(crate) fn density(&self) -> &Arc<dyn EnergyDensity> {
        &self.density
    }

    pub(crate) fn thermal_expansion_fn(&self) -> Option<&ThermalExpansion> {
        self.thermal_expansion.as_ref()
    }

    pub(crate) fn derived(
        &self,
        name: String,
        coordinates: Coordinates,
        density: Arc<dyn EnergyDensity>,
    ) -> Self {
        EnergyModel {
            name,
            coordinates,
            parameters: self.parameters.clone(),
            density,
            thermal_expansion: self.thermal_expansion.clone(),
            fd_step: self.fd_step,
        }
    }

    /// `φ(Θ)` when a thermal-expansion law is attached.
    pub fn thermal_expansion(&self, theta: f64) -> Option<f64> {
        self.thermal_expansion.as_ref().map(|phi| phi(theta))
    }

    /// Energy at coordinates `x` in this model's own coordinate system.
    pub fn energy(&self, x: Vec3, theta: f64) -> Result<f64> {
        let w = self.density.energy(x, theta);
        if w.is_finite() {
            Ok(w)
        } else {
            Err(Error::EnergyDomain {
                coordinates: self.coordinates,
                point: x,
            })
        }
    }

    pub fn energy_at(&self, inv: &InvariantSet, theta: f64) -> Result<f64> {
        self.energy(self.coordinates.of(inv), theta)
    }

    pub fn energy_at_state(&self, s: &StretchState, theta: f64) -> Result<f64> {
        self.energy_at(&kinematics::invariants(s), theta)
    }

    /// Energy as a function of the principal stretches.
    pub fn energy_at_stretches(&self, stretches: Vec3, theta: f64) -> Result<f64> {
        self.energy_at(&InvariantSet::from_stretches(stretches), theta)
    }

    pub fn analytic_partials(&self, x: Vec3, theta: f64) -> Option<Vec3> {
        self.density.partials(x, theta)
    }

    /// Partials in own coordinates: analytic if supplied, else central differences.
    pub fn partials(&self, x: Vec3, theta: f64) -> Result<Vec3> {
        if let Some(g) = self.density.partials(x, theta) {
            return if g.iter().all(|v| v.is_finite()) {
                Ok(g)
            } else {
                Err(Error::EnergyDomain {
                    coordinates: self.coordinates,
                    point: x,
                })
            };
        }
        let mut g = [0.0; 3];
        for (i, gi) in g.iter_mut().enumerate() {
            let h = self.fd_step * (1.0 + abs(x[i]));
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            *gi = (self.energy(xp, theta)? - self.energy(xm, theta)?) / (2.0 * h);
        }
        Ok(g)
    }

    /// The same energy expressed in `target` coordinates.
    pub fn to_coordinates(&self, target: Coordinates) -> EnergyModel {
        transform::convert(self, target)
    }
}
