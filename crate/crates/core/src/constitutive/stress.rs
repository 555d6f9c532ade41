use alloc::string::String;
use alloc::sync::Arc;

use super::{representation_solve, Coordinates, EnergyModel};
use crate::kinematics::{self, InvariantSet, StretchState};
use crate::math::exp;
use crate::tensor3::{SymTensor, Vec3};
use crate::{Error, Result};

/// Cauchy stress with its Kirchhoff, mean and deviatoric parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StressResult {
    pub sigma: SymTensor,
    /// `τ = σ·e^j`.
    pub kirchhoff: SymTensor,
    pub mean_stress: f64,
    pub deviatoric: SymTensor,
}

impl StressResult {
    pub fn from_kirchhoff(tau: SymTensor, j: f64) -> Self {
        let sigma = tau * exp(-j);
        StressResult {
            sigma,
            kirchhoff: tau,
            mean_stress: sigma.trace() / 3.0,
            deviatoric: sigma.deviator(),
        }
    }

    pub fn from_cauchy(sigma: SymTensor, j: f64) -> Self {
        StressResult {
            sigma,
            kirchhoff: sigma * exp(j),
            mean_stress: sigma.trace() / 3.0,
            deviatoric: sigma.deviator(),
        }
    }
}

fn expect(m: &EnergyModel, want: Coordinates) -> Result<()> {
    if m.coordinates() == want {
        Ok(())
    } else {
        Err(Error::CoordinateMismatch {
            expected: want,
            found: m.coordinates(),
        })
    }
}

/// `σ·e^j = W_j·id + 2·W_k·L + 3·W_l·L²` for `W(j, k, l, Θ)`.
pub fn stress_from_energy_jkl(
    m: &EnergyModel,
    s: &StretchState,
    theta: f64,
) -> Result<StressResult> {
    expect(m, Coordinates::Jkl)?;
    let inv = kinematics::invariants(s);
    let [wj, wk, wl] = m.partials(inv.jkl(), theta)?;
    let tau = SymTensor::scaled_identity(wj) + s.l * (2.0 * wk) + s.l.square() * (3.0 * wl);
    Ok(StressResult::from_kirchhoff(tau, inv.j))
}

/// Mean and deviatoric parts from `W(j, y, z, Θ)`:
/// `⅓·e^j·tr σ = W_j` and `e^j·dev σ = −y·W_z·id + 2·W_y·dev L + 3·W_z·(dev L)²`.
pub fn stress_from_energy_jyz(
    m: &EnergyModel,
    s: &StretchState,
    theta: f64,
) -> Result<StressResult> {
    expect(m, Coordinates::Jyz)?;
    let inv = kinematics::invariants(s);
    let [wj, wy, wz] = m.partials(inv.jyz(), theta)?;
    let dev_l = s.l.deviator();
    let dev_tau =
        SymTensor::scaled_identity(-inv.y * wz) + dev_l * (2.0 * wy) + dev_l.square() * (3.0 * wz);
    let tau = dev_tau + SymTensor::scaled_identity(wj);
    Ok(StressResult::from_kirchhoff(tau, inv.j))
}

/// `σ = W_{I₃}·id + W_{I₁}/I₃·V + W_{I₂}/I₃·V²` for `W(I₁, I₂, I₃, Θ)`.
pub fn stress_from_energy_i(m: &EnergyModel, s: &StretchState, theta: f64) -> Result<StressResult> {
    expect(m, Coordinates::I123)?;
    let inv = kinematics::invariants(s);
    let [w1, w2, w3] = m.partials(inv.i123(), theta)?;
    let sigma = SymTensor::scaled_identity(w3) + s.v * (w1 / inv.i3) + s.v.square() * (w2 / inv.i3);
    Ok(StressResult::from_cauchy(sigma, inv.j))
}

/// Dispatches on the model's declared coordinates.
pub fn stress_from_energy(m: &EnergyModel, s: &StretchState, theta: f64) -> Result<StressResult> {
    match m.coordinates() {
        Coordinates::Jkl => stress_from_energy_jkl(m, s, theta),
        Coordinates::Jyz => stress_from_energy_jyz(m, s, theta),
        Coordinates::I123 => stress_from_energy_i(m, s, theta),
    }
}

/// Linear law in the stretch: `σ = λ·tr(V − id)·id + 2μ·(V − id)`.
pub fn stress_hooke(lambda: f64, mu: f64, s: &StretchState) -> StressResult {
    let e = s.v - SymTensor::identity();
    let sigma = SymTensor::scaled_identity(lambda * e.trace()) + e * (2.0 * mu);
    StressResult::from_cauchy(sigma, s.j())
}

/// Logarithmic law: `σ·e^j = λ·j·id + 2μ·L`.
pub fn stress_hencky(lambda: f64, mu: f64, s: &StretchState) -> StressResult {
    let j = s.j();
    let tau = SymTensor::scaled_identity(lambda * j) + s.l * (2.0 * mu);
    StressResult::from_kirchhoff(tau, j)
}

/// Which tensor powers the coefficients of a [`StressLaw::CoefficientForm`] multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientBasis {
    /// `σ = f₁·id + f₂·L + f₃·L²`, `fᵢ(j, k, l, Θ)`.
    Log,
    /// `σ = g₁·id + g₂·V + g₃·V²`, `gᵢ(I₁, I₂, I₃, Θ)`.
    Stretch,
}

pub type CoefficientFn = Arc<dyn Fn(Vec3, f64) -> Vec3 + Send + Sync>;

/// An isotropic Cauchy stress law.
#[derive(Clone)]
pub enum StressLaw {
    FromEnergy(EnergyModel),
    CoefficientForm {
        name: String,
        basis: CoefficientBasis,
        coefficients: CoefficientFn,
    },
    HookeLinear {
        lambda: f64,
        mu: f64,
    },
    HenckyLog {
        lambda: f64,
        mu: f64,
    },
}

impl core::fmt::Debug for StressLaw {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            StressLaw::FromEnergy(m) => f.debug_tuple("FromEnergy").field(m).finish(),
            StressLaw::CoefficientForm { name, basis, .. } => f
                .debug_struct("CoefficientForm")
                .field("name", name)
                .field("basis", basis)
                .finish(),
            StressLaw::HookeLinear { lambda, mu } => f
                .debug_struct("HookeLinear")
                .field("lambda", lambda)
                .field("mu", mu)
                .finish(),
            StressLaw::HenckyLog { lambda, mu } => f
                .debug_struct("HenckyLog")
                .field("lambda", lambda)
                .field("mu", mu)
                .finish(),
        }
    }
}

fn check_shear_modulus(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "mu",
            reason: "shear modulus must be positive",
        })
    }
}

impl StressLaw {
    pub fn hooke(lambda: f64, mu: f64) -> Result<Self> {
        check_shear_modulus(mu)?;
        Ok(StressLaw::HookeLinear { lambda, mu })
    }

    pub fn hencky(lambda: f64, mu: f64) -> Result<Self> {
        check_shear_modulus(mu)?;
        Ok(StressLaw::HenckyLog { lambda, mu })
    }

    pub fn coefficient_form(
        name: impl Into<String>,
        basis: CoefficientBasis,
        coefficients: impl Fn(Vec3, f64) -> Vec3 + Send + Sync + 'static,
    ) -> Self {
        StressLaw::CoefficientForm {
            name: name.into(),
            basis,
            coefficients: Arc::new(coefficients),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            StressLaw::FromEnergy(m) => m.name(),
            StressLaw::CoefficientForm { name, .. } => name,
            StressLaw::HookeLinear { .. } => "Hooke",
            StressLaw::HenckyLog { .. } => "Hencky",
        }
    }

    pub fn energy_model(&self) -> Option<&EnergyModel> {
        match self {
            StressLaw::FromEnergy(m) => Some(m),
            _ => None,
        }
    }

    pub fn evaluate(&self, s: &StretchState, theta: f64) -> Result<StressResult> {
        match self {
            StressLaw::FromEnergy(m) => stress_from_energy(m, s, theta),
            StressLaw::HookeLinear { lambda, mu } => Ok(stress_hooke(*lambda, *mu, s)),
            StressLaw::HenckyLog { lambda, mu } => Ok(stress_hencky(*lambda, *mu, s)),
            StressLaw::CoefficientForm {
                basis,
                coefficients,
                ..
            } => {
                let inv = kinematics::invariants(s);
                let (x, t) = match basis {
                    CoefficientBasis::Log => (inv.jkl(), s.l),
                    CoefficientBasis::Stretch => (inv.i123(), s.v),
                };
                let [c1, c2, c3] = coefficients(x, theta);
                let sigma = SymTensor::scaled_identity(c1) + t * c2 + t.square() * c3;
                if !sigma.is_finite() {
                    return Err(Error::EnergyDomain {
                        coordinates: match basis {
                            CoefficientBasis::Log => Coordinates::Jkl,
                            CoefficientBasis::Stretch => Coordinates::I123,
                        },
                        point: x,
                    });
                }
                Ok(StressResult::from_cauchy(sigma, inv.j))
            }
        }
    }

    /// Coefficients `(g₁, g₂, g₃)` with `σ = g₁·id + g₂·V + g₃·V²` at the state
    /// with principal stretches `stretches`.
    ///
    /// Direct for laws given in the stretch basis; otherwise recovered from the
    /// evaluated stress, which needs distinct stretches for a full-order answer.
    pub fn stretch_coefficients(&self, stretches: Vec3, theta: f64) -> Result<Vec3> {
        let inv = InvariantSet::from_stretches(stretches);
        match self {
            StressLaw::HookeLinear { lambda, mu } => {
                Ok([lambda * inv.i1 - 3.0 * lambda - 2.0 * mu, 2.0 * mu, 0.0])
            }
            StressLaw::CoefficientForm {
                basis: CoefficientBasis::Stretch,
                coefficients,
                ..
            } => Ok(coefficients(inv.i123(), theta)),
            _ => {
                let s = StretchState::from_principal(stretches)?;
                let sigma = self.evaluate(&s, theta)?.sigma;
                representation_solve(&sigma, &s.v)
            }
        }
    }
}
