//! Built-in energies and stress laws.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{CoefficientBasis, Coordinates, EnergyModel, StressLaw};
use crate::{Error, Result};

/// Quadratic logarithmic energy `W = (λ/2)·j² + μ·k`.
pub fn hencky_quadratic(lambda: f64, mu: f64) -> EnergyModel {
    EnergyModel::with_partials(
        "HenckyQuadratic",
        Coordinates::Jkl,
        move |[j, k, _], _| 0.5 * lambda * j * j + mu * k,
        move |[j, _, _], _| [lambda * j, mu, 0.0],
    )
    .with_parameter("lambda", lambda)
    .with_parameter("mu", mu)
}

/// The same energy split into volume and shape: `W = (λ/2 + μ/3)·j² + μ·y`.
pub fn hencky_quadratic_jyz(lambda: f64, mu: f64) -> EnergyModel {
    let kappa = lambda + 2.0 * mu / 3.0;
    EnergyModel::with_partials(
        "HenckyQuadraticJyz",
        Coordinates::Jyz,
        move |[j, y, _], _| 0.5 * kappa * j * j + mu * y,
        move |[j, _, _], _| [kappa * j, mu, 0.0],
    )
    .with_parameter("lambda", lambda)
    .with_parameter("mu", mu)
}

/// `W = 2μ·I₃·(I₁ − 4)`, whose stress is the linear stretch law with `λ = 2μ`.
pub fn richter_intro(mu: f64) -> EnergyModel {
    EnergyModel::with_partials(
        "RichterIntro",
        Coordinates::I123,
        move |[i1, _, i3], _| 2.0 * mu * i3 * (i1 - 4.0),
        move |[i1, _, i3], _| [2.0 * mu * i3, 0.0, 2.0 * mu * (i1 - 4.0)],
    )
    .with_parameter("mu", mu)
}

/// `W = 2μ·(tr V⁻¹ − 4)` with `tr V⁻¹ = (I₁² − 2I₂)/(2I₃)`.
pub fn shield_dual(mu: f64) -> EnergyModel {
    EnergyModel::with_partials(
        "ShieldDual",
        Coordinates::I123,
        move |[i1, i2, i3], _| 2.0 * mu * ((i1 * i1 - 2.0 * i2) / (2.0 * i3) - 4.0),
        move |[i1, i2, i3], _| {
            [
                2.0 * mu * i1 / i3,
                -2.0 * mu / i3,
                -mu * (i1 * i1 - 2.0 * i2) / (i3 * i3),
            ]
        },
    )
    .with_parameter("mu", mu)
}

/// `W = (κ/2)·(I₃ − 1)²`: a pure pressure response.
pub fn pressure_only(kappa: f64) -> EnergyModel {
    EnergyModel::with_partials(
        "PressureOnly",
        Coordinates::I123,
        move |[_, _, i3], _| 0.5 * kappa * (i3 - 1.0) * (i3 - 1.0),
        move |[_, _, i3], _| [0.0, 0.0, kappa * (i3 - 1.0)],
    )
    .with_parameter("kappa", kappa)
}

/// `W = c·j·y`, coupling volume change and shape.
pub fn coupled_witness(c: f64) -> EnergyModel {
    EnergyModel::with_partials(
        "CoupledWitness",
        Coordinates::Jyz,
        move |[j, y, _], _| c * j * y,
        move |[j, y, _], _| [c * y, c * j, 0.0],
    )
    .with_parameter("c", c)
}

/// The linear stretch law written in coefficient form:
/// `σ = (λ·I₁ − 3λ − 2μ)·id + 2μ·V`. Integrable only for `λ = 2μ`.
pub fn non_integrable_hooke(lambda: f64, mu: f64) -> StressLaw {
    StressLaw::coefficient_form(
        "NonIntegrableHooke",
        CoefficientBasis::Stretch,
        move |[i1, _, _], _| [lambda * i1 - 3.0 * lambda - 2.0 * mu, 2.0 * mu, 0.0],
    )
}

/// Whether a catalog entry is an energy or a stress law without one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Energy,
    Law,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: ModelKind,
    /// Coordinates of the energy, or of the coefficient basis of a law.
    pub coordinates: &'static str,
    pub parameters: &'static [&'static str],
    /// Defining formula.
    pub provenance: &'static str,
    /// Mean stress depends on the volume change only.
    pub decomposable: bool,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "HenckyQuadratic",
        kind: ModelKind::Energy,
        coordinates: "JKL",
        parameters: &["lambda", "mu"],
        provenance: "W = (λ/2)·j² + μ·k; σ·e^j = λ·j·id + 2μ·L",
        decomposable: true,
    },
    CatalogEntry {
        name: "HenckyQuadraticJyz",
        kind: ModelKind::Energy,
        coordinates: "JYZ",
        parameters: &["lambda", "mu"],
        provenance: "W = (λ/2 + μ/3)·j² + μ·y; σ·e^j = λ·j·id + 2μ·L",
        decomposable: true,
    },
    CatalogEntry {
        name: "RichterIntro",
        kind: ModelKind::Energy,
        coordinates: "I123",
        parameters: &["mu"],
        provenance: "W = 2μ·det V·(tr V − 4); σ = 2μ(V − id) + 2μ·tr(V − id)·id",
        decomposable: false,
    },
    CatalogEntry {
        name: "ShieldDual",
        kind: ModelKind::Energy,
        coordinates: "I123",
        parameters: &["mu"],
        provenance: "W = 2μ·(tr V⁻¹ − 4); Shield transform of 2μ·det V·(tr V − 4)",
        decomposable: false,
    },
    CatalogEntry {
        name: "PressureOnly",
        kind: ModelKind::Energy,
        coordinates: "I123",
        parameters: &["kappa"],
        provenance: "W = (κ/2)·(det V − 1)²; σ = κ·(det V − 1)·id",
        decomposable: true,
    },
    CatalogEntry {
        name: "CoupledWitness",
        kind: ModelKind::Energy,
        coordinates: "JYZ",
        parameters: &["c"],
        provenance: "W = c·j·y; ∂²W/∂j∂y = c",
        decomposable: false,
    },
    CatalogEntry {
        name: "Hooke",
        kind: ModelKind::Law,
        coordinates: "I123",
        parameters: &["lambda", "mu"],
        provenance: "σ = λ·tr(V − id)·id + 2μ·(V − id)",
        decomposable: false,
    },
    CatalogEntry {
        name: "Hencky",
        kind: ModelKind::Law,
        coordinates: "JKL",
        parameters: &["lambda", "mu"],
        provenance: "σ·e^j = λ·j·id + 2μ·L",
        decomposable: true,
    },
    CatalogEntry {
        name: "NonIntegrableHooke",
        kind: ModelKind::Law,
        coordinates: "I123",
        parameters: &["lambda", "mu"],
        provenance: "σ = (λ·I₁ − 3λ − 2μ)·id + 2μ·V; integrable iff λ = 2μ",
        decomposable: false,
    },
];

/// All built-in models.
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: "must be positive",
        })
    }
}

fn finite(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: "must be finite",
        })
    }
}

/// Instantiates the catalog entry `name` with named parameters.
pub fn build(name: &str, params: &[(&str, f64)]) -> Result<StressLaw> {
    let entry = lookup(name).ok_or_else(|| Error::UnknownModel {
        name: name.to_string(),
    })?;
    let mut values = Vec::with_capacity(entry.parameters.len());
    for &p in entry.parameters {
        let v = params
            .iter()
            .find(|(n, _)| *n == p)
            .map(|(_, v)| *v)
            .ok_or(Error::InvalidParameter {
                name: p,
                reason: "missing",
            })?;
        values.push(v);
    }
    if let Some((n, _)) = params.iter().find(|(n, _)| !entry.parameters.contains(n)) {
        return Err(Error::UnknownModel {
            name: format!("{name} (unexpected parameter `{n}`)"),
        });
    }
    let law = match entry.name {
        "HenckyQuadratic" => StressLaw::FromEnergy(hencky_quadratic(
            finite("lambda", values[0])?,
            positive("mu", values[1])?,
        )),
        "HenckyQuadraticJyz" => StressLaw::FromEnergy(hencky_quadratic_jyz(
            finite("lambda", values[0])?,
            positive("mu", values[1])?,
        )),
        "RichterIntro" => StressLaw::FromEnergy(richter_intro(positive("mu", values[0])?)),
        "ShieldDual" => StressLaw::FromEnergy(shield_dual(positive("mu", values[0])?)),
        "PressureOnly" => StressLaw::FromEnergy(pressure_only(positive("kappa", values[0])?)),
        "CoupledWitness" => StressLaw::FromEnergy(coupled_witness(finite("c", values[0])?)),
        "Hooke" => StressLaw::hooke(finite("lambda", values[0])?, values[1])?,
        "Hencky" => StressLaw::hencky(finite("lambda", values[0])?, values[1])?,
        "NonIntegrableHooke" => {
            non_integrable_hooke(finite("lambda", values[0])?, positive("mu", values[1])?)
        }
        _ => unreachable!("catalog entry without constructor"),
    };
    Ok(law)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::shield_transform;
    use crate::kinematics::StretchState;

    #[test]
    fn every_entry_builds() {
        for e in catalog() {
            let params: Vec<(&str, f64)> = e.parameters.iter().map(|p| (*p, 1.0)).collect();
            let law = build(e.name, &params).unwrap();
            assert_eq!(
                law.energy_model().is_some(),
                e.kind == ModelKind::Energy,
                "{}",
                e.name
            );
            if let Some(m) = law.energy_model() {
                assert_eq!(m.coordinates().name(), e.coordinates);
            }
        }
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            build("Nope", &[]),
            Err(Error::UnknownModel { .. })
        ));
        assert!(matches!(
            build("RichterIntro", &[]),
            Err(Error::InvalidParameter { name: "mu", .. })
        ));
        assert!(build("RichterIntro", &[("mu", -1.0)]).is_err());
        assert!(build("RichterIntro", &[("mu", 1.0), ("nu", 0.3)]).is_err());
    }

    #[test]
    fn builtin_energies_vanish_where_expected() {
        let id = [1.0; 3];
        assert_eq!(
            hencky_quadratic(1.0, 2.0)
                .energy_at_stretches(id, 0.0)
                .unwrap(),
            0.0
        );
        assert_eq!(
            pressure_only(3.0).energy_at_stretches(id, 0.0).unwrap(),
            0.0
        );
        assert_eq!(
            richter_intro(1.0).energy_at_stretches(id, 0.0).unwrap(),
            -2.0
        );
        assert_eq!(shield_dual(1.0).energy_at_stretches(id, 0.0).unwrap(), -2.0);
    }

    #[test]
    fn shield_dual_maps_to_intro_energy() {
        let s = StretchState::from_principal([1.4, 0.7, 1.1]).unwrap();
        let a = shield_transform(&shield_dual(0.8))
            .energy_at_state(&s, 0.0)
            .unwrap();
        let b = richter_intro(0.8).energy_at_state(&s, 0.0).unwrap();
        assert!((a - b).abs() < 1e-13);
    }
}
