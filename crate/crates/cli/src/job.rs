//! Job files: one JSON document describing a model, inputs and checks.

use std::collections::BTreeMap;
use std::path::Path;

use isoelastic_core::constitutive::{builtins, CoefficientBasis, Coordinates, StressLaw};
use isoelastic_core::kinematics::DeformationGradient;
use serde::Deserialize;

use crate::InputError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub model: ModelSpec,
    pub inputs: Vec<[f64; 9]>,
    #[serde(default)]
    pub theta: f64,
    /// Default seed for every check without its own.
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub output: OutputFormat,
}

/// A catalog model by name, or an inline coefficient-form law.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Inline(InlineLaw),
    Named(NamedModel),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedModel {
    pub name: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    /// Evaluate an energy model in these coordinates instead of its own.
    #[serde(default)]
    pub coordinates: Option<String>,
}

/// `σ = g₁·id + g₂·T + g₃·T²` with `T = V` (stretch basis, `x = (I₁, I₂, I₃)`)
/// or `T = L` (log basis, `x = (j, k, l)`) and `gₐ = cₐ₀ + Σ cₐᵦ·xᵦ`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineLaw {
    #[serde(default = "inline_name")]
    pub name: String,
    pub basis: Basis,
    pub coefficients: [[f64; 4]; 3],
}

fn inline_name() -> String {
    "inline".to_owned()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Stretch,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub name: CheckKind,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub segments: Option<usize>,
    pub tolerance: Option<f64>,
    pub fd_step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Hyperelasticity,
    Integrability,
    Decomposability,
    MeanStress,
    Inequalities,
    Domain,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Hyperelasticity => "hyperelasticity",
            CheckKind::Integrability => "integrability",
            CheckKind::Decomposability => "decomposability",
            CheckKind::MeanStress => "mean_stress",
            CheckKind::Inequalities => "inequalities",
            CheckKind::Domain => "domain",
        }
    }

    fn needs_energy(self) -> bool {
        matches!(self, CheckKind::Decomposability | CheckKind::MeanStress)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct Job {
    pub law: StressLaw,
    pub inputs: Vec<DeformationGradient>,
    pub theta: f64,
    pub seed: Option<u64>,
    pub checks: Vec<CheckSpec>,
    pub output: OutputFormat,
}

pub fn parse_job(text: &str) -> Result<JobSpec, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError::Parse {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })
}

pub fn load_job(path: &Path) -> Result<Job, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    validate(parse_job(&text)?)
}

pub fn validate(spec: JobSpec) -> Result<Job, InputError> {
    let law = resolve_model(&spec.model)?;
    let inputs = spec
        .inputs
        .iter()
        .enumerate()
        .map(|(index, f)| {
            DeformationGradient::from_row_major(f).map_err(|_| InputError::Input {
                index,
                message: format!(
                    "deformation gradient must be finite with det > 0 (det = {})",
                    isoelastic_core::tensor3::Mat3::from_row_major(f).det()
                ),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if !spec.theta.is_finite() {
        return Err(InputError::Invalid("theta must be finite".to_owned()));
    }
    for (i, c) in spec.checks.iter().enumerate() {
        let context =
            |msg: &str| InputError::Invalid(format!("checks[{i}] ({}): {msg}", c.name.as_str()));
        if c.name.needs_energy() && law.energy_model().is_none() {
            return Err(context("needs an energy model"));
        }
        if c.name == CheckKind::Integrability && c.trials.is_some() {
            return Err(context(
                "samples a fixed set of points; `trials` does not apply",
            ));
        }
        if c.trials == Some(0) {
            return Err(context("`trials` must be at least 1"));
        }
        if matches!(c.segments, Some(n) if n < 2) {
            return Err(context("`segments` must be at least 2"));
        }
        if matches!(c.fd_step, Some(h) if !(h > 0.0 && h.is_finite())) {
            return Err(context("`fd_step` must be positive"));
        }
        if matches!(c.tolerance, Some(t) if !t.is_finite()) {
            return Err(context("`tolerance` must be finite"));
        }
    }
    Ok(Job {
        law,
        inputs,
        theta: spec.theta,
        seed: spec.seed,
        checks: spec.checks,
        output: spec.output,
    })
}

fn resolve_model(spec: &ModelSpec) -> Result<StressLaw, InputError> {
    match spec {
        ModelSpec::Named(m) => {
            let params: Vec<(&str, f64)> =
                m.parameters.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let law = builtins::build(&m.name, &params)
                .map_err(|e| InputError::Invalid(format!("model: {e}")))?;
            match (&m.coordinates, law.energy_model()) {
                (None, _) => Ok(law),
                (Some(tag), Some(energy)) => {
                    let c = Coordinates::parse(tag).ok_or_else(|| {
                        InputError::Invalid(format!(
                            "model.coordinates: unknown tag `{tag}` (expected JKL, JYZ or I123)"
                        ))
                    })?;
                    Ok(StressLaw::FromEnergy(energy.to_coordinates(c)))
                }
                (Some(_), None) => Err(InputError::Invalid(format!(
                    "model.coordinates: `{}` is a stress law without an energy",
                    m.name
                ))),
            }
        }
        ModelSpec::Inline(inline) => {
            if inline.coefficients.iter().flatten().any(|c| !c.is_finite()) {
                return Err(InputError::Invalid(
                    "model.coefficients must be finite".to_owned(),
                ));
            }
            let c = inline.coefficients;
            let basis = match inline.basis {
                Basis::Stretch => CoefficientBasis::Stretch,
                Basis::Log => CoefficientBasis::Log,
            };
            Ok(StressLaw::coefficient_form(
                inline.name.clone(),
                basis,
                move |x, _| c.map(|row| row[0] + row[1] * x[0] + row[2] * x[1] + row[3] * x[2]),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_named_job() {
        let spec = parse_job(
            r#"{"model": {"name": "Hencky", "parameters": {"lambda": 1, "mu": 1}},
                "inputs": [[1,0,0, 0,1,0, 0,0,1]]}"#,
        )
        .unwrap();
        let job = validate(spec).unwrap();
        assert_eq!(job.law.name(), "Hencky");
        assert_eq!(job.output, OutputFormat::Json);
        assert!(job.checks.is_empty());
    }

    #[test]
    fn inline_hooke_coefficients() {
        let spec = parse_job(
            r#"{"model": {"basis": "stretch",
                          "coefficients": [[-5, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 0]]},
                "inputs": []}"#,
        )
        .unwrap();
        let job = validate(spec).unwrap();
        let g = job.law.stretch_coefficients([1.2, 1.0, 0.9], 0.0).unwrap();
        assert!((g[0] - (3.1 - 5.0)).abs() < 1e-15);
        assert_eq!(&g[1..], &[2.0, 0.0]);
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse_job("{\n  \"model\": {\"name\": \"Hencky\"},\n  \"inputs\": [[1, 2]]\n}")
            .unwrap_err();
        match err {
            InputError::Parse { line, path, .. } => {
                assert_eq!(line, 3);
                assert!(path.starts_with("inputs"), "{path}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_check_is_rejected() {
        let err = parse_job(
            r#"{"model": {"name": "Hencky"}, "inputs": [], "checks": [{"name": "nope"}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("checks[0]"), "{err}");
    }

    #[test]
    fn energy_checks_need_energies() {
        let spec = parse_job(
            r#"{"model": {"name": "Hooke", "parameters": {"lambda": 1, "mu": 1}},
                "inputs": [], "checks": [{"name": "decomposability"}]}"#,
        )
        .unwrap();
        assert!(validate(spec).is_err());
    }

    #[test]
    fn bad_determinant_names_record() {
        let spec = parse_job(
            r#"{"model": {"name": "Hencky", "parameters": {"lambda": 1, "mu": 1}},
                "inputs": [[1,0,0,0,1,0,0,0,1], [1,0,0,0,1,0,0,0,-1]]}"#,
        )
        .unwrap();
        match validate(spec).unwrap_err() {
            InputError::Input { index, .. } => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
    }
}
