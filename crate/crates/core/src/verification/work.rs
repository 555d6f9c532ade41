use alloc::vec::Vec;

use super::{sampling, CheckConfig, CheckReport, Witness, Worst};
use crate::constitutive::StressLaw;
use crate::kinematics::StretchState;
use crate::math::abs;
use crate::tensor3::SymTensor;
use crate::{Error, Result};

/// Straight path `L(t) = (1 − t)·L₀ + t·L₁` in log-stretch space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrainPath {
    pub l0: SymTensor,
    pub l1: SymTensor,
    pub segments: usize,
}

impl StrainPath {
    pub fn new(l0: SymTensor, l1: SymTensor, segments: usize) -> Result<Self> {
        if segments < 2 {
            return Err(Error::InvalidParameter {
                name: "segments",
                reason: "at least 2 segments are needed",
            });
        }
        Ok(StrainPath { l0, l1, segments })
    }

    /// `L(t)`; exact at both ends.
    pub fn at(&self, t: f64) -> SymTensor {
        self.l0 * (1.0 - t) + self.l1 * t
    }

    pub fn derivative(&self) -> SymTensor {
        self.l1 - self.l0
    }
}

/// Energy change `ΔW = ∫₀¹ e^{j}·tr(σ·L′) dt = ∫ τ : dL` along the path.
///
/// Composite Simpson rule; an odd segment count is rounded up to the next
/// even number. For a hyperelastic law this is `W(end) − W(start)`, which is
/// minus the work `A` done by the element.
pub fn work_integral(law: &StressLaw, path: &StrainPath, theta: f64) -> Result<f64> {
    if path.segments < 2 {
        return Err(Error::InvalidParameter {
            name: "segments",
            reason: "at least 2 segments are needed",
        });
    }
    let n = path.segments + path.segments % 2;
    let dl = path.derivative();
    let integrand = |i: usize| -> Result<f64> {
        let t = i as f64 / n as f64;
        let s = StretchState::from_log(&path.at(t));
        Ok(law.evaluate(&s, theta)?.kirchhoff.ddot(&dl))
    };
    let mut sum = integrand(0)? + integrand(n)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * integrand(i)?;
    }
    Ok(sum / (3.0 * n as f64))
}

/// Radius of the Frobenius ball the loop vertices are drawn from.
const LOOP_RADIUS: f64 = 0.8;

pub fn hyperelasticity_check(law: &StressLaw, trials: usize, seed: u64) -> CheckReport {
    hyperelasticity_check_with(
        law,
        &CheckConfig::default().with_trials(trials).with_seed(seed),
    )
}

/// Closed-loop work over random triangles in log-stretch space.
///
/// The residual is the largest `|loop work|` divided by the largest
/// `|segment work|` over all trials; default tolerance `1e-4`.
pub fn hyperelasticity_check_with(law: &StressLaw, cfg: &CheckConfig) -> CheckReport {
    let tolerance = cfg.tolerance_or(1e-4);
    let mut worst = Worst::<Vec<f64>>::new();
    let mut max_segment: f64 = 0.0;
    let mut failed: Option<Vec<f64>> = None;

    for trial in 0..cfg.trials.max(1) {
        let mut rng = sampling::trial_rng(cfg.seed, trial as u64);
        let v: [SymTensor; 3] =
            core::array::from_fn(|_| sampling::symmetric_in_ball(&mut rng, LOOP_RADIUS));
        let vertices = || -> Vec<f64> {
            v.iter()
                .flat_map(|t| [t.xx, t.yy, t.zz, t.xy, t.xz, t.yz])
                .collect()
        };
        let mut loop_work = 0.0;
        let mut ok = true;
        for i in 0..3 {
            let seg = StrainPath::new(v[i], v[(i + 1) % 3], cfg.segments)
                .and_then(|p| work_integral(law, &p, cfg.theta));
            match seg {
                Ok(w) => {
                    loop_work += w;
                    max_segment = max_segment.max(abs(w));
                }
                Err(_) => ok = false,
            }
        }
        if !ok {
            failed.get_or_insert_with(vertices);
            continue;
        }
        worst.offer(abs(loop_work), vertices);
    }

    let label = "triangle vertices L_a, L_b, L_c as (xx, yy, zz, xy, xz, yz)";
    let report = if let Some(values) = failed {
        CheckReport::from_residual("hyperelasticity", f64::INFINITY, tolerance).with_witness(Some(
            Witness::new(alloc::format!("evaluation failed; {label}"), values),
        ))
    } else {
        let residual = worst.value / max_segment.max(f64::MIN_POSITIVE);
        CheckReport::from_residual("hyperelasticity", residual, tolerance)
            .with_witness(worst.at.map(|v| Witness::new(label, v)))
    };
    report.with_seed(cfg.seed)
}
