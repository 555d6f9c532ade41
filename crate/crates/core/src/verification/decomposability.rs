use rand::Rng;

use super::{sampling, CheckConfig, CheckReport, Witness, Worst};
use crate::constitutive::{stress_from_energy, Coordinates, EnergyModel};
use crate::kinematics::{log_stretches_from_jyz, InvariantSet, StretchState};
use crate::math::{abs, exp, sqrt};
use crate::tensor3::Vec3;
use crate::Result;

const Y_MIN: f64 = 0.04;
const RATIO_MAX: f64 = 0.15;

/// Random `(j, y, z)` away from the edges of the admissible set.
fn sample_point<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let ls: Vec3 = core::array::from_fn(|_| rng.gen_range(-0.6..=0.6));
        let inv = InvariantSet::from_log_stretches(ls);
        if inv.y >= Y_MIN && inv.z * inv.z <= RATIO_MAX * inv.y * inv.y * inv.y {
            return inv.jyz();
        }
    }
}

/// Step in `z` that stays inside `z² ≤ y³/6` from a sampled point.
fn z_step(y: f64, scale: f64) -> f64 {
    scale * y * sqrt(y)
}

pub fn decomposability_check(m: &EnergyModel, trials: usize) -> CheckReport {
    decomposability_check_with(m, &CheckConfig::default().with_trials(trials))
}

/// Mixed partials `∂²W/∂j∂y` and `∂²W/∂j∂z` at random admissible points.
///
/// The model is converted to `(j, y, z)` first. The residual is the largest
/// mixed partial; default tolerance `1e-6·(1 + max |W|)` over the points.
pub fn decomposability_check_with(m: &EnergyModel, cfg: &CheckConfig) -> CheckReport {
    let w = m.to_coordinates(Coordinates::Jyz);
    let theta = cfg.theta;
    let energy = |x: Vec3| w.energy(x, theta);
    let mixed = |x: Vec3| -> Result<[f64; 2]> {
        let [j, y, z] = x;
        let hj = 1e-4 * (1.0 + abs(j));
        if let Some(gp) = w.analytic_partials([j + hj, y, z], theta) {
            let gm = w.partials([j - hj, y, z], theta)?;
            return Ok([(gp[1] - gm[1]) / (2.0 * hj), (gp[2] - gm[2]) / (2.0 * hj)]);
        }
        let hy = 1e-4 * (1.0 + y);
        let hz = z_step(y, 1e-2);
        let four = |dy: f64, dz: f64| -> Result<f64> {
            let f = |sj: f64, s: f64| energy([j + sj * hj, y + s * dy, z + s * dz]);
            Ok(
                (f(1.0, 1.0)? - f(1.0, -1.0)? - f(-1.0, 1.0)? + f(-1.0, -1.0)?)
                    / (4.0 * hj * (dy + dz)),
            )
        };
        Ok([four(hy, 0.0)?, four(0.0, hz)?])
    };

    let mut worst = Worst::<Vec3>::new();
    let mut scale: f64 = 0.0;
    for trial in 0..cfg.trials.max(1) {
        let mut rng = sampling::trial_rng(cfg.seed, trial as u64);
        let x = sample_point(&mut rng);
        let r = energy(x).and_then(|e| Ok((e, mixed(x)?)));
        match r {
            Ok((e, [wjy, wjz])) => {
                scale = scale.max(abs(e));
                worst.offer(abs(wjy).max(abs(wjz)), || x);
            }
            Err(_) => worst.offer(f64::INFINITY, || x),
        }
    }
    let tolerance = cfg.tolerance_or(1e-6 * (1.0 + scale));
    CheckReport::from_residual("decomposability", worst.value, tolerance)
        .with_witness(worst.at.map(|x| Witness::new("(j, y, z)", x)))
        .with_seed(cfg.seed)
}

/// Sensitivity of the mean stress to shape at fixed volume: central
/// differences of `⅓ tr σ` in `y` and `z` at fixed `j`.
///
/// States are rebuilt from `(j, y, z)` and evaluated with the model's own
/// stress formula, independently of [`decomposability_check`]. Default
/// tolerance `1e-6·(1 + max |mean stress|)`.
pub fn mean_stress_check(m: &EnergyModel, cfg: &CheckConfig) -> CheckReport {
    let mean = |x: Vec3| -> Result<f64> {
        let s = StretchState::from_principal(log_stretches_from_jyz(x).map(exp))?;
        Ok(stress_from_energy(m, &s, cfg.theta)?.mean_stress)
    };
    let slopes = |x: Vec3| -> Result<(f64, [f64; 2])> {
        let [j, y, z] = x;
        let hy = 1e-3 * y;
        let hz = z_step(y, 1e-2);
        let dy = (mean([j, y + hy, z])? - mean([j, y - hy, z])?) / (2.0 * hy);
        let dz = (mean([j, y, z + hz])? - mean([j, y, z - hz])?) / (2.0 * hz);
        Ok((mean(x)?, [dy, dz]))
    };

    let mut worst = Worst::<Vec3>::new();
    let mut scale: f64 = 0.0;
    for trial in 0..cfg.trials.max(1) {
        let mut rng = sampling::trial_rng(cfg.seed, trial as u64);
        let x = sample_point(&mut rng);
        match slopes(x) {
            Ok((p, [dy, dz])) => {
                scale = scale.max(abs(p));
                worst.offer(abs(dy).max(abs(dz)), || x);
            }
            Err(_) => worst.offer(f64::INFINITY, || x),
        }
    }
    let tolerance = cfg.tolerance_or(1e-6 * (1.0 + scale));
    CheckReport::from_residual("mean_stress", worst.value, tolerance)
        .with_witness(worst.at.map(|x| Witness::new("(j, y, z)", x)))
        .with_seed(cfg.seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::builtins;

    #[test]
    fn coupled_energy_residual_is_its_coefficient() {
        let r = decomposability_check(&builtins::coupled_witness(1.0), 20);
        assert!(!r.passed());
        assert!((r.residual - 1.0).abs() < 1e-6, "{}", r.residual);
    }

    #[test]
    fn separable_energy_without_partials_passes() {
        let m = EnergyModel::from_fn("sep", Coordinates::Jyz, |[j, y, z], _| {
            (2.0 * j).cosh() + y * y + 3.0 * z
        });
        assert!(decomposability_check(&m, 20).passed());
        let bad = EnergyModel::from_fn("bad", Coordinates::Jyz, |[j, _, z], _| j * z);
        let r = decomposability_check(&bad, 20);
        assert!((r.residual - 1.0).abs() < 1e-4, "{}", r.residual);
    }

    #[test]
    fn mean_stress_agrees_with_mixed_partials() {
        let cfg = CheckConfig::default();
        for m in [
            builtins::hencky_quadratic(1.0, 0.5),
            builtins::pressure_only(2.0),
            builtins::richter_intro(1.0),
            builtins::coupled_witness(1.0),
        ] {
            let a = decomposability_check_with(&m, &cfg).passed();
            let b = mean_stress_check(&m, &cfg).passed();
            assert_eq!(a, b, "{}", m.name());
        }
    }
}
