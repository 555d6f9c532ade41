use rand::Rng;

use super::{sampling, CheckConfig, CheckReport, Witness, Worst};
use crate::constitutive::StressLaw;
use crate::kinematics::{stretches_from_i123, InvariantSet};
use crate::math::abs;
use crate::tensor3::Vec3;
use crate::Result;

const POINTS: usize = 50;
const OUTER_STEP: f64 = 1e-5;
const PAIRS: [(usize, usize, &str); 3] = [(0, 1, "I1-I2"), (0, 2, "I1-I3"), (1, 2, "I2-I3")];

/// Samples `(I₁, I₂, I₃)` of stretches in `[0.5, 2]` with `I₃ ∈ [0.5, 2]`,
/// `I₁ ∈ [2.5, 5]` and well separated stretches.
fn sample_point<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let lam = sampling::distinct_in(rng, 0.5, 2.0, 0.15);
        let inv = InvariantSet::from_stretches(lam);
        if (0.5..=2.0).contains(&inv.i3) && (2.5..=5.0).contains(&inv.i1) {
            return inv.i123();
        }
    }
}

/// Symmetry test of the would-be gradient of `W(I₁, I₂, I₃)` implied by
/// `σ = g₁·id + g₂·V + g₃·V²`, namely `(I₃·g₂, I₃·g₃, g₁)`.
///
/// `coefficients` maps `(I₁, I₂, I₃)` to `(g₁, g₂, g₃)`. The residual is the
/// largest mixed-partial asymmetry found by central differences at 50 random
/// points; default tolerance `1e-5`.
pub fn integrability_check<C>(coefficients: C, cfg: &CheckConfig) -> CheckReport
where
    C: Fn(Vec3) -> Result<Vec3>,
{
    let tolerance = cfg.tolerance_or(1e-5);
    let field = |x: Vec3| -> Result<Vec3> {
        let [g1, g2, g3] = coefficients(x)?;
        Ok([x[2] * g2, x[2] * g3, g1])
    };
    // ∂G_a/∂I_b
    let jacobian = |x: Vec3| -> Result<[Vec3; 3]> {
        let mut d = [[0.0; 3]; 3];
        for b in 0..3 {
            let h = OUTER_STEP * (1.0 + abs(x[b]));
            let (mut xp, mut xm) = (x, x);
            xp[b] += h;
            xm[b] -= h;
            let (gp, gm) = (field(xp)?, field(xm)?);
            for a in 0..3 {
                d[a][b] = (gp[a] - gm[a]) / (2.0 * h);
            }
        }
        Ok(d)
    };

    let mut rng = sampling::trial_rng(cfg.seed, 0);
    let mut worst = Worst::<(&'static str, Vec3)>::new();
    for _ in 0..POINTS {
        let x = sample_point(&mut rng);
        match jacobian(x) {
            Ok(d) => {
                for (a, b, label) in PAIRS {
                    worst.offer(abs(d[a][b] - d[b][a]), || (label, x));
                }
            }
            Err(_) => worst.offer(f64::INFINITY, || ("evaluation failed", x)),
        }
    }
    CheckReport::from_residual("integrability", worst.value, tolerance)
        .with_witness(worst.at.map(|(label, x)| Witness::new(label, x)))
        .with_seed(cfg.seed)
}

/// [`integrability_check`] on the stretch-basis coefficients of `law`.
pub fn integrability_check_law(law: &StressLaw, cfg: &CheckConfig) -> CheckReport {
    integrability_check(
        |x| law.stretch_coefficients(stretches_from_i123(x), cfg.theta),
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::builtins;

    #[test]
    fn hooke_pair_localizes() {
        let (lambda, mu) = (3.0, 1.0);
        let r = integrability_check_law(
            &builtins::non_integrable_hooke(lambda, mu),
            &CheckConfig::default(),
        );
        assert!(!r.passed());
        assert!(
            (r.residual - (lambda - 2.0 * mu)).abs() < 1e-8,
            "{}",
            r.residual
        );
        assert_eq!(r.witness.unwrap().label, "I1-I3");
    }

    #[test]
    fn hooke_with_lame_ratio_two_passes() {
        let r = integrability_check_law(
            &StressLaw::hooke(2.0, 1.0).unwrap(),
            &CheckConfig::default(),
        );
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn energy_fields_pass() {
        for m in [
            builtins::richter_intro(1.0),
            builtins::shield_dual(0.7),
            builtins::pressure_only(2.0),
        ] {
            let r = integrability_check_law(&StressLaw::FromEnergy(m), &CheckConfig::default());
            assert!(r.passed(), "{r:?}");
        }
    }
}
