use alloc::vec::Vec;

use super::{sampling, CheckConfig, CheckReport, Outcome, Witness, Worst};
use crate::constitutive::{EnergyModel, StressLaw};
use crate::kinematics::{CauchyGreenInvariants, StretchState};
use crate::math::abs;
use crate::tensor3::Vec3;
use crate::Result;

const STRETCH_MIN: f64 = 0.3;
const STRETCH_MAX: f64 = 3.0;
const STRETCH_GAP: f64 = 0.02;
/// Relative band within which an exactly evaluated strict inequality counts
/// as an equality.
const EXACT_BAND: f64 = 1e-10;
/// The same for finite-difference estimates.
const FD_BAND: f64 = 1e-6;

/// Principal Cauchy stresses at principal stretches `stretches`, in the same order.
pub fn principal_stresses(law: &StressLaw, stretches: Vec3, theta: f64) -> Result<Vec3> {
    let s = StretchState::from_principal(stretches)?;
    Ok(law.evaluate(&s, theta)?.sigma.diagonal())
}

/// `∂σᵢ/∂λᵢ` by central differences with step `h`.
pub fn tension_extension_slopes(
    law: &StressLaw,
    stretches: Vec3,
    theta: f64,
    h: f64,
) -> Result<Vec3> {
    let mut out = [0.0; 3];
    for i in 0..3 {
        let (mut p, mut m) = (stretches, stretches);
        p[i] += h;
        m[i] -= h;
        out[i] = (principal_stresses(law, p, theta)?[i] - principal_stresses(law, m, theta)?[i])
            / (2.0 * h);
    }
    Ok(out)
}

/// `(∂W/∂IB₁, ∂W/∂IB₂)` in the invariants of `B = F·Fᵀ`, by central differences.
fn cauchy_green_slopes(
    m: &EnergyModel,
    stretches: Vec3,
    theta: f64,
    step: f64,
) -> Result<[f64; 2]> {
    let cg = CauchyGreenInvariants::from_stretches(stretches);
    let w = |c: CauchyGreenInvariants| m.energy_at_stretches(c.stretches(), theta);
    let mut out = [0.0; 2];
    for (i, o) in out.iter_mut().enumerate() {
        let x = if i == 0 { cg.ib1 } else { cg.ib2 };
        let h = step * (1.0 + abs(x));
        let (mut p, mut q) = (cg, cg);
        if i == 0 {
            p.ib1 += h;
            q.ib1 -= h;
        } else {
            p.ib2 += h;
            q.ib2 -= h;
        }
        *o = (w(p)? - w(q)?) / (2.0 * h);
    }
    Ok(out)
}

/// Accumulates the smallest value of a quantity that should be positive.
struct Positivity {
    name: &'static str,
    label: &'static str,
    band: f64,
    lowest: Worst<Vec3>,
    scale: f64,
}

impl Positivity {
    fn new(name: &'static str, label: &'static str, band: f64) -> Self {
        Positivity {
            name,
            label,
            band,
            lowest: Worst::new(),
            scale: 0.0,
        }
    }

    fn offer(&mut self, value: Result<f64>, scale: f64, at: Vec3) {
        match value {
            Ok(v) => {
                self.scale = self.scale.max(scale);
                self.lowest.offer(-v, || at);
            }
            Err(_) => self.lowest.offer(f64::INFINITY, || at),
        }
    }

    /// Residual is minus the smallest value; tolerance is minus the band.
    fn report(self, seed: u64) -> CheckReport {
        let band = self.band * (1.0 + self.scale);
        let residual = self.lowest.value;
        let mut r = CheckReport::from_residual(self.name, residual, -band);
        if r.outcome == Outcome::Fail && residual <= band {
            r.outcome = Outcome::Boundary;
        }
        r.with_witness(self.lowest.at.map(|x| Witness::new(self.label, x)))
            .with_seed(seed)
    }
}

pub fn inequality_suite(m: &EnergyModel, trials: usize) -> Vec<CheckReport> {
    inequality_suite_with(
        &StressLaw::FromEnergy(m.clone()),
        &CheckConfig::default().with_trials(trials),
    )
}

/// Strict inequalities over random states with distinct principal stretches
/// in `[0.3, 3]`:
///
/// - `empirical_I1`, `empirical_I2`: `∂W/∂IB₁ > 0`, `∂W/∂IB₂ > 0` (energies only),
/// - `baker_ericksen`: `(σᵢ − σⱼ)(λᵢ − λⱼ) > 0`,
/// - `tension_extension`: `∂σᵢ/∂λᵢ > 0`.
///
/// Values within a small band of zero are reported as [`Outcome::Boundary`].
pub fn inequality_suite_with(law: &StressLaw, cfg: &CheckConfig) -> Vec<CheckReport> {
    let label = "principal stretches";
    let energy = law.energy_model();
    let mut ib1 = Positivity::new("empirical_I1", label, FD_BAND);
    let mut ib2 = Positivity::new("empirical_I2", label, FD_BAND);
    let mut be = Positivity::new("baker_ericksen", label, EXACT_BAND);
    let mut te = Positivity::new("tension_extension", label, FD_BAND);

    for trial in 0..cfg.trials.max(1) {
        let mut rng = sampling::trial_rng(cfg.seed, trial as u64);
        let lam = sampling::distinct_in(&mut rng, STRETCH_MIN, STRETCH_MAX, STRETCH_GAP);

        let sigma = principal_stresses(law, lam, cfg.theta);
        let scale = sigma
            .as_ref()
            .map(|s| s.iter().fold(0.0f64, |a, v| a.max(abs(*v))) * lam[0])
            .unwrap_or(0.0);
        let be_min = sigma.map(|s| {
            let pairs = [(0, 1), (0, 2), (1, 2)];
            pairs
                .iter()
                .map(|&(i, j)| (s[i] - s[j]) * (lam[i] - lam[j]))
                .fold(f64::INFINITY, f64::min)
        });
        be.offer(be_min, scale, lam);

        let slopes = tension_extension_slopes(law, lam, cfg.theta, cfg.fd_step);
        let te_scale = slopes
            .as_ref()
            .map(|s| s.iter().fold(0.0f64, |a, v| a.max(abs(*v))))
            .unwrap_or(0.0);
        te.offer(slopes.map(|s| s[0].min(s[1]).min(s[2])), te_scale, lam);

        if let Some(m) = energy {
            let g = cauchy_green_slopes(m, lam, cfg.theta, cfg.fd_step);
            let g_scale = g.as_ref().map(|g| abs(g[0]).max(abs(g[1]))).unwrap_or(0.0);
            ib1.offer(g.as_ref().map(|g| g[0]).map_err(Clone::clone), g_scale, lam);
            ib2.offer(g.map(|g| g[1]), g_scale, lam);
        }
    }

    let mut out = Vec::with_capacity(4);
    if energy.is_some() {
        out.push(ib1.report(cfg.seed));
        out.push(ib2.report(cfg.seed));
    }
    out.push(be.report(cfg.seed));
    out.push(te.report(cfg.seed));
    out
}
