use super::{CheckReport, Witness, Worst};
use crate::kinematics::{invariants, StretchState, SHAPE_RATIO_MAX};
use crate::math::abs;

/// Largest `|z|` accepted at a state with `y` below the shape floor.
const Z_FLOOR: f64 = 1e-10;

/// `0 ≤ z²/y³ ≤ 1/6` on every state.
///
/// The residual is the largest ratio; tolerance `1/6 + 1e-10`. Near-spherical
/// states (`y` below the floor) only need `|z|` negligible. The witness holds
/// the principal log-stretches of the extreme state.
pub fn domain_check(states: &[StretchState]) -> CheckReport {
    let mut worst = Worst::new();
    for s in states {
        let inv = invariants(s);
        let ratio = match inv.shape_ratio() {
            Some(r) => r,
            None if inv.y >= 0.0 && abs(inv.z) < Z_FLOOR => 0.0,
            None => f64::INFINITY,
        };
        let ratio = if ratio < 0.0 { f64::INFINITY } else { ratio };
        worst.offer(ratio, || s.log_stretches());
    }
    CheckReport::from_residual("domain", worst.value, SHAPE_RATIO_MAX + 1e-10)
        .with_witness(worst.at.map(|x| Witness::new("principal log-stretches", x)))
}
