//! Energy transformations that wrap an existing density.
//!
//! Partials of the wrapped density are chained through analytically when the
//! inner density supplies them; otherwise the outer model falls back to
//! central differences like any other density without partials.

use alloc::format;
use alloc::sync::Arc;

use super::{Coordinates, EnergyDensity, EnergyModel};
use crate::kinematics::{jkl_from_jyz, jyz_from_jkl, stretches_from_i123, InvariantSet};
use crate::math::{abs, exp, expm1, ln, log1p};
use crate::tensor3::Vec3;

type Inner = Arc<dyn EnergyDensity>;

/// Maps a point in `from` coordinates to the equivalent point in `to`.
pub(crate) fn map_point(from: Coordinates, to: Coordinates, x: Vec3) -> Vec3 {
    use Coordinates::*;
    match (from, to) {
        (a, b) if a == b => x,
        (Jkl, Jyz) => jyz_from_jkl(x),
        (Jyz, Jkl) => jkl_from_jyz(x),
        _ => to.of(&InvariantSet::from_log_stretches(from.log_stretches(x))),
    }
}

struct Converted {
    inner: Inner,
    inner_coords: Coordinates,
    outer_coords: Coordinates,
}

impl EnergyDensity for Converted {
    fn energy(&self, x: Vec3, theta: f64) -> f64 {
        self.inner
            .energy(map_point(self.outer_coords, self.inner_coords, x), theta)
    }

    fn partials(&self, x: Vec3, theta: f64) -> Option<Vec3> {
        use Coordinates::*;
        let y = map_point(self.outer_coords, self.inner_coords, x);
        let g = self.inner.partials(y, theta)?;
        Some(match (self.outer_coords, self.inner_coords) {
            (Jyz, Jkl) => jyz_partials_from_jkl(x, g),
            (Jkl, Jyz) => jkl_partials_from_jyz(x, g),
            (outer, I123) => {
                let ls = outer.log_stretches(x);
                let w = log_partials_from_i123(ls, g);
                if outer == Jyz {
                    jyz_partials_from_jkl(x, w)
                } else {
                    w
                }
            }
            (I123, inner) => {
                let g = if inner == Jyz {
                    jkl_partials_from_jyz(jkl_from_jyz(y), g)
                } else {
                    g
                };
                i123_partials_from_jkl(x, g)
            }
            _ => g,
        })
    }
}

/// `W̃(j,y,z) = W(j, y + j²/3, z + j·y + j³/9)`, partials of `W` given.
fn jyz_partials_from_jkl([j, y, _]: Vec3, [wj, wk, wl]: Vec3) -> Vec3 {
    [
        wj + 2.0 * j / 3.0 * wk + (y + j * j / 3.0) * wl,
        wk + j * wl,
        wl,
    ]
}

/// `W(j,k,l) = W̃(j, k − j²/3, l − j·k + 2j³/9)`, partials of `W̃` given.
fn jkl_partials_from_jyz([j, k, _]: Vec3, [wj, wy, wz]: Vec3) -> Vec3 {
    [
        wj - 2.0 * j / 3.0 * wy + (2.0 * j * j / 3.0 - k) * wz,
        wy - j * wz,
        wz,
    ]
}

// Both directions between (I₁, I₂, I₃) and (j, k, l) go through principal
// values. For an isotropic W, ∂W/∂ℓᵢ = φ(ℓᵢ) with
//   φ(t) = W_{I₃}·I₃ + W_{I₁}·eᵗ + W_{I₂}·e²ᵗ   (from I-partials),
//   φ(t) = W_j + 2W_k·t + 3W_l·t²                (from log partials),
// so the partials on the other side are the coefficients of the quadratic
// interpolant of a known function at the principal values. Hermite
// interpolation covers coincident values.

/// Relative node spacing below which a first divided difference is replaced
/// by a centred one over this spread.
const DD_SPREAD: f64 = 1e-5;

/// `f[a, b, c]` from a stable first divided difference `f1`.
fn second_divided_difference(f1: impl Fn(f64, f64) -> f64, a: f64, b: f64, c: f64) -> f64 {
    let h = DD_SPREAD * (1.0 + abs(a) + abs(b));
    if abs(a - b) > h {
        (f1(a, c) - f1(b, c)) / (a - b)
    } else {
        let m = 0.5 * (a + b);
        (f1(m + h, c) - f1(m - h, c)) / (2.0 * h)
    }
}

/// Coefficients `(c₀, c₁, c₂)` of the quadratic interpolating `f` at `x`.
fn quadratic_interpolant(f: impl Fn(f64) -> f64, f1: impl Fn(f64, f64) -> f64, x: Vec3) -> Vec3 {
    let [x0, x1, x2] = x;
    let d1 = f1(x0, x1);
    let d2 = second_divided_difference(&f1, x0, x2, x1);
    [f(x0) - d1 * x0 + d2 * x0 * x1, d1 - d2 * (x0 + x1), d2]
}

/// `(eᶻ − 1)/z`.
fn phi1(z: f64) -> f64 {
    if abs(z) < 1e-8 {
        1.0 + 0.5 * z
    } else {
        expm1(z) / z
    }
}

/// `(log a − log b)/(a − b)`.
fn log_dd(a: f64, b: f64) -> f64 {
    let r = (a - b) / b;
    if abs(r) < 1e-8 {
        (1.0 - 0.5 * r) / b
    } else {
        log1p(r) / (a - b)
    }
}

fn log_partials_from_i123(ls: Vec3, [w1, w2, w3]: Vec3) -> Vec3 {
    let i3 = exp(ls[0] + ls[1] + ls[2]);
    let phi = |t: f64| w3 * i3 + w1 * exp(t) + w2 * exp(2.0 * t);
    let phi_dd =
        |a: f64, b: f64| w1 * exp(b) * phi1(a - b) + 2.0 * w2 * exp(2.0 * b) * phi1(2.0 * (a - b));
    let [c0, c1, c2] = quadratic_interpolant(phi, phi_dd, ls);
    [c0, 0.5 * c1, c2 / 3.0]
}

fn i123_partials_from_jkl(i: Vec3, [wj, wk, wl]: Vec3) -> Vec3 {
    let lam = stretches_from_i123(i);
    let chi = |s: f64| {
        let t = ln(s);
        wj + 2.0 * wk * t + 3.0 * wl * t * t
    };
    let chi_dd = |a: f64, b: f64| (2.0 * wk + 3.0 * wl * (ln(a) + ln(b))) * log_dd(a, b);
    let [c0, c1, c2] = quadratic_interpolant(chi, chi_dd, lam);
    [c1, c2, c0 / i[2]]
}

pub(crate) fn convert(m: &EnergyModel, target: Coordinates) -> EnergyModel {
    if m.coordinates() == target {
        return m.clone();
    }
    let density = Converted {
        inner: m.density().clone(),
        inner_coords: m.coordinates(),
        outer_coords: target,
    };
    m.derived(
        format!("{}[{}]", m.name(), target.name()),
        target,
        Arc::new(density),
    )
}

struct Shield {
    inner: Inner,
    coords: Coordinates,
}

impl Shield {
    /// Coordinates of `V⁻¹` and `det V`, given coordinates of `V`.
    fn inverted(&self, x: Vec3) -> (Vec3, f64) {
        match self.coords {
            Coordinates::Jkl | Coordinates::Jyz => ([-x[0], x[1], -x[2]], exp(x[0])),
            Coordinates::I123 => {
                let [i1, i2, i3] = x;
                let e2 = 0.5 * i1 * i1 - i2;
                let u1 = e2 / i3;
                let u2 = 0.5 * e2 * e2 / (i3 * i3) - i1 / i3;
                ([u1, u2, 1.0 / i3], i3)
            }
        }
    }
}

impl EnergyDensity for Shield {
    fn energy(&self, x: Vec3, theta: f64) -> f64 {
        let (u, det) = self.inverted(x);
        det * self.inner.energy(u, theta)
    }

    fn partials(&self, x: Vec3, theta: f64) -> Option<Vec3> {
        let (u, det) = self.inverted(x);
        let g = self.inner.partials(u, theta)?;
        match self.coords {
            Coordinates::Jkl | Coordinates::Jyz => {
                let w = self.inner.energy(u, theta);
                Some([det * (w - g[0]), det * g[1], -det * g[2]])
            }
            Coordinates::I123 => {
                let [i1, _, i3] = x;
                let e2 = u[0] * i3;
                let w = self.inner.energy(u, theta);
                // Jacobian rows ∂u_b/∂I_a.
                let du1 = [i1 / i3, -1.0 / i3, -u[0] / i3];
                let du2 = [
                    (e2 * i1 - i3) / (i3 * i3),
                    -e2 / (i3 * i3),
                    -e2 * e2 / (i3 * i3 * i3) + i1 / (i3 * i3),
                ];
                let du3 = [0.0, 0.0, -1.0 / (i3 * i3)];
                let mut out: Vec3 =
                    core::array::from_fn(|a| i3 * (g[0] * du1[a] + g[1] * du2[a] + g[2] * du3[a]));
                out[2] += w;
                Some(out)
            }
        }
    }
}

/// Shield transformation `W(V) = det V · m(V⁻¹)`, in the model's own coordinates.
///
/// The transformation is an involution.
pub fn shield_transform(m: &EnergyModel) -> EnergyModel {
    let density = Shield {
        inner: m.density().clone(),
        coords: m.coordinates(),
    };
    m.derived(
        format!("Shield({})", m.name()),
        m.coordinates(),
        Arc::new(density),
    )
}

struct Rebased {
    inner: Inner,
    coords: Coordinates,
    j1: f64,
}

impl Rebased {
    /// Coordinates with respect to the old reference, given those with
    /// respect to the new one (`L = L̂ + (j₁/3)·id`).
    fn original(&self, x: Vec3) -> Vec3 {
        let m = self.j1 / 3.0;
        match self.coords {
            Coordinates::Jyz => [x[0] + self.j1, x[1], x[2]],
            Coordinates::Jkl => {
                let [j, k, l] = x;
                [
                    j + self.j1,
                    k + 2.0 * m * j + 3.0 * m * m,
                    l + 3.0 * m * k + 3.0 * m * m * j + 3.0 * m * m * m,
                ]
            }
            Coordinates::I123 => {
                let c = exp(m);
                [c * x[0], c * c * x[1], c * c * c * x[2]]
            }
        }
    }
}

impl EnergyDensity for Rebased {
    fn energy(&self, x: Vec3, theta: f64) -> f64 {
        exp(-self.j1) * self.inner.energy(self.original(x), theta)
    }

    fn partials(&self, x: Vec3, theta: f64) -> Option<Vec3> {
        let g = self.inner.partials(self.original(x), theta)?;
        let f = exp(-self.j1);
        let m = self.j1 / 3.0;
        Some(match self.coords {
            Coordinates::Jyz => g.map(|v| f * v),
            Coordinates::Jkl => [
                f * (g[0] + 2.0 * m * g[1] + 3.0 * m * m * g[2]),
                f * (g[1] + 3.0 * m * g[2]),
                f * g[2],
            ],
            Coordinates::I123 => {
                let c = exp(m);
                [f * c * g[0], f * c * c * g[1], f * c * c * c * g[2]]
            }
        })
    }
}

/// Energy referred to a new stress-free reference reached by the uniform
/// stretch with `log det = j1`: `Ŵ(ĵ, y, z, Θ) = e^{−j₁}·W(ĵ + j₁, y, z, Θ)`.
///
/// `(j, k, l)` and `(I₁, I₂, I₃)` models are shifted by the equivalent change
/// of variables and keep their coordinates. An attached thermal-expansion law
/// is shifted along, `φ̂ = φ − j₁`.
pub fn rebase_energy(m: &EnergyModel, j1: f64) -> EnergyModel {
    let density = Rebased {
        inner: m.density().clone(),
        coords: m.coordinates(),
        j1,
    };
    let mut out = m.derived(
        format!("{}@j1={}", m.name(), j1),
        m.coordinates(),
        Arc::new(density),
    );
    if let Some(phi) = m.thermal_expansion_fn() {
        let phi = phi.clone();
        out = out.with_thermal_expansion(move |t| phi(t) - j1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::builtins;

    fn fd_partials(m: &EnergyModel, x: Vec3) -> Vec3 {
        core::array::from_fn(|i| {
            let h = 1e-6;
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            (m.energy(xp, 0.0).unwrap() - m.energy(xm, 0.0).unwrap()) / (2.0 * h)
        })
    }

    fn assert_partials_match(m: &EnergyModel, x: Vec3) {
        let a = m.analytic_partials(x, 0.0).expect("analytic partials");
        let f = fd_partials(m, x);
        for i in 0..3 {
            assert!(
                (a[i] - f[i]).abs() < 1e-7 * (1.0 + a[i].abs()),
                "{}: {a:?} vs {f:?}",
                m.name()
            );
        }
    }

    #[test]
    fn constant_energy_shield_is_det_scaled() {
        for c in [Coordinates::Jkl, Coordinates::Jyz, Coordinates::I123] {
            let m = EnergyModel::from_fn("c", c, |_, _| 2.5);
            let w = shield_transform(&m);
            let lam = [1.3, 0.8, 1.1];
            let got = w.energy_at_stretches(lam, 0.0).unwrap();
            assert!((got - 2.5 * 1.3 * 0.8 * 1.1).abs() < 1e-14, "{c:?}");
        }
    }

    #[test]
    fn double_shield_at_identity() {
        let mu = 0.75;
        let w = shield_transform(&shield_transform(&builtins::shield_dual(mu)));
        let got = w.energy_at_stretches([1.0; 3], 0.0).unwrap();
        assert!((got + 2.0 * mu).abs() < 1e-14);
    }

    #[test]
    fn chained_partials_agree_with_differences() {
        let x_jkl = InvariantSet::from_log_stretches([0.3, -0.1, 0.15]);
        let models = [
            builtins::hencky_quadratic(1.2, 0.7),
            builtins::richter_intro(0.9),
            builtins::shield_dual(0.9),
        ];
        for m in &models {
            let s = shield_transform(m);
            assert_partials_match(&s, s.coordinates().of(&x_jkl));
            let r = rebase_energy(m, 0.2);
            assert_partials_match(&r, r.coordinates().of(&x_jkl));
        }
        let h = builtins::hencky_quadratic(1.2, 0.7);
        let c = h.to_coordinates(Coordinates::Jyz);
        assert_partials_match(&c, x_jkl.jyz());
        let back = c.to_coordinates(Coordinates::Jkl);
        assert_partials_match(&back, x_jkl.jkl());
    }

    #[test]
    fn principal_value_chain_rule() {
        let x = InvariantSet::from_log_stretches([0.3, -0.1, 0.15]);
        for c in [Coordinates::Jkl, Coordinates::Jyz] {
            let m = builtins::richter_intro(0.9).to_coordinates(c);
            assert_partials_match(&m, c.of(&x));
        }
        let m = builtins::hencky_quadratic_jyz(1.0, 0.4).to_coordinates(Coordinates::I123);
        assert_partials_match(&m, x.i123());
    }

    #[test]
    fn converted_stress_at_repeated_stretches() {
        use crate::constitutive::stress_from_energy;
        use crate::kinematics::StretchState;
        for lam in [
            [1.4, 1.4, 0.8],
            [1.2, 0.9, 0.9],
            [1.1, 1.1, 1.1],
            [1.3, 1.3 + 1e-9, 0.7],
        ] {
            let s = StretchState::from_principal(lam).unwrap();
            for m in [
                builtins::richter_intro(0.9),
                builtins::hencky_quadratic(1.0, 0.5),
            ] {
                let want = stress_from_energy(&m, &s, 0.0).unwrap().sigma;
                for c in [Coordinates::Jkl, Coordinates::Jyz, Coordinates::I123] {
                    let got = stress_from_energy(&m.to_coordinates(c), &s, 0.0)
                        .unwrap()
                        .sigma;
                    assert!((got - want).max_abs() < 1e-9, "{} {c:?} {lam:?}", m.name());
                }
            }
        }
    }

    #[test]
    fn conversion_preserves_energy() {
        let inv = InvariantSet::from_log_stretches([0.25, -0.3, 0.05]);
        let m = builtins::richter_intro(1.0);
        let w0 = m.energy_at(&inv, 0.0).unwrap();
        for c in [Coordinates::Jkl, Coordinates::Jyz] {
            let w = m.to_coordinates(c).energy_at(&inv, 0.0).unwrap();
            assert!((w - w0).abs() < 1e-13);
        }
    }

    #[test]
    fn rebase_by_zero_is_identity() {
        let m = builtins::hencky_quadratic_jyz(1.0, 1.0);
        let r = rebase_energy(&m, 0.0);
        let x = [0.1, 0.02, 0.001];
        assert_eq!(m.energy(x, 0.0).unwrap(), r.energy(x, 0.0).unwrap());
    }

    #[test]
    fn rebase_shifts_thermal_expansion() {
        let m = builtins::hencky_quadratic_jyz(1.0, 1.0).with_thermal_expansion(|t| 1e-3 * t);
        let r = rebase_energy(&m, 0.05);
        assert!((r.thermal_expansion(100.0).unwrap() - 0.05).abs() < 1e-15);
    }
}
