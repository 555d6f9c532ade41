//! Stretch, logarithmic stretch and their invariants.
//!
//! A [`StretchState`] carries `V`, `L = log V` and `R` from `F = V·R`
//! together with the shared principal axes, so invariants are evaluated from
//! principal values rather than from explicit matrix powers.

use crate::math::{abs, cbrt, cos, exp, ln, sqrt, FRAC_2PI_3};
use crate::tensor3::{self, EigenSys, Mat3, Rotation, SymTensor, Vec3};
use crate::{Error, Result};

/// Deformation gradient with positive determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeformationGradient(Mat3);

impl DeformationGradient {
    pub fn new(mat: Mat3) -> Result<Self> {
        let det = mat.det();
        if !mat.is_finite() || !(det > 0.0) {
            return Err(Error::SingularInput { det });
        }
        Ok(DeformationGradient(mat))
    }

    pub fn from_row_major(entries: &[f64; 9]) -> Result<Self> {
        Self::new(Mat3::from_row_major(entries))
    }

    pub fn mat(&self) -> &Mat3 {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }
}

/// `V`, `L = log V` and `R` of a deformation, sharing principal axes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StretchState {
    pub v: SymTensor,
    pub l: SymTensor,
    pub r: Rotation,
    stretches: Vec3,
    log_stretches: Vec3,
    axes: Rotation,
}

impl StretchState {
    fn from_axes(axes: Rotation, log_stretches: Vec3, r: Rotation) -> Self {
        let stretches = log_stretches.map(exp);
        let q = axes.matrix();
        StretchState {
            v: SymTensor::from_spectrum(stretches, q),
            l: SymTensor::from_spectrum(log_stretches, q),
            r,
            stretches,
            log_stretches,
            axes,
        }
    }

    /// State of a pure stretch `V` (with `R = id`).
    pub fn from_stretch(v: &SymTensor) -> Result<Self> {
        let eig = tensor3::sym_eigen(v);
        if !(eig.values[2] > 0.0) {
            return Err(Error::NotPositiveDefinite {
                smallest: eig.values[2],
            });
        }
        let mut s = Self::from_axes(eig.vectors, eig.values.map(ln), Rotation::identity());
        s.v = *v;
        s.stretches = eig.values;
        Ok(s)
    }

    /// State with logarithmic stretch `L`, i.e. `V = exp L`, `R = id`.
    pub fn from_log(l: &SymTensor) -> Self {
        let eig = tensor3::sym_eigen(l);
        let mut s = Self::from_axes(eig.vectors, eig.values, Rotation::identity());
        s.l = *l;
        s
    }

    /// Diagonal stretch `V = diag(λ)`; entry order is preserved in `v` and `l`.
    pub fn from_principal(stretches: Vec3) -> Result<Self> {
        if stretches.iter().any(|s| !(*s > 0.0)) {
            let smallest = stretches.iter().copied().fold(f64::INFINITY, f64::min);
            return Err(Error::NotPositiveDefinite { smallest });
        }
        Ok(StretchState {
            v: SymTensor::diag(stretches),
            l: SymTensor::diag(stretches.map(ln)),
            r: Rotation::identity(),
            stretches,
            log_stretches: stretches.map(ln),
            axes: Rotation::identity(),
        })
    }

    /// Principal stretches, aligned with the columns of [`Self::axes`].
    pub fn stretches(&self) -> Vec3 {
        self.stretches
    }

    pub fn log_stretches(&self) -> Vec3 {
        self.log_stretches
    }

    pub fn axes(&self) -> &Rotation {
        &self.axes
    }

    pub fn eigen(&self) -> EigenSys {
        EigenSys {
            values: self.stretches,
            vectors: self.axes,
        }
    }

    /// `j = tr L = log det F`.
    pub fn j(&self) -> f64 {
        self.log_stretches.iter().sum()
    }

    /// The deformation gradient `V·R`.
    pub fn deformation(&self) -> Mat3 {
        self.v.to_mat() * *self.r.matrix()
    }
}

/// Left polar decomposition of `F` followed by `L = log V`.
pub fn decompose(f: &DeformationGradient) -> Result<StretchState> {
    let (v, r) = tensor3::polar_left(f.mat())?;
    let mut s = StretchState::from_stretch(&v)?;
    s.r = r;
    Ok(s)
}

/// Invariants of `V` (`I₁ = tr V`, `I₂ = ½ tr V²`, `I₃ = det V`), of `L`
/// (`j`, `k`, `l` = traces of its first three powers) and of `dev L`
/// (`y = tr (dev L)²`, `z = tr (dev L)³`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantSet {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub j: f64,
    pub k: f64,
    pub l: f64,
    pub y: f64,
    pub z: f64,
}

impl InvariantSet {
    pub fn from_log_stretches(ls: Vec3) -> Self {
        let lam = ls.map(exp);
        let j: f64 = ls.iter().sum();
        let m = j / 3.0;
        let d = ls.map(|x| x - m);
        InvariantSet {
            i1: lam.iter().sum(),
            i2: 0.5 * lam.iter().map(|x| x * x).sum::<f64>(),
            i3: lam[0] * lam[1] * lam[2],
            j,
            k: ls.iter().map(|x| x * x).sum(),
            l: ls.iter().map(|x| x * x * x).sum(),
            y: d.iter().map(|x| x * x).sum(),
            z: d.iter().map(|x| x * x * x).sum(),
        }
    }

    pub fn from_stretches(stretches: Vec3) -> Self {
        let mut inv = Self::from_log_stretches(stretches.map(ln));
        inv.i1 = stretches.iter().sum();
        inv.i2 = 0.5 * stretches.iter().map(|x| x * x).sum::<f64>();
        inv.i3 = stretches[0] * stretches[1] * stretches[2];
        inv
    }

    pub fn jkl(&self) -> Vec3 {
        [self.j, self.k, self.l]
    }

    pub fn jyz(&self) -> Vec3 {
        [self.j, self.y, self.z]
    }

    pub fn i123(&self) -> Vec3 {
        [self.i1, self.i2, self.i3]
    }

    /// `z²/y³`, or `None` when `y` is too small for the ratio to mean anything.
    pub fn shape_ratio(&self) -> Option<f64> {
        (self.y > SHAPE_Y_FLOOR).then(|| self.z * self.z / (self.y * self.y * self.y))
    }
}

/// Below this `y` the deviator is treated as zero.
pub const SHAPE_Y_FLOOR: f64 = 1e-12;

/// Upper bound of `z²/y³` over traceless symmetric tensors.
pub const SHAPE_RATIO_MAX: f64 = 1.0 / 6.0;

pub fn invariants(s: &StretchState) -> InvariantSet {
    let mut inv = InvariantSet::from_log_stretches(s.log_stretches);
    let lam = s.stretches;
    inv.i1 = lam.iter().sum();
    inv.i2 = 0.5 * lam.iter().map(|x| x * x).sum::<f64>();
    inv.i3 = lam[0] * lam[1] * lam[2];
    inv
}

/// `(y, z)` from `(j, k, l)`.
pub fn jyz_from_jkl([j, k, l]: Vec3) -> Vec3 {
    [j, k - j * j / 3.0, l - j * k + 2.0 / 9.0 * j * j * j]
}

/// `(k, l)` from `(j, y, z)`.
pub fn jkl_from_jyz([j, y, z]: Vec3) -> Vec3 {
    [j, y + j * j / 3.0, z + j * y + j * j * j / 9.0]
}

/// Principal log-stretches (descending) with invariants `(j, y, z)`.
///
/// Points with `z²/y³` beyond the admissible bound are clamped onto it.
pub fn log_stretches_from_jyz([j, y, z]: Vec3) -> Vec3 {
    let m = j / 3.0;
    if !(y > 0.0) {
        return [m, m, m];
    }
    // Deviatoric eigenvalues d = 2r·cos φ with r = sqrt(y/6), cos 3φ = √6·z/y^{3/2}.
    let r = sqrt(y / 6.0);
    let c = (z / (6.0 * r * r * r)).clamp(-1.0, 1.0);
    let phi = crate::math::acos(c) / 3.0;
    let d0 = 2.0 * r * cos(phi);
    let d2 = 2.0 * r * cos(phi + FRAC_2PI_3);
    [m + d0, m - d0 - d2, m + d2]
}

pub fn log_stretches_from_jkl(jkl: Vec3) -> Vec3 {
    log_stretches_from_jyz(jyz_from_jkl(jkl))
}

/// Principal stretches (descending) with `I₁ = tr V`, `I₂ = ½ tr V²`, `I₃ = det V`.
pub fn stretches_from_i123([i1, i2, i3]: Vec3) -> Vec3 {
    tensor3::symmetric_cubic_roots(i1, 0.5 * (i1 * i1) - i2, i3)
}

/// Invariants of the left Cauchy-Green tensor `B = F·Fᵀ`.
///
/// `ib2 = tr Cof B = Σ λᵢ²λⱼ²`. The stretch-trace identity that links these
/// to `V` reads `(tr V)² = tr B + 2·tr Cof V`; see [`Self::stretch_trace_squared`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CauchyGreenInvariants {
    pub ib1: f64,
    pub ib2: f64,
    pub ib3: f64,
}

impl CauchyGreenInvariants {
    pub fn from_stretches(l: Vec3) -> Self {
        let sq = l.map(|x| x * x);
        CauchyGreenInvariants {
            ib1: sq.iter().sum(),
            ib2: sq[0] * sq[1] + sq[0] * sq[2] + sq[1] * sq[2],
            ib3: sq[0] * sq[1] * sq[2],
        }
    }

    /// Principal stretches (descending) recovered from `(tr B, tr Cof B, det B)`.
    pub fn stretches(&self) -> Vec3 {
        tensor3::symmetric_cubic_roots(self.ib1, self.ib2, self.ib3).map(|b| sqrt(b.max(0.0)))
    }

    /// `(tr V)²` written through `B` and `V`: `tr B + 2·tr Cof V`.
    pub fn stretch_trace_squared(&self, v: &SymTensor) -> f64 {
        self.ib1 + 2.0 * v.cofactor().trace()
    }
}

pub fn cauchy_green_invariants(f: &DeformationGradient) -> CauchyGreenInvariants {
    let b = f.mat().mul_transpose_self();
    CauchyGreenInvariants {
        ib1: b.trace(),
        ib2: b.cofactor().trace(),
        ib3: b.det(),
    }
}

/// Multiplicative split `V = V_g·(β·id)` and additive split
/// `L = L_g + (j/3)·id`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitState {
    /// Isochoric stretch, `det V_g = 1`.
    pub vg: SymTensor,
    /// Volumetric stretch factor, `V_v = β·id`.
    pub beta: f64,
    /// `dev L`.
    pub lg: SymTensor,
    /// `j/3`, so `L_v = (j/3)·id`.
    pub lv_scalar: f64,
}

impl SplitState {
    pub fn volumetric_stretch(&self) -> SymTensor {
        SymTensor::scaled_identity(self.beta)
    }

    pub fn volumetric_log(&self) -> SymTensor {
        SymTensor::scaled_identity(self.lv_scalar)
    }
}

pub fn split(s: &StretchState) -> SplitState {
    let lam = s.stretches;
    let beta = cbrt(lam[0] * lam[1] * lam[2]);
    SplitState {
        vg: s.v * (1.0 / beta),
        beta,
        lg: s.l.deviator(),
        lv_scalar: s.j() / 3.0,
    }
}

/// Refers the state to a new stress-free reference that is itself a uniform
/// stretch with `log det = j1`: `V̂ = e^{−j1/3}·V`, `L̂ = L − (j1/3)·id`.
pub fn rebase(s: &StretchState, j1: f64) -> StretchState {
    let shift = j1 / 3.0;
    let c = exp(-shift);
    StretchState {
        v: s.v * c,
        l: s.l - SymTensor::scaled_identity(shift),
        r: s.r,
        stretches: s.stretches.map(|x| x * c),
        log_stretches: s.log_stretches.map(|x| x - shift),
        axes: s.axes,
    }
}

/// `|det V_g − 1|`, for diagnostics.
pub fn isochoric_defect(split: &SplitState) -> f64 {
    abs(split.vg.det() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = core::f64::consts::LN_2;

    #[test]
    fn identity_decomposes_trivially() {
        let s = decompose(&DeformationGradient::new(Mat3::identity()).unwrap()).unwrap();
        assert!((s.v - SymTensor::identity()).max_abs() < 1e-15);
        assert!(s.l.max_abs() < 1e-15);
        assert!((*s.r.matrix() - Mat3::identity()).frobenius_norm() < 1e-15);
        let inv = invariants(&s);
        assert_eq!([inv.i1, inv.i2, inv.i3], [3.0, 1.5, 1.0]);
        assert_eq!(inv.jkl(), [0.0; 3]);
        assert_eq!([inv.y, inv.z], [0.0, 0.0]);
    }

    #[test]
    fn diagonal_stretch_invariants() {
        let f = DeformationGradient::new(Mat3::from_diagonal([2.0, 1.0, 1.0])).unwrap();
        let s = decompose(&f).unwrap();
        assert!((s.l - SymTensor::diag([LN2, 0.0, 0.0])).max_abs() < 1e-15);
        let inv = invariants(&s);
        assert!((inv.i1 - 4.0).abs() < 1e-15);
        assert!((inv.i2 - 3.0).abs() < 1e-15);
        assert!((inv.i3 - 2.0).abs() < 1e-15);
        assert!((inv.j - LN2).abs() < 1e-15);
        assert!((inv.k - LN2 * LN2).abs() < 1e-15);
        assert!((inv.l - LN2 * LN2 * LN2).abs() < 1e-15);
    }

    #[test]
    fn rejects_orientation_reversal() {
        assert!(DeformationGradient::new(Mat3::from_diagonal([1.0, 1.0, -1.0])).is_err());
        assert!(DeformationGradient::new(Mat3::zeros()).is_err());
    }

    #[test]
    fn shape_ratio_boundary_family() {
        let a = 0.1;
        let inv = InvariantSet::from_log_stretches([2.0 * a, -a, -a]);
        assert!((inv.y - 6.0 * a * a).abs() < 1e-15);
        assert!((inv.z - 6.0 * a * a * a).abs() < 1e-16);
        assert!((inv.shape_ratio().unwrap() - 1.0 / 6.0).abs() < 1e-12);

        let inv = InvariantSet::from_log_stretches([a, -a, 0.0]);
        assert!(inv.shape_ratio().unwrap().abs() < 1e-15);
        assert_eq!(
            InvariantSet::from_log_stretches([0.2; 3]).shape_ratio(),
            None
        );
    }

    #[test]
    fn cauchy_green_examples() {
        let cg = cauchy_green_invariants(&DeformationGradient::new(Mat3::identity()).unwrap());
        assert_eq!([cg.ib1, cg.ib2, cg.ib3], [3.0, 3.0, 1.0]);

        // diag(2,1,1): B = diag(4,1,1), Cof B = diag(1,4,4).
        let f = DeformationGradient::new(Mat3::from_diagonal([2.0, 1.0, 1.0])).unwrap();
        let cg = cauchy_green_invariants(&f);
        assert_eq!([cg.ib1, cg.ib2, cg.ib3], [6.0, 9.0, 4.0]);
        // (tr V)² = 16 = 6 + 2·tr Cof V = 6 + 2·5, whereas 6 + 2·tr Cof B = 24.
        let v = SymTensor::diag([2.0, 1.0, 1.0]);
        assert_eq!(cg.stretch_trace_squared(&v), 16.0);
        assert_ne!(cg.ib1 + 2.0 * cg.ib2, 16.0);

        let f = DeformationGradient::new(Mat3::from_diagonal([1.0, 1.0, 0.7])).unwrap();
        assert!((cauchy_green_invariants(&f).ib3 - 0.49).abs() < 1e-15);
    }

    #[test]
    fn split_examples() {
        let s = StretchState::from_stretch(&SymTensor::scaled_identity(1.7)).unwrap();
        let sp = split(&s);
        assert!((sp.beta - 1.7).abs() < 1e-15);
        assert!((sp.vg - SymTensor::identity()).max_abs() < 1e-15);
        assert!(sp.lg.max_abs() < 1e-15);

        let v = SymTensor::diag([2.0, 0.5, 1.0]);
        let s = StretchState::from_stretch(&v).unwrap();
        let sp = split(&s);
        assert!((sp.beta - 1.0).abs() < 1e-15);
        assert!((sp.vg - v).max_abs() < 1e-15);
        assert!((sp.lg - s.l).max_abs() < 1e-15);
        assert!(isochoric_defect(&sp) < 1e-15);
    }

    #[test]
    fn rebase_examples() {
        let s = StretchState::from_log(&SymTensor::new(0.1, -0.2, 0.05, 0.03, 0.0, -0.04));
        let same = rebase(&s, 0.0);
        assert_eq!(same.v, s.v);
        assert_eq!(same.l, s.l);

        let beta: f64 = 1.3;
        let id = StretchState::from_principal([1.0; 3]).unwrap();
        let r = rebase(&id, 3.0 * beta.ln());
        assert!((r.v - SymTensor::scaled_identity(1.0 / beta)).max_abs() < 1e-15);
        assert!((invariants(&r).j + 3.0 * beta.ln()).abs() < 1e-15);
    }

    #[test]
    fn coordinate_maps_invert() {
        let ls = [0.4, -0.1, 0.25];
        let inv = InvariantSet::from_log_stretches(ls);
        let jyz = jyz_from_jkl(inv.jkl());
        assert!((jyz[1] - inv.y).abs() < 1e-15 && (jyz[2] - inv.z).abs() < 1e-15);
        let jkl = jkl_from_jyz(inv.jyz());
        assert!((jkl[1] - inv.k).abs() < 1e-15 && (jkl[2] - inv.l).abs() < 1e-15);
        let back = log_stretches_from_jyz(inv.jyz());
        for (a, b) in back.iter().zip([0.4, 0.25, -0.1]) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
        let lam = stretches_from_i123(inv.i123());
        for (a, b) in lam.iter().zip([0.4f64, 0.25, -0.1]) {
            assert!((a - b.exp()).abs() < 1e-13);
        }
    }
}
