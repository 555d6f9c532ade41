//! Closed-form 3×3 real linear algebra.
//!
//! [`Mat3`] is a general row-major matrix, [`SymTensor`] a symmetric one stored
//! by its upper triangle. The symmetric eigensolver combines the trigonometric
//! root formula for the characteristic cubic with a short Jacobi polish, which
//! is what the primary matrix functions ([`primary_fn`], [`log_spd`],
//! [`exp_sym`], [`sqrt_spd`]) and the left polar decomposition build on.

use core::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use crate::math::{abs, acos, atan2, cos, exp, ln, sqrt, FRAC_2PI_3};
use crate::{Error, Result};

/// Absolute floor used by every relative tolerance in the crate.
pub const ABS_FLOOR: f64 = 1e-14;

/// Determinants below this magnitude are treated as singular.
pub const SINGULAR_DET: f64 = 1e-14;

/// Orthogonality tolerance for [`Rotation`].
pub const ROTATION_TOL: f64 = 1e-10;

/// Relative eigenvalue gap under which two eigenvalues are treated as one.
pub const EIGEN_GAP_REL: f64 = 1e-8;

pub type Vec3 = [f64; 3];

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
fn norm(a: Vec3) -> f64 {
    sqrt(dot(a, a))
}

#[inline]
fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// General 3×3 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const fn zeros() -> Self {
        Mat3([[0.0; 3]; 3])
    }

    pub const fn identity() -> Self {
        Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn from_diagonal(d: Vec3) -> Self {
        Mat3([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn from_row_major(e: &[f64; 9]) -> Self {
        Mat3([[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]])
    }

    pub fn from_columns(c: [Vec3; 3]) -> Self {
        Mat3([
            [c[0][0], c[1][0], c[2][0]],
            [c[0][1], c[1][1], c[2][1]],
            [c[0][2], c[1][2], c[2][2]],
        ])
    }

    pub fn to_row_major(&self) -> [f64; 9] {
        let m = &self.0;
        [
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        ]
    }

    pub fn column(&self, j: usize) -> Vec3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn row(&self, i: usize) -> Vec3 {
        self.0[i]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        dot(self.0[0], cross(self.0[1], self.0[2]))
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.0.iter().flatten().map(|x| x * x).sum::<f64>())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// Matrix of cofactors, `Cof X = det(X)·X⁻ᵀ` for invertible `X`.
    pub fn cofactor(&self) -> Self {
        let r = &self.0;
        // Row i of Cof X is the cross product of the other two rows.
        Mat3([cross(r[1], r[2]), cross(r[2], r[0]), cross(r[0], r[1])])
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if !det.is_finite() || !(abs(det) > SINGULAR_DET) {
            return Err(Error::SingularInput { det });
        }
        Ok(self.cofactor().transpose() * (1.0 / det))
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        [dot(self.0[0], v), dot(self.0[1], v), dot(self.0[2], v)]
    }

    /// `self · selfᵀ`, symmetric by construction.
    pub fn mul_transpose_self(&self) -> SymTensor {
        let r = &self.0;
        SymTensor {
            xx: dot(r[0], r[0]),
            yy: dot(r[1], r[1]),
            zz: dot(r[2], r[2]),
            xy: dot(r[0], r[1]),
            xz: dot(r[0], r[2]),
            yz: dot(r[1], r[2]),
        }
    }

    /// Symmetric part `(X + Xᵀ)/2`.
    pub fn sym(&self) -> SymTensor {
        let m = &self.0;
        SymTensor {
            xx: m[0][0],
            yy: m[1][1],
            zz: m[2][2],
            xy: 0.5 * (m[0][1] + m[1][0]),
            xz: 0.5 * (m[0][2] + m[2][0]),
            yz: 0.5 * (m[1][2] + m[2][1]),
        }
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }
}

impl Mul<f64> for Mat3 {
    type Output = Mat3;
    fn mul(self, s: f64) -> Mat3 {
        Mat3(self.0.map(|r| r.map(|x| x * s)))
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, rhs: Mat3) -> Mat3 {
        let mut out = self.0;
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += rhs.0[i][j];
            }
        }
        Mat3(out)
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: Mat3) -> Mat3 {
        self + rhs * -1.0
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self * -1.0
    }
}

/// Symmetric 3×3 tensor stored by its upper triangle.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SymTensor {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub xy: f64,
    pub xz: f64,
    pub yz: f64,
}

impl SymTensor {
    pub const fn new(xx: f64, yy: f64, zz: f64, xy: f64, xz: f64, yz: f64) -> Self {
        SymTensor {
            xx,
            yy,
            zz,
            xy,
            xz,
            yz,
        }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub const fn identity() -> Self {
        Self::scaled_identity(1.0)
    }

    pub const fn scaled_identity(s: f64) -> Self {
        Self::new(s, s, s, 0.0, 0.0, 0.0)
    }

    pub const fn diag(d: Vec3) -> Self {
        Self::new(d[0], d[1], d[2], 0.0, 0.0, 0.0)
    }

    /// Reads the upper triangle of `m`; the lower triangle is ignored.
    pub fn from_upper(m: &Mat3) -> Self {
        let m = &m.0;
        Self::new(m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2])
    }

    /// `Σ wᵢ vᵢ vᵢᵀ` for the columns `vᵢ` of `basis`.
    pub fn from_spectrum(weights: Vec3, basis: &Mat3) -> Self {
        let mut out = SymTensor::zero();
        for (k, &w) in weights.iter().enumerate() {
            let v = basis.column(k);
            out += SymTensor::new(
                w * v[0] * v[0],
                w * v[1] * v[1],
                w * v[2] * v[2],
                w * v[0] * v[1],
                w * v[0] * v[2],
                w * v[1] * v[2],
            );
        }
        out
    }

    pub fn to_mat(&self) -> Mat3 {
        Mat3([
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz],
        ])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 0) => self.xx,
            (1, 1) => self.yy,
            (2, 2) => self.zz,
            (0, 1) => self.xy,
            (0, 2) => self.xz,
            (1, 2) => self.yz,
            _ => panic!("index ({i}, {j}) out of range"),
        }
    }

    pub fn diagonal(&self) -> Vec3 {
        [self.xx, self.yy, self.zz]
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy + self.zz
    }

    pub fn det(&self) -> f64 {
        self.xx * (self.yy * self.zz - self.yz * self.yz)
            - self.xy * (self.xy * self.zz - self.yz * self.xz)
            + self.xz * (self.xy * self.yz - self.yy * self.xz)
    }

    /// `tr(A·B)` for symmetric `A`, `B`.
    pub fn ddot(&self, other: &SymTensor) -> f64 {
        self.xx * other.xx
            + self.yy * other.yy
            + self.zz * other.zz
            + 2.0 * (self.xy * other.xy + self.xz * other.xz + self.yz * other.yz)
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.ddot(self))
    }

    pub fn max_abs(&self) -> f64 {
        [self.xx, self.yy, self.zz, self.xy, self.xz, self.yz]
            .iter()
            .fold(0.0, |m, x| m.max(abs(*x)))
    }

    pub fn is_finite(&self) -> bool {
        [self.xx, self.yy, self.zz, self.xy, self.xz, self.yz]
            .iter()
            .all(|x| x.is_finite())
    }

    /// Traceless part `D − (tr D / 3)·id`.
    pub fn deviator(&self) -> SymTensor {
        let m = self.trace() / 3.0;
        SymTensor::new(
            self.xx - m,
            self.yy - m,
            self.zz - m,
            self.xy,
            self.xz,
            self.yz,
        )
    }

    /// `A²`, symmetric for symmetric `A`.
    pub fn square(&self) -> SymTensor {
        let a = self;
        SymTensor::new(
            a.xx * a.xx + a.xy * a.xy + a.xz * a.xz,
            a.xy * a.xy + a.yy * a.yy + a.yz * a.yz,
            a.xz * a.xz + a.yz * a.yz + a.zz * a.zz,
            a.xx * a.xy + a.xy * a.yy + a.xz * a.yz,
            a.xx * a.xz + a.xy * a.yz + a.xz * a.zz,
            a.xy * a.xz + a.yy * a.yz + a.yz * a.zz,
        )
    }

    pub fn cofactor(&self) -> SymTensor {
        SymTensor::from_upper(&self.to_mat().cofactor())
    }

    pub fn inverse(&self) -> Result<SymTensor> {
        Ok(SymTensor::from_upper(&self.to_mat().inverse()?))
    }

    /// `Q·A·Qᵀ`.
    pub fn rotate(&self, q: &Mat3) -> SymTensor {
        SymTensor::from_upper(&(*q * self.to_mat() * q.transpose()))
    }

    /// Frobenius norm of `A·B − B·A`.
    pub fn commutator_norm(&self, other: &SymTensor) -> f64 {
        let a = self.to_mat();
        let b = other.to_mat();
        (a * b - b * a).frobenius_norm()
    }
}

impl Add for SymTensor {
    type Output = SymTensor;
    fn add(self, r: SymTensor) -> SymTensor {
        SymTensor::new(
            self.xx + r.xx,
            self.yy + r.yy,
            self.zz + r.zz,
            self.xy + r.xy,
            self.xz + r.xz,
            self.yz + r.yz,
        )
    }
}

impl AddAssign for SymTensor {
    fn add_assign(&mut self, r: SymTensor) {
        *self = *self + r;
    }
}

impl Sub for SymTensor {
    type Output = SymTensor;
    fn sub(self, r: SymTensor) -> SymTensor {
        self + (-r)
    }
}

impl Neg for SymTensor {
    type Output = SymTensor;
    fn neg(self) -> SymTensor {
        self * -1.0
    }
}

impl Mul<f64> for SymTensor {
    type Output = SymTensor;
    fn mul(self, s: f64) -> SymTensor {
        SymTensor::new(
            self.xx * s,
            self.yy * s,
            self.zz * s,
            self.xy * s,
            self.xz * s,
            self.yz * s,
        )
    }
}

impl Mul<SymTensor> for f64 {
    type Output = SymTensor;
    fn mul(self, t: SymTensor) -> SymTensor {
        t * self
    }
}

impl Mul for SymTensor {
    type Output = Mat3;
    fn mul(self, r: SymTensor) -> Mat3 {
        self.to_mat() * r.to_mat()
    }
}

/// Proper orthogonal matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation(Mat3);

impl Rotation {
    pub const fn identity() -> Self {
        Rotation(Mat3::identity())
    }

    /// Validates `R·Rᵀ = id` to [`ROTATION_TOL`] and `det R > 0`.
    pub fn new(m: Mat3) -> Result<Self> {
        let residual = Self::orthogonality_residual(&m);
        let det = m.det();
        if !(residual < ROTATION_TOL) || !(det > 0.0) {
            return Err(Error::NotRotation { residual, det });
        }
        Ok(Rotation(m))
    }

    /// Rodrigues formula; `axis` need not be normalized.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Self {
        let n = norm(axis);
        if n == 0.0 {
            return Self::identity();
        }
        let [x, y, z] = scale(axis, 1.0 / n);
        let (s, c) = (crate::math::sin(angle), cos(angle));
        let t = 1.0 - c;
        Rotation(Mat3([
            [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
            [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
            [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
        ]))
    }

    /// Rotation of the quaternion `[w, x, y, z]` (normalized here).
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let n = sqrt(q.iter().map(|v| v * v).sum::<f64>());
        if n == 0.0 {
            return Self::identity();
        }
        let [w, x, y, z] = q.map(|v| v / n);
        Rotation(Mat3([
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ]))
    }

    pub fn orthogonality_residual(m: &Mat3) -> f64 {
        (*m * m.transpose() - Mat3::identity()).frobenius_norm()
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn transpose(&self) -> Rotation {
        Rotation(self.0.transpose())
    }
}

impl Mul for Rotation {
    type Output = Rotation;
    fn mul(self, r: Rotation) -> Rotation {
        Rotation(self.0 * r.0)
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors (columns) of a
/// symmetric tensor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSys {
    pub values: Vec3,
    pub vectors: Rotation,
}

impl EigenSys {
    pub fn vector(&self, i: usize) -> Vec3 {
        self.vectors.0.column(i)
    }

    /// `Q·diag(w)·Qᵀ` on this eigenbasis.
    pub fn compose(&self, weights: Vec3) -> SymTensor {
        SymTensor::from_spectrum(weights, &self.vectors.0)
    }

    pub fn reconstruct(&self) -> SymTensor {
        self.compose(self.values)
    }

    /// Counts eigenvalue clusters under the repo-wide gap convention.
    pub fn distinct_groups(&self) -> usize {
        eigen_groups(self.values).len()
    }
}

/// Groups descending eigenvalues whose neighbours differ by less than
/// `EIGEN_GAP_REL·(λmax − λmin + 1)`, scaled by the magnitude of the values.
pub fn eigen_groups(values: Vec3) -> alloc::vec::Vec<core::ops::Range<usize>> {
    let mag = values.iter().fold(0.0f64, |m, v| m.max(abs(*v))).max(1.0);
    let gap = EIGEN_GAP_REL * ((values[0] - values[2]) / mag + 1.0) * mag;
    let mut groups = alloc::vec::Vec::with_capacity(3);
    let mut start = 0;
    for i in 1..3 {
        if values[i - 1] - values[i] > gap {
            groups.push(start..i);
            start = i;
        }
    }
    groups.push(start..3);
    groups
}

/// Real roots, descending, of `x³ − e1·x² + e2·x − e3` assuming all three
/// are real (the characteristic polynomial of a symmetric matrix).
///
/// Inputs slightly outside the real-root region are clamped onto its boundary.
pub fn symmetric_cubic_roots(e1: f64, e2: f64, e3: f64) -> Vec3 {
    let q = e1 / 3.0;
    // Shifted x = t + q: t³ − p·t − r = 0.
    let p = q * q * 3.0 - e2;
    let r = e3 - e2 * q + 2.0 * q * q * q;
    if p <= 0.0 {
        return [q, q, q];
    }
    let m = sqrt(p / 3.0);
    let c = (r / (2.0 * m * m * m)).clamp(-1.0, 1.0);
    let phi = acos(c) / 3.0;
    let t0 = 2.0 * m * cos(phi);
    let t2 = 2.0 * m * cos(phi + FRAC_2PI_3);
    let t1 = -t0 - t2;
    [q + t0, q + t1, q + t2]
}

/// Symmetric eigendecomposition.
///
/// Eigenvalues come from the trigonometric solution of the characteristic
/// cubic. The most isolated eigenvector is a null vector of `A − λ·id`; the
/// remaining plane is diagonalized by a 2×2 rotation, which also covers the
/// repeated-eigenvalue case. Up to four Jacobi sweeps then polish the basis
/// so the reconstruction is accurate to rounding. Diagonal input is returned
/// exactly.
pub fn sym_eigen(a: &SymTensor) -> EigenSys {
    let s = a.max_abs();
    if s == 0.0 || !s.is_finite() {
        return EigenSys {
            values: a.diagonal(),
            vectors: Rotation::identity(),
        };
    }
    if a.xy == 0.0 && a.xz == 0.0 && a.yz == 0.0 {
        return diagonal_eigen(a.diagonal());
    }
    let b = *a * (1.0 / s);
    let values = {
        let c = b.cofactor().trace();
        symmetric_cubic_roots(b.trace(), c, b.det())
    };

    let mut q = initial_basis(&b, values);
    let mut d = SymTensor::from_upper(&(q.transpose() * b.to_mat() * q))
        .to_mat()
        .0;
    jacobi_polish(&mut d, &mut q.0);

    let mut pairs = [(d[0][0], 0usize), (d[1][1], 1), (d[2][2], 2)];
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(core::cmp::Ordering::Equal));
    let mut cols = [
        q.column(pairs[0].1),
        q.column(pairs[1].1),
        q.column(pairs[2].1),
    ];
    if dot(cols[0], cross(cols[1], cols[2])) < 0.0 {
        cols[2] = scale(cols[2], -1.0);
    }
    EigenSys {
        values: [pairs[0].0 * s, pairs[1].0 * s, pairs[2].0 * s],
        vectors: Rotation(Mat3::from_columns(cols)),
    }
}

/// Exact eigensystem of a diagonal tensor: sorted entries on permuted axes.
fn diagonal_eigen(d: Vec3) -> EigenSys {
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
    let e = |i: usize| {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        v
    };
    let mut cols = [e(idx[0]), e(idx[1]), e(idx[2])];
    if dot(cols[0], cross(cols[1], cols[2])) < 0.0 {
        cols[2] = scale(cols[2], -1.0);
    }
    EigenSys {
        values: [d[idx[0]], d[idx[1]], d[idx[2]]],
        vectors: Rotation(Mat3::from_columns(cols)),
    }
}

fn initial_basis(b: &SymTensor, values: Vec3) -> Mat3 {
    let groups = eigen_groups(values);
    if groups.len() == 1 {
        return Mat3::identity();
    }
    let iso = if values[0] - values[1] >= values[1] - values[2] {
        0
    } else {
        2
    };
    let w = match null_vector(&(*b - SymTensor::scaled_identity(values[iso]))) {
        Some(w) => w,
        None => return Mat3::identity(),
    };
    let (u, v) = complete_basis(w);
    // Diagonalize the restriction of b to span{u, v}.
    let bu = b.to_mat().mul_vec(u);
    let bv = b.to_mat().mul_vec(v);
    let (muu, muv, mvv) = (dot(u, bu), dot(u, bv), dot(v, bv));
    let theta = 0.5 * atan2(2.0 * muv, muu - mvv);
    let (sn, cs) = (crate::math::sin(theta), cos(theta));
    let u2 = [
        cs * u[0] + sn * v[0],
        cs * u[1] + sn * v[1],
        cs * u[2] + sn * v[2],
    ];
    let v2 = cross(w, u2);
    Mat3::from_columns([w, u2, v2])
}

/// Unit vector spanning the (numerical) kernel of a rank-2 symmetric matrix.
fn null_vector(m: &SymTensor) -> Option<Vec3> {
    let m = m.to_mat();
    let candidates = [
        cross(m.row(0), m.row(1)),
        cross(m.row(0), m.row(2)),
        cross(m.row(1), m.row(2)),
    ];
    let best = candidates.iter().copied().max_by(|a, b| {
        dot(*a, *a)
            .partial_cmp(&dot(*b, *b))
            .unwrap_or(core::cmp::Ordering::Equal)
    })?;
    let n = norm(best);
    if n > 1e-150 {
        Some(scale(best, 1.0 / n))
    } else {
        None
    }
}

/// Orthonormal `u`, `v` with `(w, u, v)` right-handed, built by Gram-Schmidt
/// on the coordinate axis least aligned with `w`.
fn complete_basis(w: Vec3) -> (Vec3, Vec3) {
    let axis = if abs(w[0]) <= abs(w[1]) && abs(w[0]) <= abs(w[2]) {
        [1.0, 0.0, 0.0]
    } else if abs(w[1]) <= abs(w[2]) {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let p = dot(axis, w);
    let u = [axis[0] - p * w[0], axis[1] - p * w[1], axis[2] - p * w[2]];
    let u = scale(u, 1.0 / norm(u));
    (u, cross(w, u))
}

/// Cyclic Jacobi sweeps on an almost diagonal `d`, accumulating into `q`.
fn jacobi_polish(d: &mut [[f64; 3]; 3], q: &mut [[f64; 3]; 3]) {
    for _sweep in 0..4 {
        let off = d[0][1] * d[0][1] + d[0][2] * d[0][2] + d[1][2] * d[1][2];
        if off == 0.0 {
            break;
        }
        for &(p, r) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = d[p][r];
            if apq == 0.0 {
                continue;
            }
            let tau = (d[r][r] - d[p][p]) / (2.0 * apq);
            let t = (if tau >= 0.0 { 1.0 } else { -1.0 }) / (abs(tau) + sqrt(1.0 + tau * tau));
            let c = 1.0 / sqrt(1.0 + t * t);
            let s = t * c;
            // d ← Jᵀ d J with J the (p, r) rotation.
            for k in 0..3 {
                let (dkp, dkr) = (d[k][p], d[k][r]);
                d[k][p] = c * dkp - s * dkr;
                d[k][r] = s * dkp + c * dkr;
            }
            for k in 0..3 {
                let (dpk, drk) = (d[p][k], d[r][k]);
                d[p][k] = c * dpk - s * drk;
                d[r][k] = s * dpk + c * drk;
            }
            d[p][r] = 0.0;
            d[r][p] = 0.0;
            for row in q.iter_mut() {
                let (qp, qr) = (row[p], row[r]);
                row[p] = c * qp - s * qr;
                row[r] = s * qp + c * qr;
            }
        }
    }
}

/// Spectral primary matrix function `Q·diag(f(λᵢ))·Qᵀ`.
pub fn primary_fn(a: &SymTensor, f: impl Fn(f64) -> f64) -> Result<SymTensor> {
    let eig = sym_eigen(a);
    let mut w = [0.0; 3];
    for (wi, &lam) in w.iter_mut().zip(eig.values.iter()) {
        *wi = f(lam);
        if !wi.is_finite() {
            return Err(Error::Domain { eigenvalue: lam });
        }
    }
    Ok(eig.compose(w))
}

/// Principal logarithm of a symmetric positive definite tensor.
pub fn log_spd(a: &SymTensor) -> Result<SymTensor> {
    primary_fn(a, |x| if x > 0.0 { ln(x) } else { f64::NAN })
}

/// Principal square root of a symmetric positive semidefinite tensor.
pub fn sqrt_spd(a: &SymTensor) -> Result<SymTensor> {
    primary_fn(a, |x| if x >= 0.0 { sqrt(x) } else { f64::NAN })
}

pub fn exp_sym(a: &SymTensor) -> SymTensor {
    let eig = sym_eigen(a);
    eig.compose(eig.values.map(exp))
}

/// Left polar decomposition `F = V·R`.
///
/// `V = sqrt(F·Fᵀ)` is computed spectrally and `R = V⁻¹·F` on the same
/// eigenbasis.
pub fn polar_left(f: &Mat3) -> Result<(SymTensor, Rotation)> {
    let det = f.det();
    if !f.is_finite() || !(det > 0.0) || det < SINGULAR_DET {
        return Err(Error::SingularInput { det });
    }
    let eig = sym_eigen(&f.mul_transpose_self());
    if !(eig.values[2] > 0.0) {
        return Err(Error::SingularInput { det });
    }
    let s = eig.values.map(sqrt);
    let v = eig.compose(s);
    let v_inv = eig.compose(s.map(|x| 1.0 / x));
    let r = Rotation::new(v_inv.to_mat() * *f)?;
    Ok((v, r))
}

/// `d − (tr d / 3)·id`.
pub fn deviator(d: &SymTensor) -> SymTensor {
    d.deviator()
}
