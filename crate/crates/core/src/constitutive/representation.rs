use crate::tensor3::{self, dot, eigen_groups, SymTensor, Vec3, ABS_FLOOR};
use crate::{Error, Result};

/// Relative commutator bound for treating two tensors as coaxial.
pub const COAXIAL_TOL: f64 = 1e-8;

/// Coefficients `(f₁, f₂, f₃)` with `σ = f₁·id + f₂·B + f₃·B²` for a stress
/// `σ` coaxial with the symmetric basis tensor `B` (usually `L` or `V`).
///
/// The principal values of `σ` on the eigenbasis of `B` are interpolated by a
/// polynomial in the eigenvalues of `B`. When eigenvalues of `B` coincide the
/// lowest-order representation is returned: `f₃ = 0` for two distinct
/// eigenvalues, `f₂ = f₃ = 0` for one.
pub fn representation_solve(sigma: &SymTensor, basis: &SymTensor) -> Result<Vec3> {
    let scale = sigma.frobenius_norm() * basis.frobenius_norm();
    let comm = sigma.commutator_norm(basis);
    if comm > COAXIAL_TOL * scale + ABS_FLOOR {
        return Err(Error::NotCoaxial {
            relative: comm / scale.max(ABS_FLOOR),
        });
    }

    let eig = tensor3::sym_eigen(basis);
    let b = eig.values;
    let s_mat = sigma.to_mat();
    let s: Vec3 = core::array::from_fn(|i| {
        let q = eig.vector(i);
        dot(q, s_mat.mul_vec(q))
    });

    let groups = eigen_groups(b);
    let mean = |r: &core::ops::Range<usize>, v: &Vec3| -> f64 {
        v[r.clone()].iter().sum::<f64>() / r.len() as f64
    };
    Ok(match groups.len() {
        1 => [(s[0] + s[1] + s[2]) / 3.0, 0.0, 0.0],
        2 => {
            let (b0, s0) = (mean(&groups[0], &b), mean(&groups[0], &s));
            let (b1, s1) = (mean(&groups[1], &b), mean(&groups[1], &s));
            let f2 = (s1 - s0) / (b1 - b0);
            [s0 - f2 * b0, f2, 0.0]
        }
        _ => {
            // Newton divided differences on (b0, b1, b2).
            let c1 = (s[1] - s[0]) / (b[1] - b[0]);
            let c2 = ((s[2] - s[1]) / (b[2] - b[1]) - c1) / (b[2] - b[0]);
            [
                s[0] - c1 * b[0] + c2 * b[0] * b[1],
                c1 - c2 * (b[0] + b[1]),
                c2,
            ]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor3::Rotation;

    fn assemble(f: Vec3, b: &SymTensor) -> SymTensor {
        SymTensor::scaled_identity(f[0]) + *b * f[1] + b.square() * f[2]
    }

    #[test]
    fn spherical_stress_any_basis() {
        let l = SymTensor::new(0.3, -0.1, 0.2, 0.05, 0.0, 0.1);
        let f = representation_solve(&SymTensor::scaled_identity(5.0), &l).unwrap();
        assert!((f[0] - 5.0).abs() < 1e-13);
        assert!(f[1].abs() < 1e-12 && f[2].abs() < 1e-12);
    }

    #[test]
    fn known_coefficients_round_trip() {
        let q = Rotation::from_axis_angle([1.0, 0.4, -0.3], 0.9);
        let l = SymTensor::diag([0.5, -0.2, 0.1]).rotate(q.matrix());
        let want = [2.0, -1.0, 0.5];
        let f = representation_solve(&assemble(want, &l), &l).unwrap();
        for (a, b) in f.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{f:?}");
        }
    }

    #[test]
    fn degenerate_bases_reduce_order() {
        let l = SymTensor::scaled_identity(0.4);
        assert_eq!(
            representation_solve(&SymTensor::scaled_identity(2.5), &l).unwrap(),
            [2.5, 0.0, 0.0]
        );

        let l = SymTensor::diag([0.3, 0.3, -0.6]);
        let sigma = assemble([1.0, 2.0, 0.0], &l);
        let f = representation_solve(&sigma, &l).unwrap();
        assert_eq!(f[2], 0.0);
        assert!((assemble(f, &l) - sigma).max_abs() < 1e-15);
    }

    #[test]
    fn non_coaxial_is_rejected() {
        let l = SymTensor::diag([0.3, 0.1, -0.2]);
        let sigma = SymTensor::new(1.0, 1.0, 1.0, 0.5, 0.0, 0.0);
        assert!(matches!(
            representation_solve(&sigma, &l),
            Err(Error::NotCoaxial { .. })
        ));
    }
}
