// Float functions for no_std builds.
pub(crate) use libm::{
    acos, atan2, cbrt, cos, exp, expm1, fabs as abs, log as ln, log1p, sin, sqrt,
};

pub(crate) const FRAC_2PI_3: f64 = 2.0 * core::f64::consts::PI / 3.0;
