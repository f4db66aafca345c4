//! Closed-form families of states for the two benchmark dissipators.
//!
//! For one damped mode, the stabilizable covariances form the positive
//! sheet of a two-sheeted hyperboloid: in the variables
//! `x = V_xx/x0^2 + x0^2 V_pp - 1/2`, `y = V_xx/x0^2 - x0^2 V_pp`,
//! `z = 2 V_xp` the condition `Omega = 0` reads `x^2 - y^2 - z^2 = 1/4`.
//! For two locally damped modes, the pure EPR ansatz (independent
//! center-of-mass momentum and relative position Gaussians) probes how
//! much entanglement survives the `n = 2` condition.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::symplectic::CovarianceMatrix;
use crate::Mat;

/// A point of the single-mode stabilizable surface, in both covariance
/// and hyperboloid coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperboloidPoint {
    pub vxx: f64,
    pub vpp: f64,
    pub vxp: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HyperboloidPoint {
    pub fn covariance(&self) -> CovarianceMatrix {
        CovarianceMatrix::new(Mat::from_row_slice(
            2,
            2,
            &[self.vxx, self.vxp, self.vxp, self.vpp],
        ))
        .expect("surface covariance is symmetric")
    }
}

/// The unique stabilizable covariance with hyperboloid coordinates
/// `(y, z)`, on the physical sheet `x = +sqrt(1/4 + y^2 + z^2)`.
///
/// Every `(y, z)` is admissible; the sheet choice makes `V_xx, V_pp > 0`.
/// The `(y, z)` chart covers the whole surface, unlike the
/// `(V_pp, V_xp)` chart whose denominator vanishes at the excluded point
/// of [`min_vxx_at`].
pub fn hyperboloid_sample(y: f64, z: f64, x0: f64) -> HyperboloidPoint {
    assert!(x0 > 0.0, "length scale must be positive");
    let x = (0.25 + y * y + z * z).sqrt();
    let scaled_xx = 0.5 * (x + 0.5 + y);
    let scaled_pp = 0.5 * (x + 0.5 - y);
    HyperboloidPoint {
        vxx: x0 * x0 * scaled_xx,
        vpp: scaled_pp / (x0 * x0),
        vxp: z / 2.0,
        x,
        y,
        z,
    }
}

fn min_variance(other: f64, cross: f64, scale_sq: f64) -> Result<f64> {
    let branch_point = 0.25 / scale_sq;
    let denominator = 4.0 * other - 1.0 / scale_sq;
    if denominator <= 0.0 {
        return Err(Error::ExcludedPoint {
            variance: other,
            branch_point,
        });
    }
    Ok((scale_sq * other + 4.0 * cross * cross) / denominator)
}

/// Position variance on the stabilizable surface for given `V_pp`,
/// `V_xp`: `V_xx = (x0^2 V_pp + 4 V_xp^2) / (4 V_pp - x0^{-2})`.
///
/// Defined on the branch `V_pp > x0^{-2}/4`. Monotone decreasing in
/// `V_pp` at `V_xp = 0`, with infimum `x0^2/4` as `V_pp -> infinity`:
/// stabilizable squeezing is finite, and the squeezed limit is reached
/// only at vanishing purity.
pub fn min_vxx_at(vpp: f64, vxp: f64, x0: f64) -> Result<f64> {
    min_variance(vpp, vxp, x0 * x0)
}

/// Momentum-axis counterpart of [`min_vxx_at`]: the surface is invariant
/// under swapping the quadratures together with `x0 -> 1/x0`, so
/// `V_pp = (x0^{-2} V_xx + 4 V_xp^2) / (4 V_xx - x0^2)` on the branch
/// `V_xx > x0^2/4`.
pub fn min_vpp_at(vxx: f64, vxp: f64, x0: f64) -> Result<f64> {
    min_variance(vxx, vxp, 1.0 / (x0 * x0))
}

/// Pure two-mode EPR ansatz: independent Gaussians in the center-of-mass
/// momentum `p_cm = p_1 + p_2` (width `sigma_p_cm`) and the relative
/// position `x_rel = x_1 - x_2` (width `sigma_x_rel`).
///
/// The conjugate pairs are `x_cm = (x_1 + x_2)/2` and
/// `p_rel = (p_1 - p_2)/2`; purity fixes their variances through
/// `Var(x_cm) Var(p_cm) = Var(x_rel) Var(p_rel) = 1/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprAnsatz {
    pub sigma_p_cm: f64,
    pub sigma_x_rel: f64,
    pub x0: f64,
}

impl EprAnsatz {
    pub fn new(sigma_p_cm: f64, sigma_x_rel: f64, x0: f64) -> Result<Self> {
        for (name, value) in [
            ("sigma_p_cm", sigma_p_cm),
            ("sigma_x_rel", sigma_x_rel),
            ("x0", x0),
        ] {
            if !(value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(Self {
            sigma_p_cm,
            sigma_x_rel,
            x0,
        })
    }
}

/// The 4x4 covariance of the EPR ansatz (pure for every width choice).
///
/// With `s = sigma_p_cm^2` and `r = sigma_x_rel^2` the cross-mode block
/// is `V12 = diag(1/(4s) - r/4, s/4 - 1/(4r))`, so `det V12 <= 0` with
/// equality exactly on the separable curve `s r = 1`.
pub fn epr_covariance(ansatz: &EprAnsatz) -> CovarianceMatrix {
    let s = ansatz.sigma_p_cm * ansatz.sigma_p_cm;
    let r = ansatz.sigma_x_rel * ansatz.sigma_x_rel;
    let var_x_cm = 0.25 / s;
    let var_x_rel_quarter = r / 4.0;
    let var_p_cm_quarter = s / 4.0;
    let var_p_rel = 0.25 / r;

    let xx_diag = var_x_cm + var_x_rel_quarter;
    let xx_cross = var_x_cm - var_x_rel_quarter;
    let pp_diag = var_p_cm_quarter + var_p_rel;
    let pp_cross = var_p_cm_quarter - var_p_rel;

    let mut m = Mat::zeros(4, 4);
    m[(0, 0)] = xx_diag;
    m[(1, 1)] = xx_diag;
    m[(0, 1)] = xx_cross;
    m[(1, 0)] = xx_cross;
    m[(2, 2)] = pp_diag;
    m[(3, 3)] = pp_diag;
    m[(2, 3)] = pp_cross;
    m[(3, 2)] = pp_cross;
    CovarianceMatrix::new(m).expect("EPR covariance is symmetric")
}

/// Left-hand side of the EPR stabilizability condition for equal damping
/// rates:
///
/// ```text
/// 1/2 x0^-2 sigma_p_cm^-2 + 1/2 x0^-2 sigma_x_rel^2
///   + 1/2 x0^2 sigma_p_cm^2 + 1/2 x0^2 sigma_x_rel^-2
/// ```
///
/// By AM-GM each conjugate pair of terms contributes at least 1, so the
/// value is `>= 2` with equality only at `sigma_p_cm = 1/x0`,
/// `sigma_x_rel = x0` — where the state is the (separable) two-mode
/// vacuum.
pub fn epr_condition_lhs(ansatz: &EprAnsatz) -> f64 {
    let s = ansatz.sigma_p_cm * ansatz.sigma_p_cm;
    let r = ansatz.sigma_x_rel * ansatz.sigma_x_rel;
    let x0sq = ansatz.x0 * ansatz.x0;
    0.5 / (x0sq * s) + 0.5 * r / x0sq + 0.5 * x0sq * s + 0.5 * x0sq / r
}
