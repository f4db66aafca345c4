//! Hamiltonian-independent stabilizability criteria.
//!
//! A Gaussian state with covariance `V` is stabilizable under a linear
//! Lindblad dissipator only if
//!
//! ```text
//! T_n = 2 Tr[(Im C^dag C) J Vt^n] + Tr[(Re C^dag C) J Vt^{n-1}] = 0,
//! Vt = J V,   n = 1..2N.
//! ```
//!
//! `T_1` vanishes identically for symmetric `V`. For a single damped mode
//! the only remaining condition is `T_2 = -(gamma/2) Omega` with the
//! closed form [`omega_single_mode`]; for two locally damped modes it is
//! `T_2 = -1/2 [gamma_1 Omega_1 + gamma_2 Omega_2 - 4 (gamma_1+gamma_2)
//! det V12]` (see [`two_mode_condition`]). The `n = 3, 4` two-mode
//! conditions have no printed closed form and are evaluated generically.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dissipation::{re_im_cc, DissipationSpec};
use crate::error::{Error, Result};
use crate::symplectic::{CovarianceMatrix, SymplecticForm, TAU_NUM};
use crate::Mat;

/// Tolerance on the normalized criteria values.
pub const EPSILON_CRIT: f64 = 1e-9;

/// Outcome of the criteria evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriteriaVerdict {
    Pass,
    /// Smallest `n` (1-based) whose normalized value exceeds the tolerance.
    Fail { first_failing: usize },
}

impl CriteriaVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, CriteriaVerdict::Pass)
    }
}

/// Values and verdict of the `2N` trace criteria.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaReport {
    /// Raw `T_n`, `n = 1..2N` (index 0 holds `T_1`).
    pub values: Vec<f64>,
    /// `T_n` divided by `|Im|_max |V|_max^n + |Re|_max |V|_max^{n-1} + eps`,
    /// removing the dependence on units and state magnitude.
    pub normalized: Vec<f64>,
    pub verdict: CriteriaVerdict,
    /// Tolerance applied to the normalized values.
    pub tolerance: f64,
}

fn trace_product(a: &Mat, b: &Mat) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += a[(i, j)] * b[(j, i)];
        }
    }
    sum
}

/// Evaluates `T_n` for `n = 1..2N`.
///
/// The Hamiltonian never enters: the commutator part of the moment
/// derivative is traceless, so the criteria depend on the dissipator and
/// the state alone.
pub fn criteria(v: &CovarianceMatrix, spec: &DissipationSpec) -> Result<CriteriaReport> {
    if spec.modes() != v.modes() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            actual: spec.dim(),
        });
    }
    let form = SymplecticForm::new(v.modes());
    let j = form.matrix();
    let (re, im) = re_im_cc(spec);
    let im_j = &im * j;
    let re_j = &re * j;
    let vt = j * v.matrix();

    let v_scale = v.max_abs();
    let im_scale = im.amax();
    let re_scale = re.amax();

    let count = v.dim();
    let mut values = Vec::with_capacity(count);
    let mut normalized = Vec::with_capacity(count);
    let mut previous = Mat::identity(count, count);
    let mut verdict = CriteriaVerdict::Pass;
    for n in 1..=count {
        let current = &previous * &vt;
        let t_n = 2.0 * trace_product(&im_j, &current) + trace_product(&re_j, &previous);
        let scale = im_scale * v_scale.powi(n as i32)
            + re_scale * v_scale.powi(n as i32 - 1)
            + f64::MIN_POSITIVE;
        values.push(t_n);
        normalized.push(t_n / scale);
        if verdict.is_pass() && (t_n / scale).abs() > EPSILON_CRIT {
            verdict = CriteriaVerdict::Fail { first_failing: n };
        }
        previous = current;
    }

    Ok(CriteriaReport {
        values,
        normalized,
        verdict,
        tolerance: EPSILON_CRIT,
    })
}

/// Closed-form single-damped-mode condition
/// `Omega = V_xx / x0^2 + x0^2 V_pp - 4 V_xx V_pp + 4 V_xp^2`.
///
/// Its zero set is the stabilizable surface; `T_2 = -(gamma/2) Omega`.
pub fn omega_single_mode(vxx: f64, vpp: f64, vxp: f64, x0: f64) -> f64 {
    vxx / (x0 * x0) + x0 * x0 * vpp - 4.0 * vxx * vpp + 4.0 * vxp * vxp
}

/// Determinant of the cross-mode block
/// `V12 = [[V_{x1 x2}, V_{x1 p2}], [V_{p1 x2}, V_{p1 p2}]]` of a two-mode
/// covariance.
pub fn det_v12(v: &CovarianceMatrix) -> Result<f64> {
    if v.modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: v.dim(),
        });
    }
    let m = v.matrix();
    Ok(m[(0, 1)] * m[(2, 3)] - m[(0, 3)] * m[(2, 1)])
}

/// Closed-form `n = 2` condition for two locally damped modes:
/// `gamma1 Omega(x1,p1) + gamma2 Omega(x2,p2) - 4 (gamma1+gamma2) det V12`.
pub fn two_mode_condition(
    v: &CovarianceMatrix,
    gamma1: f64,
    gamma2: f64,
    x0: f64,
) -> Result<f64> {
    if !(gamma1 >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma1",
            value: gamma1,
        });
    }
    if !(gamma2 >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma2",
            value: gamma2,
        });
    }
    if gamma1 + gamma2 == 0.0 {
        return Err(Error::InvalidParameter {
            name: "gamma1 + gamma2",
            value: 0.0,
        });
    }
    let omega1 = omega_single_mode(v.xx(0), v.pp(0), v.xp(0), x0);
    let omega2 = omega_single_mode(v.xx(1), v.pp(1), v.xp(1), x0);
    Ok(gamma1 * omega1 + gamma2 * omega2 - 4.0 * (gamma1 + gamma2) * det_v12(v)?)
}

/// Necessary condition for two-mode Gaussian entanglement:
/// `det V12 < 0`. A `false` result does not certify separability.
pub fn entanglement_necessary(v: &CovarianceMatrix) -> Result<bool> {
    Ok(det_v12(v)? < -TAU_NUM)
}

/// The value `det V12` must take for a stabilizable two-mode state with
/// the given local condition values, weighted by the damping strengths:
/// `det V12 = (gamma1 Omega1 + gamma2 Omega2) / (4 (gamma1 + gamma2))`.
pub fn detv12_from_local(omega1: f64, omega2: f64, gamma1: f64, gamma2: f64) -> f64 {
    (gamma1 * omega1 + gamma2 * omega2) / (4.0 * (gamma1 + gamma2))
}
