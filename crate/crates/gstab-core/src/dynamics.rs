//! Time-domain side of stabilizability: fixed-step integration of the
//! first- and second-moment equations and the algebraic steady state of
//! the covariance flow. Serves as the oracle for the spectral
//! construction: a synthesized Hamiltonian must hold the covariance
//! fixed under `dV/dt = A V + V A^T + D`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::dissipation::{
    diffusion_matrix, drift_matrix, re_im_cc, DissipationSpec, GaussianState,
    QuadraticHamiltonian,
};
use crate::error::{Error, Result};
use crate::symplectic::{physicality_check, CovarianceMatrix, TAU_NUM};
use crate::synthesis::verify_stationarity;
use crate::{Mat, Vec2N};

/// Hurwitz margin: every drift eigenvalue must satisfy `Re < -TAU_HUR`
/// for a unique stable steady state.
pub const TAU_HUR: f64 = 1e-10;
/// Stability guard for the fixed-step integrator: `dt * |A| <= 0.1`.
pub const STABILITY_LIMIT: f64 = 0.1;
/// Upper bound on the number of stored trajectory samples.
pub const MAX_STORED_SAMPLES: usize = 10_000;
/// Relative tolerance classifying a trajectory as stationary.
pub const STATIONARITY_TOLERANCE: f64 = 1e-8;

/// Sampled trajectory of the moment equations.
#[derive(Debug, Clone)]
pub struct EvolutionResult {
    /// Sample times, strictly increasing; the final time is always stored.
    pub times: Vec<f64>,
    pub means: Vec<Vec2N>,
    pub covs: Vec<CovarianceMatrix>,
    /// `|A V_f + V_f A^T + D|_max` at the final time.
    pub final_residual: f64,
}

/// Classification of a state under a given Hamiltonian and dissipator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilizabilityClass {
    /// Mean and covariance both stationary.
    Strict,
    /// Covariance stationary, mean free to evolve.
    Relaxed,
    /// Covariance not stationary.
    None,
}

fn infinity_norm(m: &Mat) -> f64 {
    (0..m.nrows()).fold(0.0f64, |acc, i| {
        acc.max((0..m.ncols()).map(|j| m[(i, j)].abs()).sum())
    })
}

/// Integrates `d xi/dt = A xi` and `dV/dt = A V + V A^T + D` with the
/// classical fourth-order Runge-Kutta scheme at fixed step `dt`.
///
/// Both equations are linear, so a fixed step with the `dt * |A| <= 0.1`
/// guard is unconditionally adequate and keeps trajectories deterministic
/// for golden tests. The covariance is re-symmetrized every step. At most
/// [`MAX_STORED_SAMPLES`] intermediate samples are kept (every k-th step);
/// the final step is always stored.
pub fn evolve(
    state0: &GaussianState,
    spec: &DissipationSpec,
    hamiltonian: &QuadraticHamiltonian,
    t_final: f64,
    dt: f64,
) -> Result<EvolutionResult> {
    if !(t_final > 0.0) {
        return Err(Error::InvalidParameter {
            name: "t_final",
            value: t_final,
        });
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
        });
    }
    if state0.modes() != spec.modes() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            actual: 2 * state0.modes(),
        });
    }
    let report = physicality_check(&state0.cov);
    if !report.physical {
        return Err(Error::UnphysicalState {
            margin: report.margin,
        });
    }

    let a = drift_matrix(spec, hamiltonian)?;
    let d = diffusion_matrix(spec);
    let stability = dt * infinity_norm(&a);
    if stability > STABILITY_LIMIT {
        return Err(Error::StepTooLarge { stability });
    }

    let ratio = t_final / dt;
    let n_steps = if (ratio - ratio.round()).abs() < 1e-9 {
        ratio.round() as usize
    } else {
        ratio.ceil() as usize
    }
    .max(1);
    let stride = n_steps / MAX_STORED_SAMPLES + 1;

    let mean_rhs = |xi: &Vec2N| &a * xi;
    let cov_rhs = |v: &Mat| &a * v + v * a.transpose() + &d;

    let mut xi = state0.mean.clone();
    let mut v = state0.cov.matrix().clone();
    let mut times = Vec::new();
    let mut means = Vec::new();
    let mut covs = Vec::new();

    let mut store = |t: f64, xi: &Vec2N, v: &Mat| {
        times.push(t);
        means.push(xi.clone());
        covs.push(CovarianceMatrix::new(v.clone()).expect("symmetrized covariance"));
    };
    store(0.0, &xi, &v);

    for step in 0..n_steps {
        let h = if step + 1 == n_steps {
            t_final - (n_steps - 1) as f64 * dt
        } else {
            dt
        };

        let k1m = mean_rhs(&xi);
        let k1v = cov_rhs(&v);
        let k2m = mean_rhs(&(&xi + &k1m * (h / 2.0)));
        let k2v = cov_rhs(&(&v + &k1v * (h / 2.0)));
        let k3m = mean_rhs(&(&xi + &k2m * (h / 2.0)));
        let k3v = cov_rhs(&(&v + &k2v * (h / 2.0)));
        let k4m = mean_rhs(&(&xi + &k3m * h));
        let k4v = cov_rhs(&(&v + &k3v * h));

        xi += (k1m + k2m * 2.0 + k3m * 2.0 + k4m) * (h / 6.0);
        v += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
        v = (&v + v.transpose()) * 0.5;

        let t = if step + 1 == n_steps {
            t_final
        } else {
            (step + 1) as f64 * dt
        };
        if (step + 1) % stride == 0 || step + 1 == n_steps {
            store(t, &xi, &v);
        }
    }

    let final_residual = (&a * &v + &v * a.transpose() + &d).amax();
    Ok(EvolutionResult {
        times,
        means,
        covs,
        final_residual,
    })
}

/// Reference step size `0.01 / max(spectral radius of A, rate scale)`,
/// capped at `t_final / 10`.
pub fn default_step(
    spec: &DissipationSpec,
    hamiltonian: &QuadraticHamiltonian,
    t_final: f64,
) -> Result<f64> {
    let a = drift_matrix(spec, hamiltonian)?;
    let radius = a
        .complex_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm()));
    let (re, im) = re_im_cc(spec);
    let rate = re.amax().max(im.amax());
    let denom = radius.max(rate).max(1e-9);
    Ok((0.01 / denom).min(t_final / 10.0))
}

fn vectorize(m: &Mat) -> Vec2N {
    Vec2N::from_column_slice(m.as_slice())
}

/// Unique steady covariance of `dV/dt = A V + V A^T + D = 0`, solved by
/// vectorization: `(I kron A + A kron I) vec(V) = -vec(D)`.
///
/// Requires the drift to be Hurwitz; the offending eigenvalue is reported
/// otherwise. The dense `(2N)^2` linear solve is exact at these sizes.
pub fn steady_state(
    spec: &DissipationSpec,
    hamiltonian: &QuadraticHamiltonian,
) -> Result<CovarianceMatrix> {
    let a = drift_matrix(spec, hamiltonian)?;
    let worst = a
        .complex_eigenvalues()
        .iter()
        .copied()
        .max_by(|p, q| p.re.partial_cmp(&q.re).unwrap())
        .expect("drift matrix has at least one eigenvalue");
    if worst.re >= -TAU_HUR {
        return Err(Error::NotHurwitz {
            re: worst.re,
            im: worst.im,
        });
    }

    let dim = a.nrows();
    let d = diffusion_matrix(spec);
    let identity = Mat::identity(dim, dim);
    let system = identity.kronecker(&a) + a.kronecker(&identity);
    let rhs = -vectorize(&d);
    let solution = system
        .lu()
        .solve(&rhs)
        .ok_or(Error::SolverFailure("Lyapunov system solve"))?;
    let v = Mat::from_column_slice(dim, dim, solution.as_slice());
    CovarianceMatrix::new((&v + v.transpose()) * 0.5)
}

/// Classifies a state as strictly stabilized (mean and covariance
/// stationary), relaxed (stationary covariance only, the mean keeps
/// evolving), or not stationary at all, under the supplied Hamiltonian.
pub fn strict_stabilizability_check(
    state: &GaussianState,
    spec: &DissipationSpec,
    hamiltonian: &QuadraticHamiltonian,
) -> Result<StabilizabilityClass> {
    let residual = verify_stationarity(&state.cov, hamiltonian, spec)?;
    let a = drift_matrix(spec, hamiltonian)?;
    let d = diffusion_matrix(spec);
    let scale = d.amax() + a.amax() * state.cov.max_abs() + f64::MIN_POSITIVE;
    if residual > STATIONARITY_TOLERANCE * scale {
        return Ok(StabilizabilityClass::None);
    }
    if state.mean.norm() <= TAU_NUM {
        Ok(StabilizabilityClass::Strict)
    } else {
        Ok(StabilizabilityClass::Relaxed)
    }
}
