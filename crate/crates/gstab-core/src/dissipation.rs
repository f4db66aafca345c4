//! Linear Lindblad dissipators at the covariance level: the complex
//! dissipation matrix `C` holding the coefficient vectors of the Lindblad
//! operators `L_k = c_k^T xi`, the derived `Re C^dag C` / `Im C^dag C`
//! split, and the drift and diffusion matrices of the moment equations
//!
//! ```text
//! d xi/dt = A xi,        dV/dt = A V + V A^T + J (Re C^dag C) J^T,
//! A = J (G + Im C^dag C).
//! ```

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::symplectic::{CovarianceMatrix, SymplecticForm, TAU_SYM_REL};
use crate::{CMat, CVec, Mat, Vec2N};

/// Dissipator defined by `M` complex `2N`-vectors `c_k`, one per Lindblad
/// operator `L_k = c_k^T xi`. Row `k` of `matrix` is `c_k^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct DissipationSpec {
    modes: usize,
    matrix: CMat,
}

/// Coefficient vector of the damping operator `sqrt(gamma) a_i`, with
/// `a_i = (x_i / x0 + i p_i x0) / sqrt(2)`.
pub fn damped_mode_vector(modes: usize, mode: usize, gamma: f64, x0: f64) -> Result<CVec> {
    if mode >= modes {
        return Err(Error::DimensionMismatch {
            expected: modes,
            actual: mode,
        });
    }
    if !(gamma >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
        });
    }
    if !(x0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "x0",
            value: x0,
        });
    }
    let amp = (gamma / 2.0).sqrt();
    let mut c = CVec::zeros(2 * modes);
    c[mode] = Complex64::new(amp / x0, 0.0);
    c[modes + mode] = Complex64::new(0.0, amp * x0);
    Ok(c)
}

impl DissipationSpec {
    pub fn new(modes: usize, vectors: Vec<CVec>) -> Result<Self> {
        assert!(modes >= 1, "mode count must be positive");
        let dim = 2 * modes;
        for c in &vectors {
            if c.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: c.len(),
                });
            }
        }
        let mut matrix = CMat::zeros(vectors.len(), dim);
        for (k, c) in vectors.iter().enumerate() {
            matrix.row_mut(k).copy_from(&c.transpose());
        }
        Ok(Self { modes, matrix })
    }

    /// No dissipation (`M = 0`).
    pub fn empty(modes: usize) -> Self {
        assert!(modes >= 1, "mode count must be positive");
        Self {
            modes,
            matrix: CMat::zeros(0, 2 * modes),
        }
    }

    /// Single damped mode `L = sqrt(gamma) a_i` in an `N`-mode system.
    pub fn damped_mode(modes: usize, mode: usize, gamma: f64, x0: f64) -> Result<Self> {
        Self::new(modes, alloc::vec![damped_mode_vector(modes, mode, gamma, x0)?])
    }

    /// One damping operator per mode, all sharing the length scale `x0`.
    pub fn locally_damped(gammas: &[f64], x0: f64) -> Result<Self> {
        let modes = gammas.len();
        let vectors = gammas
            .iter()
            .enumerate()
            .map(|(i, &g)| damped_mode_vector(modes, i, g, x0))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modes, vectors)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    /// Number of Lindblad operators `M`.
    pub fn operator_count(&self) -> usize {
        self.matrix.nrows()
    }

    /// The `M x 2N` complex dissipation matrix.
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }
}

/// Quadratic Hamiltonian `H = 1/2 (xi - xi0)^T G (xi - xi0)` with real
/// symmetric `G`; the displacement `xi0` defaults to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    matrix: Mat,
    displacement: Option<Vec2N>,
}

impl QuadraticHamiltonian {
    pub fn new(matrix: Mat) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: rows.max(2),
                actual: cols,
            });
        }
        let tolerance = TAU_SYM_REL * matrix.amax();
        let asymmetry = (&matrix - matrix.transpose()).amax();
        if asymmetry > tolerance {
            return Err(Error::NonSymmetric {
                asymmetry,
                tolerance,
            });
        }
        let symmetrized = (&matrix + matrix.transpose()) * 0.5;
        Ok(Self {
            matrix: symmetrized,
            displacement: None,
        })
    }

    /// The zero Hamiltonian (free dissipative decay).
    pub fn zero(modes: usize) -> Self {
        Self {
            matrix: Mat::zeros(2 * modes, 2 * modes),
            displacement: None,
        }
    }

    pub fn with_displacement(mut self, xi0: Vec2N) -> Result<Self> {
        if xi0.len() != self.matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                actual: xi0.len(),
            });
        }
        self.displacement = Some(xi0);
        Ok(self)
    }

    pub fn modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn displacement(&self) -> Option<&Vec2N> {
        self.displacement.as_ref()
    }
}

/// Gaussian state: mean quadrature vector and covariance matrix.
///
/// Physicality of the covariance is *not* required here; routines that
/// need it (time evolution, purity) check explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    pub mean: Vec2N,
    pub cov: CovarianceMatrix,
}

impl GaussianState {
    pub fn new(mean: Vec2N, cov: CovarianceMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                actual: mean.len(),
            });
        }
        Ok(Self { mean, cov })
    }

    /// State with zero mean.
    pub fn centered(cov: CovarianceMatrix) -> Self {
        Self {
            mean: Vec2N::zeros(cov.dim()),
            cov,
        }
    }

    pub fn modes(&self) -> usize {
        self.cov.modes()
    }
}

/// `(Re C^dag C, Im C^dag C)`, explicitly (anti)symmetrized.
///
/// The real part is a Gram-type matrix and therefore positive
/// semidefinite; the imaginary part is antisymmetric.
pub fn re_im_cc(spec: &DissipationSpec) -> (Mat, Mat) {
    let cdc = spec.matrix().adjoint() * spec.matrix();
    let re = cdc.map(|c| c.re);
    let im = cdc.map(|c| c.im);
    ((&re + re.transpose()) * 0.5, (&im - im.transpose()) * 0.5)
}

/// Drift matrix `A = J (G + Im C^dag C)` of the moment equations.
pub fn drift_matrix(spec: &DissipationSpec, hamiltonian: &QuadraticHamiltonian) -> Result<Mat> {
    if hamiltonian.modes() != spec.modes() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            actual: 2 * hamiltonian.modes(),
        });
    }
    let (_, im) = re_im_cc(spec);
    let form = SymplecticForm::new(spec.modes());
    Ok(form.matrix() * (hamiltonian.matrix() + im))
}

/// Diffusion matrix `D = J (Re C^dag C) J^T`; symmetric positive
/// semidefinite.
pub fn diffusion_matrix(spec: &DissipationSpec) -> Mat {
    let (re, _) = re_im_cc(spec);
    let form = SymplecticForm::new(spec.modes());
    let d = form.matrix() * re * form.matrix().transpose();
    (&d + d.transpose()) * 0.5
}
