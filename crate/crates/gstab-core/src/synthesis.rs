//! Construction of the stabilizing quadratic Hamiltonian.
//!
//! In the eigenbasis of `scriptV = V^{1/2} J V^{1/2}` the stationarity
//! equation decouples into one scalar equation per eigenvector pair,
//!
//! ```text
//! (z_l - z_l') <zt_l'| G |zt_l> + D_{l'l} = 0,
//! D_{l'l} = <zt_l'| (z_l + z_l') Im C^dag C + Re C^dag C |zt_l>,
//! |zt_l>  = J^T V^{-1/2} |z_l>.
//! ```
//!
//! Off-diagonal equations are solved by
//! `G = J^T V^{1/2} (sum_{l' != l} D_{l'l} / (z_l' - z_l) |z_l'><z_l|) V^{1/2} J`;
//! the diagonal entries `D_{ll}` carry no `G` and must vanish on their
//! own, which a Vandermonde argument reduces to the trace criteria
//! `T_n = sum_l z_l^n D_{ll} = 0`. A non-degenerate spectrum is required
//! throughout since the construction divides by eigenvalue gaps.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::criteria::{criteria, CriteriaVerdict};
use crate::dissipation::{diffusion_matrix, drift_matrix, re_im_cc, DissipationSpec, QuadraticHamiltonian};
use crate::error::{Error, Result};
use crate::symplectic::{
    symmetric_sqrt, symplectic_spectrum, CovarianceMatrix, MatrixSqrt, SymplecticForm,
    SymplecticSpectrum, DELTA_DEG_REL,
};
use crate::{CMat, Mat};

/// Tolerance on the diagonal dissipator elements `|D_ll|`, scaled by
/// `|Re C^dag C|_max`.
pub const EPSILON_DIAG: f64 = 1e-8;
/// Tolerance on the discarded imaginary part of the synthesized `G`,
/// scaled the same way. Two matrix square roots and an eigendecomposition
/// each lose a few digits.
pub const EPSILON_IMAG: f64 = 1e-8;

/// Output of [`synthesize`].
#[derive(Debug, Clone)]
pub struct SynthesisResult {
    /// The particular stabilizing Hamiltonian from the spectral
    /// construction (stabilizers are not unique).
    pub hamiltonian: QuadraticHamiltonian,
    /// Dissipator elements `D_{l'l}`; row `l'`, column `l`.
    pub dissipator_matrix: CMat,
    /// `max_l |D_ll|`.
    pub diagonal_residual: f64,
    /// `|A V + V A^T + D|_max` with the drift built from the synthesized
    /// Hamiltonian.
    pub stationarity_residual: f64,
}

struct SpectralData {
    form: SymplecticForm,
    sqrt: MatrixSqrt,
    spectrum: SymplecticSpectrum,
    dissipator: CMat,
    re_scale: f64,
}

fn complexify(m: &Mat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

fn dissipator_elements(v: &CovarianceMatrix, spec: &DissipationSpec) -> Result<SpectralData> {
    if spec.modes() != v.modes() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            actual: spec.dim(),
        });
    }
    let form = SymplecticForm::new(v.modes());
    let sqrt = symmetric_sqrt(v)?;
    let spectrum = symplectic_spectrum(v, &form)?;
    if spectrum.is_degenerate() {
        return Err(Error::DegenerateSpectrum {
            gap: spectrum.min_gap(),
            tolerance: DELTA_DEG_REL * spectrum.gammas()[0],
        });
    }

    let dim = v.dim();
    let jt_vinv = complexify(&(form.matrix().transpose() * &sqrt.inverse_root));
    let tilde = &jt_vinv * spectrum.eigenvectors();

    let (re, im) = re_im_cc(spec);
    let re_scale = re.amax();
    let im_tilde = complexify(&im) * &tilde;
    let re_tilde = complexify(&re) * &tilde;

    let z = spectrum.eigenvalues();
    let mut dissipator = CMat::zeros(dim, dim);
    for lp in 0..dim {
        for l in 0..dim {
            let weighted = im_tilde.column(l) * (z[l] + z[lp]) + re_tilde.column(l);
            dissipator[(lp, l)] = tilde.column(lp).dotc(&weighted);
        }
    }

    Ok(SpectralData {
        form,
        sqrt,
        spectrum,
        dissipator,
        re_scale,
    })
}

fn max_abs_diagonal(d: &CMat) -> f64 {
    (0..d.nrows()).fold(0.0f64, |acc, l| acc.max(d[(l, l)].norm()))
}

/// Builds the stabilizing quadratic Hamiltonian for `v` under `spec`.
///
/// Fails with [`Error::SingularCovariance`] when `V^{-1/2}` does not
/// exist, [`Error::DegenerateSpectrum`] when eigenvalue gaps collapse,
/// and [`Error::CriteriaViolated`] when the trace criteria reject the
/// state (the diagonal equations `D_ll = 0` are then unsolvable).
pub fn synthesize(v: &CovarianceMatrix, spec: &DissipationSpec) -> Result<SynthesisResult> {
    let data = dissipator_elements(v, spec)?;
    let report = criteria(v, spec)?;
    if let CriteriaVerdict::Fail { first_failing } = report.verdict {
        return Err(Error::CriteriaViolated {
            first_failing,
            value: report.normalized[first_failing - 1],
        });
    }

    let dim = v.dim();
    let z = data.spectrum.eigenvalues();
    let mut coefficients = CMat::zeros(dim, dim);
    for lp in 0..dim {
        for l in 0..dim {
            if l != lp {
                coefficients[(lp, l)] = data.dissipator[(lp, l)] / (z[lp] - z[l]);
            }
        }
    }

    let u = data.spectrum.eigenvectors();
    let in_eigenbasis = u * coefficients * u.adjoint();
    let root = complexify(&data.sqrt.root);
    let j = complexify(data.form.matrix());
    let g_complex = j.transpose() * &root * in_eigenbasis * &root * &j;

    let tolerance = EPSILON_IMAG * data.re_scale;
    let imag_norm = g_complex.map(|c| c.im).amax();
    if imag_norm > tolerance {
        return Err(Error::SolverFailure(
            "synthesized Hamiltonian has a non-negligible imaginary part",
        ));
    }
    let g_real = g_complex.map(|c| c.re);
    if (&g_real - g_real.transpose()).amax() > tolerance {
        return Err(Error::SolverFailure(
            "synthesized Hamiltonian deviates from symmetry",
        ));
    }
    let g = (&g_real + g_real.transpose()) * 0.5;
    let hamiltonian = QuadraticHamiltonian::new(g)
        .map_err(|_| Error::SolverFailure("synthesized Hamiltonian rejected"))?;

    let stationarity_residual = verify_stationarity(v, &hamiltonian, spec)?;
    Ok(SynthesisResult {
        hamiltonian,
        diagonal_residual: max_abs_diagonal(&data.dissipator),
        dissipator_matrix: data.dissipator,
        stationarity_residual,
    })
}

/// `max_l |D_ll|`: how far the diagonal consistency conditions are from
/// holding. At most `EPSILON_DIAG * |Re C^dag C|_max` exactly when the
/// trace criteria pass (for non-degenerate spectra).
pub fn consistency_diagonal(v: &CovarianceMatrix, spec: &DissipationSpec) -> Result<f64> {
    let data = dissipator_elements(v, spec)?;
    Ok(max_abs_diagonal(&data.dissipator))
}

/// Stationarity defect `|A V + V A^T + J (Re C^dag C) J^T|_max` with
/// `A = J (G + Im C^dag C)`.
///
/// Deliberately assembled from plain matrix products, sharing no code
/// with the spectral construction, so it can serve as its oracle. Accepts
/// arbitrary `G`: stabilizing Hamiltonians are not unique and alternative
/// choices can be validated here.
pub fn verify_stationarity(
    v: &CovarianceMatrix,
    hamiltonian: &QuadraticHamiltonian,
    spec: &DissipationSpec,
) -> Result<f64> {
    if v.modes() != spec.modes() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            actual: spec.dim(),
        });
    }
    let a = drift_matrix(spec, hamiltonian)?;
    let d = diffusion_matrix(spec);
    let residual = &a * v.matrix() + v.matrix() * a.transpose() + d;
    Ok(residual.amax())
}
