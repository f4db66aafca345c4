//! Symplectic linear algebra: the symplectic form, covariance matrices,
//! symmetric matrix square roots, and the spectral decomposition of the
//! skew-symmetric matrix `V^{1/2} J V^{1/2}` whose eigenvalue moduli are
//! the symplectic eigenvalues of `V`.

use alloc::vec::Vec;

use nalgebra::linalg::SymmetricEigen;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::{CMat, Mat};

/// Relative tolerance for accepting near-symmetric input matrices.
pub const TAU_SYM_REL: f64 = 1e-10;
/// Relative floor on the smallest eigenvalue of an invertible covariance.
pub const TAU_INV_REL: f64 = 1e-12;
/// Absolute slack on the uncertainty-relation eigenvalue bound.
pub const TAU_PSD: f64 = 1e-10;
/// Generic numerical comparison tolerance.
pub const TAU_NUM: f64 = 1e-10;
/// Relative eigenvalue-gap threshold below which a spectrum counts as
/// degenerate.
pub const DELTA_DEG_REL: f64 = 1e-8;

/// The symplectic form `J = [[0, I_N], [-I_N, 0]]` of an `N`-mode system,
/// in the quadrature ordering `(x_1..x_N, p_1..p_N)`.
///
/// Satisfies `J^T = -J`, `J^2 = -I` and `J^{-1} = J^T` exactly (the
/// entries are integers).
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
    matrix: Mat,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Self {
        assert!(modes >= 1, "mode count must be positive");
        let matrix = Mat::from_fn(2 * modes, 2 * modes, |i, j| {
            if j == i + modes {
                1.0
            } else if i == j + modes {
                -1.0
            } else {
                0.0
            }
        });
        Self { modes, matrix }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }
}

/// Real symmetric `2N x 2N` matrix of quadrature second moments.
///
/// Construction symmetrizes inputs whose asymmetry is below
/// `TAU_SYM_REL * max|V|` (file round-trips introduce last-digit noise)
/// and rejects anything worse. Physicality (`V + iJ/2 >= 0`) is *not*
/// enforced here; [`physicality_check`] is a separate predicate so that
/// unphysical trial matrices can still be analyzed.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    matrix: Mat,
    modes: usize,
}

impl CovarianceMatrix {
    pub fn new(matrix: Mat) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::DimensionMismatch {
                expected: rows,
                actual: cols,
            });
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: if rows == 0 { 2 } else { rows + 1 },
                actual: rows,
            });
        }
        let scale = matrix.amax();
        let tolerance = TAU_SYM_REL * scale;
        let mut asymmetry = 0.0f64;
        for i in 0..rows {
            for j in (i + 1)..rows {
                asymmetry = asymmetry.max((matrix[(i, j)] - matrix[(j, i)]).abs());
            }
        }
        if asymmetry > tolerance {
            return Err(Error::NonSymmetric {
                asymmetry,
                tolerance,
            });
        }
        let symmetrized = (&matrix + matrix.transpose()) * 0.5;
        Ok(Self {
            modes: rows / 2,
            matrix: symmetrized,
        })
    }

    /// Diagonal covariance from the `2N` variances.
    pub fn from_diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(Mat::from_diagonal(&crate::Vec2N::from_row_slice(entries)))
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.matrix.amax()
    }

    /// Position variance `V_{x_i x_i}` of the given mode.
    pub fn xx(&self, mode: usize) -> f64 {
        self.matrix[(mode, mode)]
    }

    /// Momentum variance `V_{p_i p_i}` of the given mode.
    pub fn pp(&self, mode: usize) -> f64 {
        self.matrix[(self.modes + mode, self.modes + mode)]
    }

    /// Cross covariance `V_{x_i p_i}` of the given mode.
    pub fn xp(&self, mode: usize) -> f64 {
        self.matrix[(mode, self.modes + mode)]
    }
}

/// Symmetric square root of a covariance matrix together with its inverse.
#[derive(Debug, Clone)]
pub struct MatrixSqrt {
    /// `S` with `S = S^T` and `S S = V`.
    pub root: Mat,
    /// `S^{-1}`.
    pub inverse_root: Mat,
}

/// Eigendecomposition of the skew-symmetric matrix
/// `scriptV = V^{1/2} J V^{1/2}`.
///
/// Eigenvalues come in conjugate pairs `z_l = +i gamma_l` for
/// `l = 0..N` and `z_l = -i gamma_{l-N}` for `l = N..2N`, with the
/// symplectic eigenvalues `gamma_l` sorted descending. Eigenvectors are
/// the columns of an orthonormal (unitary) matrix; the `-i gamma` columns
/// are the complex conjugates of the `+i gamma` ones.
#[derive(Debug, Clone)]
pub struct SymplecticSpectrum {
    gammas: Vec<f64>,
    eigenvalues: Vec<Complex64>,
    eigenvectors: CMat,
    min_gap: f64,
    degenerate: bool,
}

impl SymplecticSpectrum {
    /// Symplectic eigenvalues, descending.
    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// The `2N` eigenvalues `z_l` in the pairing order described above.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose column `l` is the eigenvector for `z_l`.
    pub fn eigenvectors(&self) -> &CMat {
        &self.eigenvectors
    }

    /// Smallest pairwise distance among the `z_l`.
    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
}

fn hermitian_eigen(matrix: CMat) -> Result<SymmetricEigen<Complex64, nalgebra::Dyn>> {
    SymmetricEigen::try_new(matrix, f64::EPSILON, 0)
        .ok_or(Error::SolverFailure("hermitian eigendecomposition"))
}

fn symmetric_eigen(matrix: Mat) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    SymmetricEigen::try_new(matrix, f64::EPSILON, 0)
        .ok_or(Error::SolverFailure("symmetric eigendecomposition"))
}

/// Symmetric square root `S` of a positive definite covariance, with
/// `S^{-1}` alongside.
///
/// Fails with [`Error::SingularCovariance`] when the smallest eigenvalue
/// does not clear `TAU_INV_REL * max|V|`; the spectral construction of the
/// stabilizing Hamiltonian needs `V^{-1/2}`.
pub fn symmetric_sqrt(v: &CovarianceMatrix) -> Result<MatrixSqrt> {
    let eig = symmetric_eigen(v.matrix().clone())?;
    let tolerance = TAU_INV_REL * v.max_abs();
    let min_eigenvalue = eig.eigenvalues.min();
    if min_eigenvalue <= tolerance {
        return Err(Error::SingularCovariance {
            min_eigenvalue,
            tolerance,
        });
    }
    let u = &eig.eigenvectors;
    let root_diag = Mat::from_diagonal(&eig.eigenvalues.map(|x| x.sqrt()));
    let inv_diag = Mat::from_diagonal(&eig.eigenvalues.map(|x| x.sqrt().recip()));
    let root = u * root_diag * u.transpose();
    let inverse_root = u * inv_diag * u.transpose();
    Ok(MatrixSqrt {
        root: (&root + root.transpose()) * 0.5,
        inverse_root: (&inverse_root + inverse_root.transpose()) * 0.5,
    })
}

/// Spectral decomposition of `scriptV = V^{1/2} J V^{1/2}`.
///
/// `scriptV` is skew-symmetric, so `i scriptV` is Hermitian with real
/// eigenvalues `-gamma, +gamma`; a Hermitian eigensolver is far more
/// robust than a skew-symmetric one. Eigenvalues are sorted ascending,
/// the lowest `N` map to `z_l = +i gamma_l` (descending `gamma`), and the
/// conjugate columns complete the basis exactly paired by magnitude.
pub fn symplectic_spectrum(
    v: &CovarianceMatrix,
    form: &SymplecticForm,
) -> Result<SymplecticSpectrum> {
    if form.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            actual: form.dim(),
        });
    }
    let n = v.modes();
    let dim = v.dim();
    let sqrt = symmetric_sqrt(v)?;
    let script_v = &sqrt.root * form.matrix() * &sqrt.root;
    let hermitian = CMat::from_fn(dim, dim, |i, j| Complex64::new(0.0, script_v[(i, j)]));
    let eig = hermitian_eigen(hermitian)?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());

    // i*scriptV has eigenvalue -gamma on the eigenvector of +i*gamma.
    let gammas: Vec<f64> = order[..n].iter().map(|&k| -eig.eigenvalues[k]).collect();
    let mut eigenvalues = Vec::with_capacity(dim);
    let mut eigenvectors = CMat::zeros(dim, dim);
    for l in 0..n {
        eigenvalues.push(Complex64::new(0.0, gammas[l]));
        eigenvectors
            .column_mut(l)
            .copy_from(&eig.eigenvectors.column(order[l]));
    }
    for l in 0..n {
        eigenvalues.push(Complex64::new(0.0, -gammas[l]));
        let conjugate = eig.eigenvectors.column(order[l]).map(|c| c.conj());
        eigenvectors.column_mut(n + l).copy_from(&conjugate);
    }

    let mut min_gap = f64::INFINITY;
    for a in 0..dim {
        for b in (a + 1)..dim {
            min_gap = min_gap.min((eigenvalues[a] - eigenvalues[b]).norm());
        }
    }
    let gamma_max = gammas.first().copied().unwrap_or(0.0);
    let degenerate = min_gap < DELTA_DEG_REL * gamma_max;

    Ok(SymplecticSpectrum {
        gammas,
        eigenvalues,
        eigenvectors,
        min_gap,
        degenerate,
    })
}

/// Outcome of the uncertainty-relation test `V + iJ/2 >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    pub physical: bool,
    /// Smallest eigenvalue of the Hermitian matrix `V + iJ/2`.
    pub margin: f64,
}

/// Tests the generalized uncertainty relation `V + iJ/2 >= 0`.
///
/// For `N = 1` this is equivalent to `V_xx V_pp - V_xp^2 >= 1/4`.
pub fn physicality_check(v: &CovarianceMatrix) -> PhysicalityReport {
    let form = SymplecticForm::new(v.modes());
    let dim = v.dim();
    let hermitian = CMat::from_fn(dim, dim, |i, j| {
        Complex64::new(v.matrix()[(i, j)], 0.5 * form.matrix()[(i, j)])
    });
    let eig = hermitian_eigen(hermitian).expect("unbounded hermitian eigendecomposition");
    let margin = eig.eigenvalues.min();
    PhysicalityReport {
        physical: margin >= -TAU_PSD,
        margin,
    }
}

/// Purity `tr(rho^2) = 1 / sqrt(2^{2N} det V)` of the Gaussian state.
///
/// Equals 1 exactly when every symplectic eigenvalue is `1/2`. Rejects
/// unphysical covariances, for which the formula would exceed 1.
pub fn purity(v: &CovarianceMatrix) -> Result<f64> {
    let report = physicality_check(v);
    if !report.physical {
        return Err(Error::UnphysicalState {
            margin: report.margin,
        });
    }
    let det = v.matrix().determinant();
    Ok((4.0f64.powi(v.modes() as i32) * det).sqrt().recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn vacuum(n: usize) -> CovarianceMatrix {
        CovarianceMatrix::new(Mat::identity(2 * n, 2 * n) * 0.5).unwrap()
    }

    #[test]
    fn symplectic_form_is_exact() {
        for n in 1..=4 {
            let form = SymplecticForm::new(n);
            let j = form.matrix();
            let j2_plus_i = j * j + Mat::identity(2 * n, 2 * n);
            assert_eq!(j2_plus_i.amax(), 0.0);
            assert_eq!((j.transpose() + j).amax(), 0.0);
        }
    }

    #[test]
    fn covariance_rejects_asymmetric_input() {
        let m = Mat::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        match CovarianceMatrix::new(m) {
            Err(Error::NonSymmetric { asymmetry, .. }) => assert_relative_eq!(asymmetry, 0.1),
            other => panic!("expected NonSymmetric, got {other:?}"),
        }
    }

    #[test]
    fn covariance_symmetrizes_roundoff_noise() {
        let m = Mat::from_row_slice(2, 2, &[1.0, 0.5 + 1e-13, 0.5, 1.0]);
        let v = CovarianceMatrix::new(m).unwrap();
        assert_eq!(v.matrix()[(0, 1)], v.matrix()[(1, 0)]);
    }

    #[test]
    fn covariance_rejects_odd_dimension() {
        let m = Mat::identity(3, 3);
        assert!(matches!(
            CovarianceMatrix::new(m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sqrt_of_identity_and_diagonal() {
        let s = symmetric_sqrt(&CovarianceMatrix::new(Mat::identity(2, 2)).unwrap()).unwrap();
        assert_relative_eq!(s.root[(0, 0)], 1.0, epsilon = 1e-14);
        assert_relative_eq!(s.root[(0, 1)], 0.0, epsilon = 1e-14);

        let v = CovarianceMatrix::from_diagonal(&[4.0, 0.25]).unwrap();
        let s = symmetric_sqrt(&v).unwrap();
        assert_relative_eq!(s.root[(0, 0)], 2.0, epsilon = 1e-14);
        assert_relative_eq!(s.root[(1, 1)], 0.5, epsilon = 1e-14);
        assert_relative_eq!(s.inverse_root[(0, 0)], 0.5, epsilon = 1e-14);
        assert_relative_eq!(s.inverse_root[(1, 1)], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn sqrt_rejects_singular_covariance() {
        let v = CovarianceMatrix::from_diagonal(&[1e-30, 1.0]).unwrap();
        assert!(matches!(
            symmetric_sqrt(&v),
            Err(Error::SingularCovariance { .. })
        ));
    }

    #[test]
    fn spectrum_of_single_mode_diagonals() {
        let form = SymplecticForm::new(1);
        let spec = symplectic_spectrum(&vacuum(1), &form).unwrap();
        assert_relative_eq!(spec.gammas()[0], 0.5, epsilon = 1e-14);
        assert!(!spec.is_degenerate());

        // gamma = sqrt(det V) for N = 1
        let v = CovarianceMatrix::from_diagonal(&[1.0 / 3.0, 1.0]).unwrap();
        let spec = symplectic_spectrum(&v, &form).unwrap();
        assert_relative_eq!(spec.gammas()[0], (1.0f64 / 3.0).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn spectrum_pairs_eigenvalues_and_flags_degeneracy() {
        let form = SymplecticForm::new(2);
        let spec = symplectic_spectrum(&vacuum(2), &form).unwrap();
        assert_eq!(spec.gammas().len(), 2);
        assert_relative_eq!(spec.gammas()[0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(spec.gammas()[1], 0.5, epsilon = 1e-12);
        assert!(spec.is_degenerate());
        let z = spec.eigenvalues();
        assert_relative_eq!((z[0] + z[2]).norm(), 0.0, epsilon = 1e-14);
        assert_relative_eq!((z[1] + z[3]).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn spectrum_eigenvectors_satisfy_eigen_equation() {
        let v = CovarianceMatrix::new(Mat::from_row_slice(
            2,
            2,
            &[0.9, 0.2, 0.2, 0.7],
        ))
        .unwrap();
        let form = SymplecticForm::new(1);
        let sqrt = symmetric_sqrt(&v).unwrap();
        let script_v = &sqrt.root * form.matrix() * &sqrt.root;
        let script_c = CMat::from_fn(2, 2, |i, j| Complex64::new(script_v[(i, j)], 0.0));
        let spec = symplectic_spectrum(&v, &form).unwrap();
        for l in 0..2 {
            let col = spec.eigenvectors().column(l).clone_owned();
            let residual = &script_c * &col - col * spec.eigenvalues()[l];
            assert!(residual.camax() < 1e-12);
        }
    }

    #[test]
    fn physicality_examples() {
        let report = physicality_check(&vacuum(1));
        assert!(report.physical);
        assert_relative_eq!(report.margin, 0.0, epsilon = 1e-12);

        let squeezed = CovarianceMatrix::from_diagonal(&[1.0 / 3.0, 1.0]).unwrap();
        assert!(physicality_check(&squeezed).physical);

        let small = CovarianceMatrix::from_diagonal(&[0.1, 0.1]).unwrap();
        assert!(!physicality_check(&small).physical);
    }

    #[test]
    fn purity_examples() {
        assert_relative_eq!(purity(&vacuum(1)).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(purity(&vacuum(2)).unwrap(), 1.0, epsilon = 1e-12);

        let v = CovarianceMatrix::from_diagonal(&[1.0 / 3.0, 1.0]).unwrap();
        assert_relative_eq!(
            purity(&v).unwrap(),
            0.5 / (1.0f64 / 3.0).sqrt(),
            epsilon = 1e-12
        );

        let small = CovarianceMatrix::from_diagonal(&[0.1, 0.1]).unwrap();
        assert!(matches!(purity(&small), Err(Error::UnphysicalState { .. })));
    }
}
