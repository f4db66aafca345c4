//! Error types shared by all analysis routines.

/// Errors produced by construction, analysis and integration routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A matrix or vector does not have the size required by the operation.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Input matrix deviates from symmetry by more than the tolerance.
    #[error("matrix not symmetric: max asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    NonSymmetric { asymmetry: f64, tolerance: f64 },

    /// The covariance matrix is not invertible, so `V^{1/2}` and `V^{-1/2}`
    /// are ill-defined.
    #[error("covariance matrix numerically singular: min eigenvalue {min_eigenvalue:.3e} <= {tolerance:.3e}")]
    SingularCovariance { min_eigenvalue: f64, tolerance: f64 },

    /// The state violates the uncertainty relation `V + iJ/2 >= 0`.
    #[error("unphysical state: min eigenvalue of V + iJ/2 is {margin:.3e}")]
    UnphysicalState { margin: f64 },

    /// Two eigenvalues of `V^{1/2} J V^{1/2}` coincide within tolerance;
    /// the Hamiltonian construction divides by their gaps. Perturbing the
    /// covariance within the stabilizable set lifts the degeneracy.
    #[error("degenerate symplectic spectrum: min eigenvalue gap {gap:.3e} < {tolerance:.3e}; perturb the covariance within the stabilizable set to lift the degeneracy")]
    DegenerateSpectrum { gap: f64, tolerance: f64 },

    /// The trace criteria reject the state, so no quadratic Hamiltonian
    /// can make it stationary.
    #[error("stabilizability criteria violated at n = {first_failing} (normalized value {value:.3e})")]
    CriteriaViolated { first_failing: usize, value: f64 },

    /// The drift matrix has an eigenvalue with non-negative real part, so
    /// the Lyapunov equation has no unique stable steady state.
    #[error("drift matrix not Hurwitz: eigenvalue {re:.6e} {im:+.6e}i")]
    NotHurwitz { re: f64, im: f64 },

    /// The requested integration step violates the stability guard
    /// `dt * |A| <= 0.1`.
    #[error("integration step too large: dt * |A| = {stability:.3e} > 0.1")]
    StepTooLarge { stability: f64 },

    /// Variance lies at or below the excluded branch point of the
    /// minimum-variance formula.
    #[error("excluded point: variance {variance:.6e} not above the branch point {branch_point:.6e}")]
    ExcludedPoint { variance: f64, branch_point: f64 },

    /// A scalar argument is outside its admissible range.
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// An iterative numerical routine failed to converge.
    #[error("numerical routine failed: {0}")]
    SolverFailure(&'static str),
}

impl Error {
    /// Stable machine-readable variant name, for frontends that report
    /// failures by category.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonSymmetric { .. } => "NonSymmetric",
            Error::SingularCovariance { .. } => "SingularCovariance",
            Error::UnphysicalState { .. } => "UnphysicalState",
            Error::DegenerateSpectrum { .. } => "DegenerateSpectrum",
            Error::CriteriaViolated { .. } => "CriteriaViolated",
            Error::NotHurwitz { .. } => "NotHurwitz",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::ExcludedPoint { .. } => "ExcludedPoint",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::SolverFailure(_) => "SolverFailure",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
