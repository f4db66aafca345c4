//! Sampling helpers shared by the property and acceptance suites.

use gstab_core::dissipation::DissipationSpec;
use gstab_core::symplectic::{physicality_check, CovarianceMatrix};
use gstab_core::{CVec, Mat};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_symmetric(rng: &mut ChaCha8Rng, dim: usize) -> Mat {
    let m = Mat::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    (&m + m.transpose()) * 0.5
}

/// Symmetric positive definite matrix with a bounded condition number.
pub fn random_spd(rng: &mut ChaCha8Rng, dim: usize) -> CovarianceMatrix {
    let m = Mat::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    CovarianceMatrix::new(&m * m.transpose() + Mat::identity(dim, dim) * 0.05).unwrap()
}

/// Random covariance satisfying the uncertainty relation: a random SPD
/// matrix shifted by its physicality defect (adding `c I` moves every
/// eigenvalue of `V + iJ/2` by exactly `c`).
pub fn random_physical(rng: &mut ChaCha8Rng, modes: usize) -> CovarianceMatrix {
    let dim = 2 * modes;
    let spd = random_spd(rng, dim);
    let margin = physicality_check(&spd).margin;
    if margin >= 0.0 {
        return spd;
    }
    CovarianceMatrix::new(spd.matrix() + Mat::identity(dim, dim) * (1e-6 - margin)).unwrap()
}

/// Dissipation spec with `ops` random complex coefficient vectors.
pub fn random_spec(rng: &mut ChaCha8Rng, modes: usize, ops: usize) -> DissipationSpec {
    let dim = 2 * modes;
    let vectors = (0..ops)
        .map(|_| {
            CVec::from_fn(dim, |_, _| {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            })
        })
        .collect();
    DissipationSpec::new(modes, vectors).unwrap()
}
