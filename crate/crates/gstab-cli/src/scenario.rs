//! Scenario files: one JSON file describes one system (mode count, length
//! scale, Lindblad operators, optional Hamiltonian) and one Gaussian state.
//!
//! ```json
//! {
//!   "modes": 1,
//!   "x0": 1.0,
//!   "lindblad": [
//!     { "damped_mode": 0, "gamma": 1.0 },
//!     { "coeffs_re": [0.1, 0.0], "coeffs_im": [0.0, 0.2] }
//!   ],
//!   "hamiltonian": [[0.0, 0.0], [0.0, 0.0]],
//!   "state": { "mean": [0.0, 0.0], "cov": [[0.5, 0.0], [0.0, 0.5]] }
//! }
//! ```
//!
//! Complex Lindblad coefficients are split into `coeffs_re` / `coeffs_im`
//! arrays of length `2N` (no text format has a complex literal); the
//! `damped_mode` shorthand expands to `sqrt(gamma) a_i` with the global
//! length scale, overridable per entry with an `x0` field. Matrices are
//! row-major lists of rows. Mode indices are 0-based.

use std::fs;
use std::path::Path;

use gstab_core::dissipation::{
    damped_mode_vector, DissipationSpec, GaussianState, QuadraticHamiltonian,
};
use gstab_core::symplectic::CovarianceMatrix;
use gstab_core::{CVec, Mat, Vec2N};
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub modes: usize,
    #[serde(default = "default_x0")]
    pub x0: f64,
    #[serde(default)]
    pub lindblad: Vec<LindbladEntry>,
    #[serde(default)]
    pub hamiltonian: Option<Vec<Vec<f64>>>,
    pub state: StateSection,
}

fn default_x0() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSection {
    pub mean: Vec<f64>,
    pub cov: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LindbladEntry {
    Damped {
        damped_mode: usize,
        gamma: f64,
        #[serde(default)]
        x0: Option<f64>,
    },
    Raw {
        coeffs_re: Vec<f64>,
        coeffs_im: Vec<f64>,
    },
}

/// A parsed and validated scenario, in core types.
pub struct Scenario {
    pub modes: usize,
    pub x0: f64,
    pub spec: DissipationSpec,
    pub hamiltonian: QuadraticHamiltonian,
    pub state: GaussianState,
}

fn matrix_from_rows(rows: &[Vec<f64>], dim: usize, field: &str) -> Result<Mat, CliError> {
    if rows.len() != dim {
        return Err(CliError::Input(format!(
            "{field}: expected {dim} rows, found {}",
            rows.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(CliError::Input(format!(
                "{field}: row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
    }
    Ok(Mat::from_fn(dim, dim, |i, j| rows[i][j]))
}

pub fn load(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: ScenarioFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    build(file)
}

pub fn build(file: ScenarioFile) -> Result<Scenario, CliError> {
    if file.modes == 0 {
        return Err(CliError::Input("modes: must be at least 1".into()));
    }
    if !(file.x0 > 0.0) {
        return Err(CliError::Input(format!(
            "x0: must be positive, found {}",
            file.x0
        )));
    }
    let modes = file.modes;
    let dim = 2 * modes;

    let mut vectors: Vec<CVec> = Vec::with_capacity(file.lindblad.len());
    for (k, entry) in file.lindblad.iter().enumerate() {
        match entry {
            LindbladEntry::Damped {
                damped_mode,
                gamma,
                x0,
            } => {
                if *damped_mode >= modes {
                    return Err(CliError::Input(format!(
                        "lindblad[{k}].damped_mode: index {damped_mode} out of range for {modes} modes (0-based)"
                    )));
                }
                let scale = x0.unwrap_or(file.x0);
                let c = damped_mode_vector(modes, *damped_mode, *gamma, scale)
                    .map_err(|e| CliError::Input(format!("lindblad[{k}]: {e}")))?;
                vectors.push(c);
            }
            LindbladEntry::Raw {
                coeffs_re,
                coeffs_im,
            } => {
                if coeffs_re.len() != dim || coeffs_im.len() != dim {
                    return Err(CliError::Input(format!(
                        "lindblad[{k}]: coeffs_re/coeffs_im must each have {dim} entries, \
                         found {}/{}",
                        coeffs_re.len(),
                        coeffs_im.len()
                    )));
                }
                vectors.push(CVec::from_fn(dim, |i, _| {
                    Complex64::new(coeffs_re[i], coeffs_im[i])
                }));
            }
        }
    }
    let spec = DissipationSpec::new(modes, vectors)
        .map_err(|e| CliError::Input(format!("lindblad: {e}")))?;

    let hamiltonian = match &file.hamiltonian {
        Some(rows) => {
            let g = matrix_from_rows(rows, dim, "hamiltonian")?;
            QuadraticHamiltonian::new(g)
                .map_err(|e| CliError::Input(format!("hamiltonian: {e}")))?
        }
        None => QuadraticHamiltonian::zero(modes),
    };

    if file.state.mean.len() != dim {
        return Err(CliError::Input(format!(
            "state.mean: expected {dim} entries, found {}",
            file.state.mean.len()
        )));
    }
    let cov_matrix = matrix_from_rows(&file.state.cov, dim, "state.cov")?;
    let cov = CovarianceMatrix::new(cov_matrix)
        .map_err(|e| CliError::Input(format!("state.cov: {e}")))?;
    let state = GaussianState::new(Vec2N::from_row_slice(&file.state.mean), cov)
        .map_err(|e| CliError::Input(format!("state: {e}")))?;

    Ok(Scenario {
        modes,
        x0: file.x0,
        spec,
        hamiltonian,
        state,
    })
}
