//! Machine-readable JSON reports with stable key names.

use gstab_core::criteria::{criteria, det_v12, entanglement_necessary, CriteriaVerdict};
use gstab_core::dynamics::{strict_stabilizability_check, StabilizabilityClass};
use gstab_core::symplectic::{physicality_check, purity, symplectic_spectrum, SymplecticForm};
use gstab_core::Mat;
use serde::Serialize;

use crate::scenario::Scenario;
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct CriteriaSection {
    pub values: Vec<f64>,
    pub normalized: Vec<f64>,
    pub verdict: &'static str,
    pub first_failing_n: Option<usize>,
    pub tolerance: f64,
}

#[derive(Debug, Serialize)]
pub struct PhysicalitySection {
    pub physical: bool,
    pub margin: f64,
}

#[derive(Debug, Serialize)]
pub struct ResidualSection {
    pub stationarity: f64,
    pub diagonal: f64,
}

#[derive(Debug, Serialize)]
pub struct TwoModeSection {
    pub det_v12: f64,
    pub entanglement_necessary: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub modes: usize,
    pub x0: f64,
    pub criteria: CriteriaSection,
    /// `null` when the covariance is singular (no spectrum).
    pub symplectic_eigenvalues: Option<Vec<f64>>,
    /// `null` when the state is unphysical (purity undefined).
    pub purity: Option<f64>,
    pub physicality: PhysicalitySection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_mode: Option<TwoModeSection>,
}

pub fn matrix_rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn verdict_label(verdict: &CriteriaVerdict) -> &'static str {
    match verdict {
        CriteriaVerdict::Pass => "pass",
        CriteriaVerdict::Fail { .. } => "fail",
    }
}

pub fn class_label(class: StabilizabilityClass) -> &'static str {
    match class {
        StabilizabilityClass::Strict => "strict",
        StabilizabilityClass::Relaxed => "relaxed",
        StabilizabilityClass::None => "none",
    }
}

/// Criteria, spectrum, purity and physicality for the scenario's state.
pub fn base_report(scenario: &Scenario) -> Result<Report, CliError> {
    let v = &scenario.state.cov;
    let report = criteria(v, &scenario.spec)?;
    let first_failing_n = match report.verdict {
        CriteriaVerdict::Pass => None,
        CriteriaVerdict::Fail { first_failing } => Some(first_failing),
    };
    let spectrum = symplectic_spectrum(v, &SymplecticForm::new(scenario.modes))
        .ok()
        .map(|s| s.gammas().to_vec());
    let physicality = physicality_check(v);
    Ok(Report {
        modes: scenario.modes,
        x0: scenario.x0,
        criteria: CriteriaSection {
            verdict: verdict_label(&report.verdict),
            first_failing_n,
            values: report.values,
            normalized: report.normalized,
            tolerance: report.tolerance,
        },
        symplectic_eigenvalues: spectrum,
        purity: purity(v).ok(),
        physicality: PhysicalitySection {
            physical: physicality.physical,
            margin: physicality.margin,
        },
        hamiltonian: None,
        residuals: None,
        classification: None,
        two_mode: None,
    })
}

/// Adds the analyze-only sections: strict/relaxed classification under the
/// scenario Hamiltonian, and the cross-mode block for two-mode systems.
pub fn extend_for_analysis(report: &mut Report, scenario: &Scenario) -> Result<(), CliError> {
    let class = strict_stabilizability_check(&scenario.state, &scenario.spec, &scenario.hamiltonian)?;
    report.classification = Some(class_label(class));
    if scenario.modes == 2 {
        report.two_mode = Some(TwoModeSection {
            det_v12: det_v12(&scenario.state.cov)?,
            entanglement_necessary: entanglement_necessary(&scenario.state.cov)?,
        });
    }
    Ok(())
}

pub fn print(report: &Report) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(report)?);
    Ok(())
}
