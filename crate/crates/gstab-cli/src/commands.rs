//! Subcommand implementations.

use std::io::Write;
use std::path::{Path, PathBuf};

use gstab_core::criteria::{det_v12, omega_single_mode, two_mode_condition};
use gstab_core::dynamics::{default_step, evolve};
use gstab_core::surfaces::{epr_condition_lhs, epr_covariance, hyperboloid_sample, EprAnsatz};
use gstab_core::symplectic::purity;
use gstab_core::synthesis::{synthesize, verify_stationarity};

use crate::output::{open_sink, write_header, write_row};
use crate::report::{base_report, extend_for_analysis, matrix_rows, print, ResidualSection};
use crate::scenario;
use crate::{CliError, ScanArgs, ScanMode};

/// `check`: criteria verdict decides the exit code (0 pass, 1 fail).
pub fn check(path: &Path) -> Result<i32, CliError> {
    let scenario = scenario::load(path)?;
    let report = base_report(&scenario)?;
    let pass = report.criteria.verdict == "pass";
    print(&report)?;
    Ok(if pass { 0 } else { 1 })
}

/// `synthesize`: construct the stabilizing Hamiltonian and report it with
/// its residuals. Module errors surface as exit 1 with a named reason.
pub fn synthesize_cmd(path: &Path) -> Result<i32, CliError> {
    let scenario = scenario::load(path)?;
    let result = synthesize(&scenario.state.cov, &scenario.spec)?;
    let mut report = base_report(&scenario)?;
    report.hamiltonian = Some(matrix_rows(result.hamiltonian.matrix()));
    report.residuals = Some(ResidualSection {
        stationarity: result.stationarity_residual,
        diagonal: result.diagonal_residual,
    });
    print(&report)?;
    Ok(0)
}

/// `analyze`: the full report, including classification under the
/// scenario's Hamiltonian and the two-mode entanglement block.
pub fn analyze(path: &Path) -> Result<i32, CliError> {
    let scenario = scenario::load(path)?;
    let mut report = base_report(&scenario)?;
    extend_for_analysis(&mut report, &scenario)?;
    print(&report)?;
    Ok(0)
}

/// `simulate`: integrate the moment equations, one CSV row per stored
/// sample with the mean, the upper covariance triangle, and the
/// stationarity residual.
pub fn simulate(
    path: &Path,
    t_final: f64,
    dt: Option<f64>,
    out: Option<&PathBuf>,
) -> Result<i32, CliError> {
    let scenario = scenario::load(path)?;
    let dt = match dt {
        Some(value) => value,
        None => default_step(&scenario.spec, &scenario.hamiltonian, t_final)?,
    };
    let result = evolve(
        &scenario.state,
        &scenario.spec,
        &scenario.hamiltonian,
        t_final,
        dt,
    )?;

    let dim = 2 * scenario.modes;
    let mut columns = vec!["t".to_string()];
    for i in 1..=dim {
        columns.push(format!("xi_{i}"));
    }
    for i in 1..=dim {
        for j in i..=dim {
            columns.push(format!("V_{i}{j}"));
        }
    }
    columns.push("residual".to_string());

    let mut sink = open_sink(out)?;
    write_header(sink.as_mut(), &columns)?;
    for ((t, mean), cov) in result.times.iter().zip(&result.means).zip(&result.covs) {
        let mut row = Vec::with_capacity(columns.len());
        row.push(*t);
        row.extend(mean.iter().copied());
        for i in 0..dim {
            for j in i..dim {
                row.push(cov.matrix()[(i, j)]);
            }
        }
        row.push(verify_stationarity(cov, &scenario.hamiltonian, &scenario.spec)?);
        write_row(sink.as_mut(), &row)?;
    }
    sink.flush()?;
    Ok(0)
}

fn grid(min: f64, max: f64, steps: usize, name: &str) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(CliError::Input(format!("{name}: empty range (0 steps)")));
    }
    if max < min {
        return Err(CliError::Input(format!(
            "{name}: max {max} is below min {min}"
        )));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let width = (max - min) / (steps - 1) as f64;
    Ok((0..steps).map(|k| min + k as f64 * width).collect())
}

/// `scan`: tabulate a closed-form family over a grid, in deterministic
/// row-major grid order.
pub fn scan(args: &ScanArgs) -> Result<i32, CliError> {
    if !(args.x0 > 0.0) {
        return Err(CliError::Input(format!("x0 must be positive, got {}", args.x0)));
    }
    let mut sink = open_sink(args.out.as_ref())?;
    match args.mode {
        ScanMode::Hyperboloid => {
            let ys = grid(args.y_min, args.y_max, args.y_steps, "y")?;
            let zs = grid(args.z_min, args.z_max, args.z_steps, "z")?;
            let columns = ["y", "z", "V_xx", "V_pp", "V_xp", "purity", "omega_residual"]
                .map(String::from);
            write_header(sink.as_mut(), &columns)?;
            for &y in &ys {
                for &z in &zs {
                    let p = hyperboloid_sample(y, z, args.x0);
                    let state_purity = purity(&p.covariance())?;
                    let omega = omega_single_mode(p.vxx, p.vpp, p.vxp, args.x0);
                    write_row(
                        sink.as_mut(),
                        &[y, z, p.vxx, p.vpp, p.vxp, state_purity, omega],
                    )?;
                }
            }
        }
        ScanMode::Epr => {
            let sps = grid(args.sigma_p_min, args.sigma_p_max, args.sigma_p_steps, "sigma_p")?;
            let sxs = grid(args.sigma_x_min, args.sigma_x_max, args.sigma_x_steps, "sigma_x")?;
            let columns = ["sigma_p_cm", "sigma_x_rel", "lhs", "det_v12", "condition_value"]
                .map(String::from);
            write_header(sink.as_mut(), &columns)?;
            for &sp in &sps {
                for &sx in &sxs {
                    let ansatz = EprAnsatz::new(sp, sx, args.x0)?;
                    let cov = epr_covariance(&ansatz);
                    let lhs = epr_condition_lhs(&ansatz);
                    let det = det_v12(&cov)?;
                    let condition = two_mode_condition(&cov, args.gamma, args.gamma, args.x0)?;
                    write_row(sink.as_mut(), &[sp, sx, lhs, det, condition])?;
                }
            }
        }
    }
    sink.flush()?;
    Ok(0)
}
