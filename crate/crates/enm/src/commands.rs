//! Table-producing commands.

use std::io::Write;

use rayon::prelude::*;

use enm_core::correlations::{discord, geometric_discord, l1_coherence, mutual_information, negativity};
use enm_core::linalg::{linear_grid, Vec3};
use enm_core::lindblad::{propagate, PropagationOptions};
use enm_core::metrology::{cramer_rao, qfi_covariant, PhaseEstimationSetup};
use enm_core::tomography::{enm_channel_from_modulus, f_matrix};
use enm_core::{Error, QubitState};

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::verify::run_suites;

/// Evaluates `row` on every grid point in parallel, keeping grid order.
fn rows<F>(grid: &[f64], row: F) -> Result<Vec<Vec<Cell>>, Error>
where
    F: Fn(f64) -> Result<Vec<Cell>, Error> + Sync,
{
    grid.par_iter().map(|&t| row(t)).collect()
}

fn table(columns: Vec<&'static str>, rows: Vec<Vec<Cell>>) -> Table {
    Table { columns, rows }
}

/// Bloch vectors from numerical propagation, one per grid point.
fn propagated_bloch(config: &RunConfig, r0: &Vec3, omega: f64, grid: &[f64]) -> Result<Vec<Vec3>, Error> {
    let generator = config.rates.rates().decoherence_matrix().with_hamiltonian_rate(omega);
    let t_end = *grid.last().expect("validated grid");
    let map = propagate(&generator, t_end, &PropagationOptions::with_grid(grid.to_vec()))?;
    grid.iter().map(|&t| Ok(map.map_at(t)?.apply_bloch(r0))).collect()
}

pub fn build_table(config: &RunConfig) -> Result<Table, CliError> {
    let grid = config.time.grid();
    let rates = config.rates.rates();
    let t = match &config.command {
        Command::Trajectory { r0, omega } => {
            let bloch = propagated_bloch(config, r0, *omega, &grid)?;
            let body = grid
                .iter()
                .zip(bloch)
                .map(|(&t, r)| vec![t.into(), r[0].into(), r[1].into(), r[2].into(), r.norm().into()])
                .collect();
            table(vec!["t", "r1", "r2", "r3", "norm"], body)
        }
        Command::Choi => {
            let body = rows(&grid, |t| {
                let ch = rates.channel_at(t)?;
                let cond = rates.cptp_conditions(t)?;
                let choi = ch.choi();
                Ok(vec![
                    t.into(),
                    ch.alpha.into(),
                    ch.beta.into(),
                    ch.c.into(),
                    cond.slack_b.into(),
                    choi.min_eigenvalue().into(),
                    (cond.cond_a && cond.cond_b).into(),
                ])
            })?;
            table(
                vec!["t", "alpha", "beta", "c", "slack_b", "min_eigenvalue", "cptp"],
                body,
            )
        }
        Command::Correlations => {
            let body = rows(&grid, |t| {
                let ch = rates.channel_at(t)?;
                let choi = ch.choi().state()?;
                let probe = ch.map().apply_state(&QubitState::plus())?;
                Ok(vec![
                    t.into(),
                    negativity(&choi).into(),
                    mutual_information(&choi).into(),
                    discord(&choi)?.value.into(),
                    geometric_discord(&choi).into(),
                    l1_coherence(&probe).into(),
                ])
            })?;
            table(vec!["t", "E", "I", "Q", "D", "C"], body)
        }
        Command::Coherence { r0 } => {
            let propagated = propagated_bloch(config, r0, 0.0, &grid)?;
            let body = grid
                .iter()
                .zip(propagated)
                .map(|(&t, r)| {
                    let closed = rates.closed_form_bloch(r0, t)?;
                    Ok(vec![
                        t.into(),
                        closed[0].hypot(closed[1]).into(),
                        r[0].hypot(r[1]).into(),
                    ])
                })
                .collect::<Result<_, Error>>()?;
            table(vec!["t", "C", "C_propagated"], body)
        }
        Command::Qfi { r0, omega } => {
            let setup = PhaseEstimationSetup::new(*omega, rates.clone()).with_initial(QubitState::from_bloch(*r0)?);
            let body = rows(&grid, |t| {
                let fisher = qfi_covariant(&setup, t)?;
                let bound = match cramer_rao(fisher) {
                    Ok(v) => v,
                    Err(Error::ZeroInformation { .. }) => f64::INFINITY,
                    Err(e) => return Err(e),
                };
                Ok(vec![t.into(), fisher.into(), bound.into()])
            })?;
            table(vec!["t", "F", "cramer_rao"], body)
        }
        Command::Spectrum { s_max, points } => {
            let body = rows(&linear_grid(0.0, *s_max, *points), |s| {
                let moduli = f_matrix(&enm_channel_from_modulus((-s).exp())).moduli();
                let mut row: Vec<Cell> = vec![s.into()];
                row.extend(moduli.iter().map(|&m| Cell::Num(m)));
                row.push(moduli.iter().product::<f64>().into());
                Ok(row)
            })?;
            table(vec!["s", "lambda1", "lambda2", "lambda3", "lambda4", "product"], body)
        }
        Command::Verify { suite, cases } => {
            let reports = run_suites(*suite, config.seed, *cases);
            let body = reports
                .iter()
                .map(|r| {
                    vec![
                        r.suite.name().into(),
                        r.cases.into(),
                        r.failures.into(),
                        r.worst.into(),
                        if r.passed() { "pass" } else { "fail" }.into(),
                    ]
                })
                .collect();
            table(vec!["suite", "cases", "failures", "worst_violation", "status"], body)
        }
    };
    Ok(t)
}

/// Runs a validated configuration, writing the table to `sink`.
pub fn run(config: &RunConfig, sink: &mut dyn Write) -> Result<(), CliError> {
    config.validate()?;
    let table = build_table(config)?;
    table.write(config.format, sink)?;
    if let Command::Verify { .. } = config.command {
        let failed: Vec<String> = table
            .rows
            .iter()
            .filter(|row| row[4] == Cell::Text("fail".into()))
            .map(|row| match &row[0] {
                Cell::Text(s) => s.clone(),
                other => format!("{other:?}"),
            })
            .collect();
        if !failed.is_empty() {
            return Err(CliError::Verification(failed.join(", ")));
        }
    }
    Ok(())
}
