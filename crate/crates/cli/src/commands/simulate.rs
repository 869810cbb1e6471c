use std::path::Path;

use absorbance_core::fisher::{fisher_a_classical, fisher_a_fock};
use absorbance_core::simulator::{measure, Experiment, FisherEstimate, SimulationRun};
use clap::ValueEnum;

use super::emit;
use crate::config::Config;
use crate::error::CliError;
use crate::output::{self, Cell, Format, Table};
use crate::parallel::run_parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimulationKind {
    /// Pair source, coincidences over heralds.
    Heralded,
    /// Idler arm alone with dark counts.
    SingleArm,
}

impl SimulationKind {
    fn label(self) -> &'static str {
        match self {
            SimulationKind::Heralded => "heralded",
            SimulationKind::SingleArm => "single-arm",
        }
    }
}

/// Result of one length of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthResult {
    pub length: f64,
    pub run: SimulationRun,
    pub fisher: FisherEstimate,
    pub theory: f64,
    /// Extra analytic columns, in `SweepTables::summary` column order.
    pub bounds: Vec<f64>,
}

/// The three tables a simulation writes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTables {
    pub summary: Table,
    pub groups: Table,
    pub windows: Table,
}

fn run_one<E: Experiment + Sync>(exp: &E, length: f64, bounds: Vec<f64>) -> Result<LengthResult, CliError> {
    let run = run_parallel(exp).map_err(|e| CliError::at("L", length, e))?;
    let fisher = measure(exp, &run).map_err(|e| CliError::at("L", length, e))?;
    let theory = exp.theory_info().map_err(|e| CliError::at("L", length, e))?;
    Ok(LengthResult { length, run, fisher, theory, bounds })
}

pub fn run_sweep(cfg: &Config, kind: SimulationKind) -> Result<Vec<LengthResult>, CliError> {
    cfg.sweep_lengths()?
        .into_iter()
        .map(|l| {
            let ch = cfg.channel_at(l)?;
            let at = |e| CliError::at("L", l, e);
            let classical = fisher_a_classical(&ch);
            let fock = fisher_a_fock(&ch).map_err(at)?;
            match kind {
                SimulationKind::Heralded => run_one(&cfg.heralded_at(l)?, l, vec![classical, fock]),
                SimulationKind::SingleArm => {
                    let exp = cfg.single_arm_at(l)?;
                    let dark_free = exp.dark_free_info().map_err(at)?;
                    run_one(&exp, l, vec![classical, fock, dark_free])
                }
            }
        })
        .collect()
}

pub fn sweep_tables(kind: SimulationKind, results: &[LengthResult]) -> SweepTables {
    let mut columns = vec![
        "L",
        "info_per_photon",
        "std_error",
        "theory",
        "z_score",
        "mean_estimate",
        "reported",
        "discarded",
        "groups",
        "classical_bound",
        "fock_bound",
    ];
    if kind == SimulationKind::SingleArm {
        columns.push("dark_free");
    }
    let mut summary = Table::new(&columns);
    let mut groups = Table::new(&["L", "group", "info_per_photon"]);
    let mut windows = Table::new(&[
        "L",
        "window",
        "n_signal",
        "n_coincidence",
        "n_idler",
        "n_dark",
        "discarded",
        "estimate",
    ]);
    for r in results {
        let f = &r.fisher;
        let reported = r.run.reported_count();
        let mean = r.run.surviving_estimates().sum::<f64>() / reported as f64;
        let mut row: Vec<Cell> = vec![
            r.length.into(),
            f.info_per_photon.into(),
            f.std_error.into(),
            r.theory.into(),
            ((f.info_per_photon - r.theory) / f.std_error).into(),
            mean.into(),
            reported.into(),
            r.run.discard_count().into(),
            f.n_groups().into(),
        ];
        row.extend(r.bounds.iter().map(|&b| Cell::from(b)));
        summary.push(row);
        for (g, v) in f.group_values.iter().enumerate() {
            groups.push(vec![r.length.into(), g.into(), (*v).into()]);
        }
        for (i, (o, e)) in r.run.outcomes.iter().zip(&r.run.estimates).enumerate() {
            windows.push(vec![
                r.length.into(),
                i.into(),
                o.n_signal.into(),
                o.n_coincidence.into(),
                o.n_idler.into(),
                o.n_dark.into(),
                (o.discarded as u64).into(),
                e.map_or(Cell::Text(String::new()), Cell::Float),
            ]);
        }
    }
    SweepTables { summary, groups, windows }
}

/// Runs the sweep and writes the summary to `out` (or stdout). With `out`
/// set, per-group and per-window tables go to `<out>.groups.csv` and
/// `<out>.windows.csv`. A one-line comparison per length goes to stderr.
pub fn simulate(cfg: &Config, kind: SimulationKind, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let results = run_sweep(cfg, kind)?;
    let tables = sweep_tables(kind, &results);
    let what = format!("simulate {}", kind.label());
    if let Some(path) = out {
        emit(cfg, &format!("{what} groups"), &tables.groups, Some(&output::sibling(path, "groups")), format)?;
        emit(cfg, &format!("{what} windows"), &tables.windows, Some(&output::sibling(path, "windows")), format)?;
    }
    emit(cfg, &what, &tables.summary, out, format)?;
    for r in &results {
        let f = &r.fisher;
        eprintln!(
            "L = {}: measured {:.6e} ± {:.2e}, theory {:.6e} ({:+.2} SE), {} of {} windows discarded",
            r.length,
            f.info_per_photon,
            f.std_error,
            r.theory,
            (f.info_per_photon - r.theory) / f.std_error,
            r.run.discard_count(),
            r.run.estimates.len()
        );
    }
    Ok(())
}
