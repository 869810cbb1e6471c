mod curves;
mod optimal;
mod simulate;
mod w;

use std::io::Write;
use std::path::Path;

pub use curves::{curves, CurveFamily};
pub use optimal::optimal;
pub use simulate::{run_sweep, simulate, sweep_tables, LengthResult, SimulationKind, SweepTables};
pub use w::w;

use crate::config::Config;
use crate::error::CliError;
use crate::output::{self, Format, Table};

/// Writes one table to `path` or stdout.
fn emit(cfg: &Config, what: &str, table: &Table, path: Option<&Path>, format: Format) -> Result<(), CliError> {
    let mut out = output::open(path)?;
    output::write(&mut out, format, what, &cfg.echo_lines(), table)?;
    out.flush()?;
    Ok(())
}
