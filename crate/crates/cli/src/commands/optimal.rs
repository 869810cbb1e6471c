use std::path::Path;

use absorbance_core::optimizer::{optimum, Strategy};

use super::emit;
use crate::config::Config;
use crate::error::CliError;
use crate::output::{Format, Table};

/// Classical and Fock optima, plus the configured source when its Fano
/// factor is neither 0 nor 1.
pub fn optimal_table(cfg: &Config) -> Result<Table, CliError> {
    let ch = &cfg.channel;
    let fano = cfg.photon_source().map_err(|(k, e)| CliError::config(format!("{k}: {e}")))?.fano();
    let mut strategies = vec![("classical", Strategy::Classical), ("fock", Strategy::Fock)];
    if fano != 0.0 && fano != 1.0 {
        strategies.push(("source", Strategy::General(fano)));
    }
    let classical = optimum(Strategy::Classical, ch.absorbance, ch.beta, ch.gamma)?;
    let mut table = Table::new(&[
        "strategy",
        "fano",
        "optimal_length",
        "optimal_total_transmission",
        "info_at_optimum",
        "advantage",
    ]);
    for (name, s) in strategies {
        let r = optimum(s, ch.absorbance, ch.beta, ch.gamma)?;
        table.push(vec![
            name.into(),
            s.fano().into(),
            r.optimal_length.into(),
            r.optimal_total_transmission.into(),
            r.info_at_optimum.into(),
            (r.info_at_optimum / classical.info_at_optimum).into(),
        ]);
    }
    Ok(table)
}

pub fn optimal(cfg: &Config, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    emit(cfg, "optimal", &optimal_table(cfg)?, out, format)
}
