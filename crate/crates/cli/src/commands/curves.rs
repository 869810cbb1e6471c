use std::path::Path;

use absorbance_core::figures::{curve, CurveKind};
use clap::ValueEnum;

use super::emit;
use crate::config::{Config, GridSection, Scale};
use crate::error::CliError;
use crate::output::{Format, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveFamily {
    /// Information vs absorbance at `channel.length`.
    Fig2a,
    /// Information vs length at `channel.absorbance`.
    Fig2b,
    /// Information vs absorbance, each strategy at its optimal length.
    Fig2c,
    /// Advantage at the optimum vs facet transmission.
    #[value(name = "supB")]
    SupB,
    /// Information vs pass count at `multipass.epsilon`.
    Multipass,
}

impl CurveFamily {
    fn kind(self) -> CurveKind {
        match self {
            CurveFamily::Fig2a => CurveKind::VsAbsorbance,
            CurveFamily::Fig2b => CurveKind::VsLength,
            CurveFamily::Fig2c => CurveKind::AtOptimum,
            CurveFamily::SupB => CurveKind::VsGamma,
            CurveFamily::Multipass => CurveKind::Multipass,
        }
    }

    fn x_name(self) -> &'static str {
        match self {
            CurveFamily::Fig2a | CurveFamily::Fig2c => "a",
            CurveFamily::Fig2b => "L",
            CurveFamily::SupB => "gamma",
            CurveFamily::Multipass => "passes",
        }
    }

    fn default_grid(self) -> GridSection {
        let (start, stop, points, scale) = match self {
            CurveFamily::Fig2a => (0.05, 5.0, 100, Scale::Linear),
            CurveFamily::Fig2b => (0.05, 5.0, 100, Scale::Linear),
            CurveFamily::Fig2c => (0.1, 10.0, 50, Scale::Log),
            CurveFamily::SupB => (0.05, 1.0, 20, Scale::Linear),
            CurveFamily::Multipass => (1.0, 10.0, 10, Scale::Linear),
        };
        GridSection { start, stop, points, scale }
    }

    fn label(self) -> &'static str {
        match self {
            CurveFamily::Fig2a => "fig2a",
            CurveFamily::Fig2b => "fig2b",
            CurveFamily::Fig2c => "fig2c",
            CurveFamily::SupB => "supB",
            CurveFamily::Multipass => "multipass",
        }
    }
}

pub fn curve_table(cfg: &Config, family: CurveFamily) -> Result<Table, CliError> {
    let xs = cfg.grid.clone().unwrap_or_else(|| family.default_grid()).values()?;
    let points = curve(family.kind(), &cfg.curve_params(), &xs).map_err(|(x, e)| CliError::at(family.x_name(), x, e))?;
    let mut table = Table::new(&[family.x_name(), "F_classical", "F_quantum", "Q"]);
    for p in points {
        table.push(vec![p.x.into(), p.classical.into(), p.quantum.into(), p.advantage.into()]);
    }
    Ok(table)
}

pub fn curves(cfg: &Config, family: CurveFamily, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let table = curve_table(cfg, family)?;
    emit(cfg, &format!("curves {}", family.label()), &table, out, format)
}
