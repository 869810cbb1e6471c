//! Command-line front end for `absorbance-core`: analytic curves, optimal
//! operating points, Monte Carlo runs and a Lambert W utility, all writing
//! reproducible CSV.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parallel;
pub mod pmf_file;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{CurveFamily, SimulationKind};
use crate::config::{Config, GridSection, Origin, Scale};
use crate::error::CliError;
use crate::output::{Format, OUT_DIR_ENV};

#[derive(Debug, Parser)]
#[command(name = "absorbance", version, about = "Fisher-information bounds and Monte Carlo for photon-counting absorbance estimation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat TOML config, or a CSV previously written by this tool.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Override one config key, e.g. --set channel.gamma=0.62 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Directory that relative --out paths are resolved against.
    #[arg(long, global = true, env = OUT_DIR_ENV, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    /// Random seed; overrides run.seed.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    /// Sweep grid; overrides the command's default grid.
    #[arg(long, global = true, value_name = "START:STOP:POINTS", allow_hyphen_values = true)]
    pub grid: Option<String>,

    /// Space --grid points logarithmically.
    #[arg(long, global = true)]
    pub log: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic information curves: classical, Fock and their ratio.
    Curves {
        #[arg(value_enum)]
        kind: CurveFamily,
    },
    /// Optimal lengths, transmissions and the advantage at the optimum.
    Optimal,
    /// Monte Carlo counting experiment over one or more lengths.
    Simulate {
        #[arg(value_enum)]
        kind: SimulationKind,
    },
    /// Principal-branch Lambert W.
    W {
        #[arg(allow_hyphen_values = true)]
        x: f64,
    },
}

impl Cli {
    /// Loads the config and applies command-line overrides.
    pub fn resolve_config(&self) -> Result<Config, CliError> {
        let (mut cfg, origin) = match &self.config {
            Some(path) => Config::load(path)?,
            None => (Config::default(), Origin::default()),
        };
        for assignment in &self.set {
            cfg.set(assignment)?;
        }
        if let Some(seed) = self.seed {
            cfg.run.seed = seed;
        }
        if let Some(spec) = &self.grid {
            cfg.grid = Some(GridSection::parse(spec, if self.log { Scale::Log } else { Scale::Linear })?);
        } else if self.log {
            return Err(CliError::config("--log needs --grid"));
        }
        cfg.validate(&origin)?;
        Ok(cfg)
    }

    pub fn out_path(&self) -> Option<PathBuf> {
        self.out.as_deref().map(|p| output::resolve_out(p, self.out_dir.as_deref()))
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.resolve_config()?;
    let out = cli.out_path();
    match &cli.command {
        Command::Curves { kind } => commands::curves(&cfg, *kind, out.as_deref(), cli.format),
        Command::Optimal => commands::optimal(&cfg, out.as_deref(), cli.format),
        Command::Simulate { kind } => commands::simulate(&cfg, *kind, out.as_deref(), cli.format),
        Command::W { x } => commands::w(&cfg, *x, out.as_deref(), cli.format),
    }
}
