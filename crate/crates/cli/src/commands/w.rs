use std::path::Path;

use absorbance_core::specfun::lambert_w0_checked;

use super::emit;
use crate::config::Config;
use crate::error::CliError;
use crate::output::{Format, Table};

pub fn w(cfg: &Config, x: f64, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let value = lambert_w0_checked(x).map_err(|e| CliError::at("x", x, e))?;
    let mut table = Table::new(&["x", "w"]);
    table.push(vec![x.into(), value.into()]);
    emit(cfg, "w", &table, out, format)
}
