//! CSV and aligned-table writers.
//!
//! CSV floats carry 17 significant digits so values survive a text round
//! trip. Each CSV starts with `# absorbance <what>` and the resolved config
//! as `# key = value` lines, then a header row.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use crate::config::ECHO_MARKER;

/// Default for `--out-dir`; relative `--out` paths are resolved against it.
pub const OUT_DIR_ENV: &str = "ABSORBANCE_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.6}"),
            other => other.csv(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn write_csv(out: &mut dyn Write, what: &str, echo: &[String], table: &Table) -> Result<(), csv::Error> {
    writeln!(out, "{ECHO_MARKER} {what}")?;
    for line in echo {
        writeln!(out, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_table(out: &mut dyn Write, what: &str, table: &Table) -> io::Result<()> {
    let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(Cell::human).collect()).collect();
    let widths: Vec<usize> = table
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    writeln!(out, "{what}")?;
    let line = |out: &mut dyn Write, items: &[String]| -> io::Result<()> {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end())
    };
    line(out, &table.columns)?;
    for row in &cells {
        line(out, row)?;
    }
    Ok(())
}

pub fn write(out: &mut dyn Write, format: Format, what: &str, echo: &[String], table: &Table) -> Result<(), csv::Error> {
    match format {
        Format::Csv => write_csv(out, what, echo, table),
        Format::Table => Ok(write_table(out, what, table)?),
    }
}

/// `path` itself if absolute, else joined onto `out_dir` when given.
pub fn resolve_out(path: &Path, out_dir: Option<&Path>) -> PathBuf {
    match out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

/// Opens `path` (already resolved) or stdout.
pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Ok(Box::new(BufWriter::new(File::create(p)?)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

/// `dir/name.csv` -> `dir/name.<suffix>.csv`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = path.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.{suffix}.{ext}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["x", "y"]);
        t.push(vec![0.1.into(), 3u64.into()]);
        let mut buf = Vec::new();
        write_csv(&mut buf, "test", &["a.b = 1.0".into()], &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# absorbance test\n# a.b = 1.0\nx,y\n1.0000000000000001e-1,3\n");
        let back: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(&["x", "long_name"]);
        t.push(vec![1.5.into(), "fock".into()]);
        let mut buf = Vec::new();
        write_table(&mut buf, "t", &t).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t\n       x  long_name\n1.500000       fock\n");
    }

    #[test]
    fn sibling_names() {
        assert_eq!(sibling(Path::new("out/run.csv"), "windows"), Path::new("out/run.windows.csv"));
        assert_eq!(sibling(Path::new("run"), "groups"), Path::new("run.groups.csv"));
    }
}
