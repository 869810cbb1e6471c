//! Measured photon-number distributions: two columns `n p` per line,
//! separated by whitespace or a comma. `#` starts a comment. Missing `n`
//! between listed values have probability zero.

use std::path::Path;

use absorbance_core::photon_stats::Pmf;

use crate::error::CliError;

pub fn parse_pmf(text: &str, name: &str) -> Result<Pmf, CliError> {
    let mut probs: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| CliError::config(format!("{name}:{}: {what}: '{raw}'", i + 1));
        let cols: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        if cols.len() != 2 {
            return Err(bad("expected two columns `n p`"));
        }
        let n: usize = cols[0].parse().map_err(|_| bad("photon number is not a non-negative integer"))?;
        let p: f64 = cols[1].parse().map_err(|_| bad("probability is not a number"))?;
        if n >= probs.len() {
            probs.resize(n + 1, 0.0);
        } else if probs[n] != 0.0 {
            return Err(bad("photon number listed twice"));
        }
        probs[n] = p;
    }
    Pmf::normalized(probs).map_err(|e| CliError::config(format!("{name}: {e}")))
}

pub fn load_pmf(path: &Path) -> Result<Pmf, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    parse_pmf(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sparse_columns() {
        let pmf = parse_pmf("# n p\n0 0.25\n2, 0.75 # two photons\n", "t").unwrap();
        assert_eq!(pmf.probs(), &[0.25, 0.0, 0.75]);
        assert_eq!(pmf.mean(), 1.5);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_pmf("0 0.5\n1 0.6\n", "t").is_err());
        assert!(parse_pmf("0 0.5 1\n", "t").is_err());
        assert!(parse_pmf("-1 1.0\n", "t").is_err());
        assert!(parse_pmf("0 0.5\n0 0.5\n", "t").is_err());
        assert!(parse_pmf("", "t").is_err());
        let err = parse_pmf("0 1.0\nx 0\n", "f.txt").unwrap_err().to_string();
        assert!(err.contains("f.txt:2"), "{err}");
    }
}
