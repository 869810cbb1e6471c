//! Run configuration: a flat TOML file with dotted section keys.
//!
//! ```toml
//! channel.absorbance = 1.0
//! channel.gamma = 0.62
//! source.kind = "overdispersed"
//! source.fano = 826.0
//! run.lengths = [0.5, 1.0, 2.0]
//! ```
//!
//! Table headers (`[channel]`) work too. Every key has a default, unknown
//! keys are rejected, and the resolved config echoes back as `key = value`
//! lines that load to the same value.

use std::fmt;
use std::path::{Path, PathBuf};

use absorbance_core::channel::AbsorbanceChannel;
use absorbance_core::figures::CurveParams;
use absorbance_core::photon_stats::{DetectorModel, PhotonSource};
use absorbance_core::simulator::{
    HeraldedExperimentConfig, InstrumentalConvention, SingleArmExperimentConfig,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::pmf_file::load_pmf;

/// First line of every CSV the tool writes; marks an echoed config.
pub const ECHO_MARKER: &str = "# absorbance";

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub channel: ChannelSection,
    pub multipass: MultipassSection,
    pub source: SourceSection,
    pub detector: DetectorSection,
    pub herald: HeraldSection,
    pub run: RunSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub absorbance: f64,
    pub length: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for ChannelSection {
    fn default() -> Self {
        ChannelSection { absorbance: 1.0, length: 1.0, beta: 0.0, gamma: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MultipassSection {
    pub epsilon: f64,
}

impl Default for MultipassSection {
    fn default() -> Self {
        MultipassSection { epsilon: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceKind {
    #[default]
    Coherent,
    Fock,
    Thermal,
    Overdispersed,
    Empirical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SourceSection {
    pub kind: SourceKind,
    /// Mean photons per window (coherent, thermal, overdispersed).
    pub mean: f64,
    /// Fano factor (overdispersed).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fano: Option<f64>,
    /// Photon number (fock).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub photons: Option<u64>,
    /// Two-column `n p` file (empirical).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pmf_file: Option<String>,
}

impl Default for SourceSection {
    fn default() -> Self {
        SourceSection { kind: SourceKind::Coherent, mean: 7000.0, fano: None, photons: None, pmf_file: None }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorSection {
    /// Mean dark counts per window.
    pub dark_mean: f64,
    /// Dark-count variance per window; defaults to `dark_mean` (Poisson).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dark_var: Option<f64>,
    /// Alternative to `dark_var`, in counts²/s², scaled by `run.window²`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dark_var_rate2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    Total,
    LiteralGamma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeraldSection {
    /// Heralds per second.
    pub rate: f64,
    pub convention: Convention,
}

impl Default for HeraldSection {
    fn default() -> Self {
        HeraldSection { rate: 14_000.0, convention: Convention::Total }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    /// Counting window, seconds.
    pub window: f64,
    pub windows: usize,
    pub group_size: usize,
    pub seed: u64,
    /// Lengths to simulate; defaults to `channel.length`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<f64>>,
    /// Calibrated no-sample count for the single-arm estimator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibrated_n0: Option<f64>,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection { window: 0.5, windows: 500, group_size: 100, seed: 0, lengths: None, calibrated_n0: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl GridSection {
    /// Parses `START:STOP:POINTS`.
    pub fn parse(spec: &str, scale: Scale) -> Result<Self, CliError> {
        let bad = || CliError::config(format!("--grid '{spec}': expected START:STOP:POINTS"));
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let grid = GridSection {
            start: parts[0].trim().parse().map_err(|_| bad())?,
            stop: parts[1].trim().parse().map_err(|_| bad())?,
            points: parts[2].trim().parse().map_err(|_| bad())?,
            scale,
        };
        grid.values()?;
        Ok(grid)
    }

    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let GridSection { start, stop, points, scale } = *self;
        if !(start.is_finite() && stop.is_finite()) || points == 0 || stop < start {
            return Err(CliError::config(format!(
                "invalid grid {start}:{stop}:{points}; need finite start <= stop and points >= 1"
            )));
        }
        if points == 1 || start == stop {
            if points != 1 {
                return Err(CliError::config(format!("grid {start}:{stop}:{points} has zero width")));
            }
            return Ok(vec![start]);
        }
        let step = |i: usize| i as f64 / (points - 1) as f64;
        match scale {
            Scale::Linear => Ok((0..points).map(|i| start + (stop - start) * step(i)).collect()),
            Scale::Log => {
                if start <= 0.0 {
                    return Err(CliError::config(format!("log grid needs start > 0, got {start}")));
                }
                let (a, b) = (start.ln(), stop.ln());
                Ok((0..points).map(|i| (a + (b - a) * step(i)).exp()).collect())
            }
        }
    }
}

/// Where a config came from, for diagnostics and relative paths.
#[derive(Debug, Clone, Default)]
pub struct Origin {
    pub path: Option<PathBuf>,
    pub text: String,
}

impl Origin {
    /// `path:line` of the line that sets `key`, when it can be found.
    fn locate(&self, key: &str) -> String {
        let file = self.path.as_deref().map_or("<config>".to_string(), |p| p.display().to_string());
        match find_key_line(&self.text, key) {
            Some(line) => format!("{file}:{line}"),
            None => file,
        }
    }
}

/// 1-based line of `section.field`, written dotted or under a `[section]` header.
fn find_key_line(text: &str, key: &str) -> Option<usize> {
    let (section, field) = key.split_once('.')?;
    let mut current = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim().trim_start_matches("# ").trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim().to_string();
            continue;
        }
        let Some((lhs, _)) = line.split_once('=') else { continue };
        let lhs: String = lhs.split_whitespace().collect();
        if lhs == key || (current == section && lhs == field) {
            return Some(i + 1);
        }
    }
    None
}

impl Config {
    /// Parses config text; an echoed CSV header is accepted as-is.
    pub fn parse(text: &str, origin_path: Option<&Path>) -> Result<(Self, Origin), CliError> {
        let origin = Origin { path: origin_path.map(Path::to_path_buf), text: text.to_string() };
        let body = if text.starts_with(ECHO_MARKER) { extract_echo(text) } else { text.to_string() };
        let mut cfg: Config = toml::from_str(&body).map_err(|e| {
            let file = origin_path.map_or("<config>".to_string(), |p| p.display().to_string());
            CliError::config(format!("{file}: {e}"))
        })?;
        if let (Some(pmf), Some(dir)) = (&cfg.source.pmf_file, origin_path.and_then(Path::parent)) {
            let p = Path::new(pmf);
            if p.is_relative() {
                cfg.source.pmf_file = Some(dir.join(p).display().to_string());
            }
        }
        cfg.validate(&origin)?;
        Ok((cfg, origin))
    }

    pub fn load(path: &Path) -> Result<(Self, Origin), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        Self::parse(&text, Some(path))
    }

    /// Applies a `section.key=value` override. Physical constraints are
    /// left to [`Config::validate`], so related keys can be set one by one.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("--set '{assignment}': expected KEY=VALUE")))?;
        let mut table = toml::Table::try_from(&*self).expect("config serialises to a table");
        let patch: toml::Table = format!("{} = {}", key.trim(), value.trim())
            .parse()
            .or_else(|_| format!("{} = {:?}", key.trim(), value.trim()).parse())
            .map_err(|e| CliError::config(format!("--set '{assignment}': {e}")))?;
        merge(&mut table, patch);
        *self = table
            .try_into()
            .map_err(|e| CliError::config(format!("--set '{assignment}': {e}")))?;
        Ok(())
    }

    /// Re-checks every physical constraint by building the core types.
    pub fn validate(&self, origin: &Origin) -> Result<(), CliError> {
        let at = |key: &str, e: &dyn fmt::Display| CliError::config(format!("{}: {key}: {e}", origin.locate(key)));
        let ch = &self.channel;
        AbsorbanceChannel::new(ch.absorbance, ch.length, ch.beta, ch.gamma)
            .map_err(|e| at(&format!("channel.{}", param_key(&e)), &e))?;
        let eps = self.multipass.epsilon;
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(at("multipass.epsilon", &format!("{eps} is not a single-pass transmission in (0, 1]")));
        }
        self.photon_source().map_err(|e| at(e.0, &e.1))?;
        self.detector_model().map_err(|e| at(e.0, &e.1))?;
        let h = &self.herald;
        if !(h.rate.is_finite() && h.rate > 0.0) {
            return Err(at("herald.rate", &format!("{} is not a positive rate", h.rate)));
        }
        let r = &self.run;
        if r.group_size < 2 {
            return Err(at("run.group_size", &"must be at least 2"));
        }
        if r.windows == 0 || r.windows % r.group_size != 0 {
            return Err(at("run.windows", &format!("{} is not a positive multiple of run.group_size = {}", r.windows, r.group_size)));
        }
        if let Some(ls) = &r.lengths {
            if ls.is_empty() || ls.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
                return Err(at("run.lengths", &"must be a non-empty list of lengths > 0"));
            }
        }
        if let Some(n0) = r.calibrated_n0 {
            if !(n0.is_finite() && n0 > 0.0) {
                return Err(at("run.calibrated_n0", &format!("{n0} must be > 0")));
            }
        }
        if let Some(g) = &self.grid {
            g.values().map_err(|e| at("grid.points", &e))?;
        }
        Ok(())
    }

    pub fn channel_at(&self, length: f64) -> Result<AbsorbanceChannel, CliError> {
        let ch = &self.channel;
        Ok(AbsorbanceChannel::new(ch.absorbance, length, ch.beta, ch.gamma)?)
    }

    pub fn curve_params(&self) -> CurveParams {
        let ch = &self.channel;
        CurveParams {
            absorbance: ch.absorbance,
            length: ch.length,
            beta: ch.beta,
            gamma: ch.gamma,
            epsilon: self.multipass.epsilon,
        }
    }

    pub fn photon_source(&self) -> Result<PhotonSource, (&'static str, String)> {
        let s = &self.source;
        let err = |key, e: absorbance_core::Error| (key, e.to_string());
        let unused = |key: &'static str, present: bool| {
            if present {
                Err((key, format!("not used by source.kind = {:?}", s.kind)))
            } else {
                Ok(())
            }
        };
        match s.kind {
            SourceKind::Coherent | SourceKind::Thermal => {
                unused("source.fano", s.fano.is_some())?;
                unused("source.photons", s.photons.is_some())?;
                unused("source.pmf_file", s.pmf_file.is_some())?;
                let src = if s.kind == SourceKind::Coherent {
                    PhotonSource::coherent(s.mean)
                } else {
                    PhotonSource::thermal(s.mean)
                };
                src.map_err(|e| err("source.mean", e))
            }
            SourceKind::Overdispersed => {
                unused("source.photons", s.photons.is_some())?;
                unused("source.pmf_file", s.pmf_file.is_some())?;
                let fano = s.fano.ok_or(("source.fano", "required for overdispersed sources".to_string()))?;
                PhotonSource::overdispersed(s.mean, fano).map_err(|e| {
                    let key = if param_key(&e) == "fano" { "source.fano" } else { "source.mean" };
                    err(key, e)
                })
            }
            SourceKind::Fock => {
                unused("source.fano", s.fano.is_some())?;
                unused("source.pmf_file", s.pmf_file.is_some())?;
                let n = s.photons.ok_or(("source.photons", "required for fock sources".to_string()))?;
                Ok(PhotonSource::fock(n))
            }
            SourceKind::Empirical => {
                unused("source.fano", s.fano.is_some())?;
                unused("source.photons", s.photons.is_some())?;
                let path = s.pmf_file.as_deref().ok_or(("source.pmf_file", "required for empirical sources".to_string()))?;
                let pmf = load_pmf(Path::new(path)).map_err(|e| ("source.pmf_file", e.to_string()))?;
                Ok(PhotonSource::empirical(pmf))
            }
        }
    }

    pub fn detector_model(&self) -> Result<DetectorModel, (&'static str, String)> {
        let d = &self.detector;
        let window = self.run.window;
        let built = match (d.dark_var, d.dark_var_rate2) {
            (Some(_), Some(_)) => {
                return Err(("detector.dark_var_rate2", "set either dark_var or dark_var_rate2, not both".to_string()))
            }
            (Some(v), None) => DetectorModel::new(d.dark_mean, v, window),
            (None, Some(v2)) => DetectorModel::with_rate_squared_variance(d.dark_mean, v2, window),
            (None, None) => DetectorModel::poisson(d.dark_mean, window),
        };
        built.map_err(|e| {
            let key = match param_key(&e) {
                "window" => "run.window",
                "dark_mean" => "detector.dark_mean",
                _ if d.dark_var_rate2.is_some() => "detector.dark_var_rate2",
                _ => "detector.dark_var",
            };
            (key, e.to_string())
        })
    }

    /// Lengths to simulate: the grid if any, else `run.lengths`, else the
    /// channel length.
    pub fn sweep_lengths(&self) -> Result<Vec<f64>, CliError> {
        if let Some(g) = &self.grid {
            return g.values();
        }
        Ok(self.run.lengths.clone().unwrap_or_else(|| vec![self.channel.length]))
    }

    pub fn heralded_at(&self, length: f64) -> Result<HeraldedExperimentConfig, CliError> {
        let mut exp = HeraldedExperimentConfig::new(self.channel_at(length)?, self.herald.rate, self.run.window);
        exp.n_windows = self.run.windows;
        exp.group_size = self.run.group_size;
        exp.seed = self.run.seed;
        exp.convention = match self.herald.convention {
            Convention::Total => InstrumentalConvention::Total,
            Convention::LiteralGamma => InstrumentalConvention::LiteralGamma,
        };
        Ok(exp)
    }

    pub fn single_arm_at(&self, length: f64) -> Result<SingleArmExperimentConfig, CliError> {
        let source = self.photon_source().map_err(|(k, e)| CliError::config(format!("{k}: {e}")))?;
        let detector = self.detector_model().map_err(|(k, e)| CliError::config(format!("{k}: {e}")))?;
        let mut exp = SingleArmExperimentConfig::new(self.channel_at(length)?, source, detector);
        exp.calibrated_n0 = self.run.calibrated_n0;
        exp.n_windows = self.run.windows;
        exp.group_size = self.run.group_size;
        exp.seed = self.run.seed;
        Ok(exp)
    }

    /// The resolved config as flat `section.key = value` lines.
    pub fn echo_lines(&self) -> Vec<String> {
        let table = toml::Table::try_from(self).expect("config serialises to a table");
        let mut lines = Vec::new();
        flatten("", &toml::Value::Table(table), &mut lines);
        lines
    }
}

fn param_key(e: &absorbance_core::Error) -> &'static str {
    match e {
        absorbance_core::Error::InvalidParameter { name, .. } => name,
        _ => "",
    }
}

fn flatten(prefix: &str, value: &toml::Value, out: &mut Vec<String>) {
    match value {
        toml::Value::Table(t) => {
            for (k, v) in t {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn merge(base: &mut toml::Table, patch: toml::Table) {
    for (k, v) in patch {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(p)) => merge(b, p),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// The `# key = value` block at the top of an echoed CSV, as TOML text.
fn extract_echo(text: &str) -> String {
    text.lines()
        .skip(1)
        .map_while(|l| l.strip_prefix("# "))
        .filter(|l| l.contains('='))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        let cfg = Config::default();
        cfg.validate(&Origin::default()).unwrap();
        let text = cfg.echo_lines().join("\n");
        assert!(text.contains("channel.absorbance = 1.0"));
        let (back, _) = Config::parse(&text, None).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn dotted_and_table_forms_agree() {
        let dotted = "channel.gamma = 0.62\nrun.lengths = [0.5, 1.0]\n";
        let tables = "[channel]\ngamma = 0.62\n[run]\nlengths = [0.5, 1.0]\n";
        assert_eq!(Config::parse(dotted, None).unwrap().0, Config::parse(tables, None).unwrap().0);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = Config::parse("channel.gama = 0.5\n", None).unwrap_err();
        assert!(err.to_string().contains("gama"), "{err}");
    }

    #[test]
    fn diagnostics_point_at_the_line() {
        let text = "run.seed = 1\n\n[channel]\ngamma = 1.5\n";
        let err = Config::parse(text, Some(Path::new("x.toml"))).unwrap_err().to_string();
        assert!(err.contains("x.toml:4") && err.contains("channel.gamma"), "{err}");
        let err = Config::parse("run.windows = 450\n", None).unwrap_err().to_string();
        assert!(err.contains("<config>:1"), "{err}");
    }

    #[test]
    fn source_keys_must_match_kind() {
        assert!(Config::parse("source.kind = \"overdispersed\"\n", None).is_err());
        assert!(Config::parse("source.kind = \"overdispersed\"\nsource.fano = 826.0\n", None).is_ok());
        assert!(Config::parse("source.fano = 826.0\n", None).is_err());
        assert!(Config::parse("detector.dark_var = 1.0\ndetector.dark_var_rate2 = 1.0\ndetector.dark_mean = 1.0\n", None).is_err());
    }

    #[test]
    fn overrides() {
        let (mut cfg, origin) = Config::parse("", None).unwrap();
        cfg.set("channel.gamma=0.62").unwrap();
        cfg.set("herald.convention=literal-gamma").unwrap();
        assert_eq!(cfg.channel.gamma, 0.62);
        assert_eq!(cfg.herald.convention, Convention::LiteralGamma);
        cfg.set("source.kind=overdispersed").unwrap();
        cfg.set("source.fano=826").unwrap();
        cfg.validate(&origin).unwrap();
        cfg.set("channel.gamma=2").unwrap();
        assert!(cfg.validate(&origin).is_err());
        assert!(cfg.set("channel.nope=2").is_err());
        assert!(cfg.set("run.windows=many").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(GridSection::parse("0:1:3", Scale::Linear).unwrap().values().unwrap(), vec![0.0, 0.5, 1.0]);
        let log = GridSection::parse("0.01:100:5", Scale::Log).unwrap().values().unwrap();
        assert!((log[2] - 1.0).abs() < 1e-14);
        assert!(GridSection::parse("1:0:3", Scale::Linear).is_err());
        assert!(GridSection::parse("0:1", Scale::Linear).is_err());
        assert!(GridSection::parse("0:1:3", Scale::Log).is_err());
        assert!(GridSection::parse("2:2:1", Scale::Linear).is_ok());
    }
}
