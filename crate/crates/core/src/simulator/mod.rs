//! Monte Carlo photon-counting experiments.
//!
//! Two experiments are modelled, both repeated over many counting windows:
//!
//! - heralded pairs: signal heralds `N_S ~ Poisson`, the idler arm thins
//!   them to coincidences `N_cc ~ Binomial(N_S, η)`; this is the Fock
//!   strategy.
//! - single arm: the idler alone, an arbitrary-statistics source thinned by
//!   the channel with detector dark counts added on top.
//!
//! Each window draws from its own ChaCha8 stream keyed by `(seed, window)`,
//! so results do not depend on evaluation order and windows can be run in
//! parallel. Within a window the photon source is always sampled before the
//! transmission-dependent draws, so sweeps over `L` with one seed reuse the
//! same input photons and stay coupled.

mod estimators;
mod grouping;
mod overlay;

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::AbsorbanceChannel;
use crate::error::{Error, Result};
use crate::fisher::{estimator_info_dark_a, fisher_a_fock, fisher_a_general_channel};
use crate::photon_stats::{poisson_quantile, sample_dark_counts, sample_input, thin};
use crate::photon_stats::{DetectorModel, PhotonSource};

pub use estimators::{estimate_a_heralded, estimate_a_single_arm};
pub use grouping::{group_fisher_estimate, FisherEstimate};
pub use overlay::{theory_overlay, OverlayAxis, OverlayParams, OverlayPoint};

pub const DEFAULT_WINDOWS: usize = 500;
pub const DEFAULT_GROUP_SIZE: usize = 100;

/// Counts registered in one window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialOutcome {
    /// Heralds `N_S` (zero for single-arm runs).
    pub n_signal: u64,
    /// Coincidences `N_cc ≤ N_S` (zero for single-arm runs).
    pub n_coincidence: u64,
    /// Idler detector counts `N_I`, dark counts included.
    pub n_idler: u64,
    /// Dark counts realised in this window.
    pub n_dark: u64,
    pub discarded: bool,
}

/// One simulated window and the absorbance estimate it produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowRecord {
    pub outcome: TrialOutcome,
    pub estimate: Option<f64>,
}

/// How the heralded estimator normalises the coincidence ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InstrumentalConvention {
    /// Divide by the arm's full instrumental transmission `γ² e^{-βL}`;
    /// asymptotically unbiased.
    #[default]
    Total,
    /// Divide by `γ` alone, as the estimator is usually written. Biased by
    /// `ln γ / L` when `γ < 1`.
    LiteralGamma,
}

/// A repeatable counting experiment.
pub trait Experiment {
    fn validate(&self) -> Result<()>;
    fn n_windows(&self) -> usize;
    fn group_size(&self) -> usize;
    /// `N̄₀`, mean incident photons per window used to normalise information.
    fn incident_photons(&self) -> f64;
    fn simulate_window(&self, index: usize) -> WindowRecord;
    /// Analytic information per incident photon the run should reproduce.
    fn theory_info(&self) -> Result<f64>;
}

/// Independent random stream for one window.
pub fn window_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn check_protocol(n_windows: usize, group_size: usize) -> Result<()> {
    if group_size < 2 {
        return Err(Error::InvalidConfig {
            reason: format!("group_size = {group_size}; a sample variance needs at least 2"),
        });
    }
    if n_windows == 0 || n_windows % group_size != 0 {
        return Err(Error::InvalidConfig {
            reason: format!("n_windows = {n_windows} is not a positive multiple of group_size = {group_size}"),
        });
    }
    Ok(())
}

fn check_length(ch: &AbsorbanceChannel) -> Result<()> {
    if ch.length() > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig {
            reason: format!("length = {}; estimators divide by L, so it must be > 0", ch.length()),
        })
    }
}

/// Heralded pair-photon experiment (Fock strategy).
#[derive(Debug, Clone, PartialEq)]
pub struct HeraldedExperimentConfig {
    pub channel: AbsorbanceChannel,
    /// Heralds per second.
    pub herald_rate: f64,
    /// Counting window, seconds.
    pub window: f64,
    pub n_windows: usize,
    pub group_size: usize,
    pub seed: u64,
    pub convention: InstrumentalConvention,
}

impl HeraldedExperimentConfig {
    /// 500 windows in groups of 100, seed 0, unbiased estimator convention.
    pub fn new(channel: AbsorbanceChannel, herald_rate: f64, window: f64) -> Self {
        HeraldedExperimentConfig {
            channel,
            herald_rate,
            window,
            n_windows: DEFAULT_WINDOWS,
            group_size: DEFAULT_GROUP_SIZE,
            seed: 0,
            convention: InstrumentalConvention::Total,
        }
    }

    /// Mean heralds per window.
    pub fn mean_heralds(&self) -> f64 {
        self.herald_rate * self.window
    }

    /// Reference transmission the estimator divides by.
    pub fn estimator_reference(&self) -> f64 {
        match self.convention {
            InstrumentalConvention::Total => self.channel.instrumental_transmission(),
            InstrumentalConvention::LiteralGamma => self.channel.gamma(),
        }
    }
}

impl Experiment for HeraldedExperimentConfig {
    fn validate(&self) -> Result<()> {
        check_protocol(self.n_windows, self.group_size)?;
        check_length(&self.channel)?;
        if !(self.window.is_finite() && self.window > 0.0) {
            return Err(Error::InvalidConfig {
                reason: format!("window = {}; must be > 0 seconds", self.window),
            });
        }
        if !(self.herald_rate.is_finite() && self.herald_rate > 0.0) || self.mean_heralds() < 1.0 {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "herald_rate * window = {}; need at least one expected herald per window",
                    self.mean_heralds()
                ),
            });
        }
        Ok(())
    }

    fn n_windows(&self) -> usize {
        self.n_windows
    }

    fn group_size(&self) -> usize {
        self.group_size
    }

    fn incident_photons(&self) -> f64 {
        self.mean_heralds()
    }

    fn simulate_window(&self, index: usize) -> WindowRecord {
        let mut rng = window_rng(self.seed, index);
        let n_signal = poisson_quantile(self.mean_heralds(), rng.random());
        let n_coincidence = thin(n_signal, self.channel.total_transmission(), &mut rng);
        let mut outcome = TrialOutcome {
            n_signal,
            n_coincidence,
            n_idler: n_coincidence,
            n_dark: 0,
            discarded: false,
        };
        let estimate =
            estimate_a_heralded(&outcome, self.estimator_reference(), self.channel.length());
        outcome.discarded = estimate.is_none();
        WindowRecord { outcome, estimate }
    }

    fn theory_info(&self) -> Result<f64> {
        fisher_a_fock(&self.channel)
    }
}

/// Single-arm experiment: the source alone, with detector dark counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleArmExperimentConfig {
    pub channel: AbsorbanceChannel,
    /// Photons per window entering the channel, Fano factor at that point.
    pub source: PhotonSource,
    pub detector: DetectorModel,
    /// Mean detected count with the sample removed. `None` uses the exact
    /// value `N̄₀ γ² e^{-βL}`.
    pub calibrated_n0: Option<f64>,
    pub n_windows: usize,
    pub group_size: usize,
    pub seed: u64,
}

impl SingleArmExperimentConfig {
    pub fn new(channel: AbsorbanceChannel, source: PhotonSource, detector: DetectorModel) -> Self {
        SingleArmExperimentConfig {
            channel,
            source,
            detector,
            calibrated_n0: None,
            n_windows: DEFAULT_WINDOWS,
            group_size: DEFAULT_GROUP_SIZE,
            seed: 0,
        }
    }

    pub fn calibrated_n0(&self) -> f64 {
        self.calibrated_n0.unwrap_or_else(|| {
            self.source.mean_photons() * self.channel.instrumental_transmission()
        })
    }

    /// The dark-free prediction, which over-estimates what the dark-count
    /// corrected estimator can reach.
    pub fn dark_free_info(&self) -> Result<f64> {
        fisher_a_general_channel(&self.channel, self.source.fano())
    }
}

impl Experiment for SingleArmExperimentConfig {
    fn validate(&self) -> Result<()> {
        check_protocol(self.n_windows, self.group_size)?;
        check_length(&self.channel)?;
        let n0 = self.calibrated_n0();
        if !(n0.is_finite() && n0 > 0.0) {
            return Err(Error::InvalidConfig {
                reason: format!("calibrated_n0 = {n0}; must be > 0"),
            });
        }
        Ok(())
    }

    fn n_windows(&self) -> usize {
        self.n_windows
    }

    fn group_size(&self) -> usize {
        self.group_size
    }

    fn incident_photons(&self) -> f64 {
        self.source.mean_photons()
    }

    fn simulate_window(&self, index: usize) -> WindowRecord {
        let mut rng = window_rng(self.seed, index);
        let n_input = sample_input(&self.source, &mut rng);
        let transmitted = thin(n_input, self.channel.total_transmission(), &mut rng);
        let n_dark = sample_dark_counts(&self.detector, &mut rng);
        let mut outcome = TrialOutcome {
            n_signal: 0,
            n_coincidence: 0,
            n_idler: transmitted + n_dark,
            n_dark,
            discarded: false,
        };
        let estimate = estimate_a_single_arm(
            &outcome,
            self.calibrated_n0(),
            self.detector.dark_mean(),
            self.channel.length(),
        );
        outcome.discarded = estimate.is_none();
        WindowRecord { outcome, estimate }
    }

    fn theory_info(&self) -> Result<f64> {
        estimator_info_dark_a(
            &self.channel,
            self.source.fano(),
            self.detector.dark_var(),
            self.source.mean_photons(),
        )
    }
}

/// Outcomes and estimates of a run, indexed by window.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimulationRun {
    pub outcomes: Vec<TrialOutcome>,
    pub estimates: Vec<Option<f64>>,
}

impl SimulationRun {
    pub fn discard_count(&self) -> usize {
        self.estimates.iter().filter(|e| e.is_none()).count()
    }

    pub fn reported_count(&self) -> usize {
        self.estimates.len() - self.discard_count()
    }

    pub fn surviving_estimates(&self) -> impl Iterator<Item = f64> + '_ {
        self.estimates.iter().flatten().copied()
    }
}

impl FromIterator<WindowRecord> for SimulationRun {
    fn from_iter<I: IntoIterator<Item = WindowRecord>>(iter: I) -> Self {
        let mut run = SimulationRun::default();
        for rec in iter {
            run.outcomes.push(rec.outcome);
            run.estimates.push(rec.estimate);
        }
        run
    }
}

/// Runs every window in index order.
pub fn run<E: Experiment + ?Sized>(exp: &E) -> Result<SimulationRun> {
    exp.validate()?;
    Ok((0..exp.n_windows()).map(|i| exp.simulate_window(i)).collect())
}

pub fn run_heralded(cfg: &HeraldedExperimentConfig) -> Result<SimulationRun> {
    run(cfg)
}

pub fn run_single_arm(cfg: &SingleArmExperimentConfig) -> Result<SimulationRun> {
    run(cfg)
}

/// Grouped Fisher estimate for a finished run of `exp`.
pub fn measure<E: Experiment + ?Sized>(exp: &E, run: &SimulationRun) -> Result<FisherEstimate> {
    group_fisher_estimate(&run.estimates, exp.group_size(), exp.incident_photons())
}
