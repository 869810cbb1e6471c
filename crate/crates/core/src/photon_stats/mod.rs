//! Photon-number statistics, binomial thinning and dark counts.
//!
//! A linear loss channel acts on photon-number distributions by binomial
//! thinning: each photon survives independently with probability `η`. The
//! output of an input with mean `N̄₀` and variance `V₀` therefore has mean
//! `η N̄₀` and variance `η² V₀ + η(1-η) N̄₀`, whatever the input family.

mod sampling;

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

#[allow(unused_imports)] // inherent methods shadow it when std is linked
use num_traits::Float;

use crate::error::{ensure, Error, Result};

pub use sampling::{
    binomial_quantile, geometric_quantile, poisson_quantile, sample_dark_counts, sample_input,
    thin,
};

/// Largest support for exact pmf enumeration.
pub const MAX_EXACT_SUPPORT: usize = 1001;

/// Probability mass function over photon numbers `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
    mean: f64,
    variance: f64,
}

impl Pmf {
    /// Accepts probabilities that already sum to one within `1e-12`.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probs, 1e-12)
    }

    /// Accepts sums within `1e-9` of one and renormalises; anything worse is
    /// rejected. This is the entry point for measured distributions.
    pub fn normalized(probs: Vec<f64>) -> Result<Self> {
        let mut pmf = Self::with_tolerance(probs, 1e-9)?;
        let total: f64 = pmf.probs.iter().sum();
        for p in &mut pmf.probs {
            *p /= total;
        }
        let (mean, variance) = moments(&pmf.probs);
        pmf.mean = mean;
        pmf.variance = variance;
        Ok(pmf)
    }

    fn with_tolerance(probs: Vec<f64>, tol: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidPmf {
                reason: String::from("empty probability vector"),
            });
        }
        if let Some((n, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && **p >= 0.0))
        {
            return Err(Error::InvalidPmf {
                reason: format!("P({n}) = {p} is not a finite non-negative probability"),
            });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidPmf {
                reason: format!("probabilities sum to {total}, not 1 within {tol:e}"),
            });
        }
        let (mean, variance) = moments(&probs);
        Ok(Pmf {
            probs,
            mean,
            variance,
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }
}

fn moments(probs: &[f64]) -> (f64, f64) {
    let mean: f64 = probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
    let variance = probs
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let d = n as f64 - mean;
            d * d * p
        })
        .sum();
    (mean, variance)
}

/// Input photon-number statistics.
#[derive(Debug, Clone, PartialEq)]
pub enum PhotonSource {
    /// Exactly `n` photons, `σ = 0`.
    Fock(u64),
    /// Poissonian light, `σ = 1`.
    Coherent(f64),
    /// Single-mode thermal (Bose-Einstein) light, `σ = 1 + N̄₀`.
    Thermal(f64),
    /// An explicit distribution.
    Empirical(Pmf),
    /// Only mean and Fano factor are known. `σ = 1` is sampled as Poisson,
    /// `σ > 1` as a negative binomial with the same two moments.
    OverdispersedByFano { mean: f64, fano: f64 },
}

impl PhotonSource {
    pub fn fock(n: u64) -> Self {
        PhotonSource::Fock(n)
    }

    pub fn coherent(mean: f64) -> Result<Self> {
        ensure(mean.is_finite() && mean >= 0.0, "mean", mean, "a finite value >= 0")?;
        Ok(PhotonSource::Coherent(mean))
    }

    pub fn thermal(mean: f64) -> Result<Self> {
        ensure(mean.is_finite() && mean >= 0.0, "mean", mean, "a finite value >= 0")?;
        Ok(PhotonSource::Thermal(mean))
    }

    pub fn empirical(pmf: Pmf) -> Self {
        PhotonSource::Empirical(pmf)
    }

    /// Sub-Poissonian light has to be given as `Fock` or `Empirical`.
    pub fn overdispersed(mean: f64, fano: f64) -> Result<Self> {
        ensure(mean.is_finite() && mean > 0.0, "mean", mean, "a finite value > 0")?;
        ensure(
            fano.is_finite() && fano >= 1.0,
            "fano",
            fano,
            "a Fano factor >= 1 (use Fock or Empirical sources below 1)",
        )?;
        Ok(PhotonSource::OverdispersedByFano { mean, fano })
    }

    pub fn mean_photons(&self) -> f64 {
        match self {
            PhotonSource::Fock(n) => *n as f64,
            PhotonSource::Coherent(m) | PhotonSource::Thermal(m) => *m,
            PhotonSource::Empirical(p) => p.mean(),
            PhotonSource::OverdispersedByFano { mean, .. } => *mean,
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            PhotonSource::Fock(_) => 0.0,
            PhotonSource::Coherent(m) => *m,
            PhotonSource::Thermal(m) => m * (1.0 + m),
            PhotonSource::Empirical(p) => p.variance(),
            PhotonSource::OverdispersedByFano { mean, fano } => mean * fano,
        }
    }

    /// `Var(N₀) / N̄₀`; the limiting value for a zero-mean source.
    pub fn fano(&self) -> f64 {
        match self {
            PhotonSource::Fock(_) => 0.0,
            PhotonSource::Coherent(_) => 1.0,
            PhotonSource::Thermal(m) => 1.0 + m,
            PhotonSource::Empirical(p) if p.mean() > 0.0 => p.variance() / p.mean(),
            PhotonSource::Empirical(_) => 0.0,
            PhotonSource::OverdispersedByFano { fano, .. } => *fano,
        }
    }
}

/// Mean and variance after thinning by `η`.
pub fn thinned_moments(source: &PhotonSource, eta: f64) -> Result<(f64, f64)> {
    ensure((0.0..=1.0).contains(&eta), "eta", eta, "a transmission in [0, 1]")?;
    let mean = source.mean_photons();
    Ok((
        eta * mean,
        eta * eta * source.variance() + eta * (1.0 - eta) * mean,
    ))
}

/// Exact compound distribution `Σ X(N₀) B(N | N₀, η)` of a thinned pmf.
pub fn thinned_pmf(pmf: &Pmf, eta: f64) -> Result<Pmf> {
    ensure((0.0..=1.0).contains(&eta), "eta", eta, "a transmission in [0, 1]")?;
    let len = pmf.probs().len();
    if len > MAX_EXACT_SUPPORT {
        return Err(Error::InvalidPmf {
            reason: format!("support {len} exceeds the exact-enumeration limit {MAX_EXACT_SUPPORT}"),
        });
    }
    let mut out = alloc::vec![0.0; len];
    for (n0, &weight) in pmf.probs().iter().enumerate() {
        if weight == 0.0 {
            continue;
        }
        for (k, b) in binomial_row(n0 as u64, eta).into_iter().enumerate() {
            out[k] += weight * b;
        }
    }
    let (mean, variance) = moments(&out);
    Ok(Pmf {
        probs: out,
        mean,
        variance,
    })
}

/// `B(k | n, p)` for `k = 0..=n`, built by ratio recurrences out of the mode
/// and normalised, which avoids both underflow and log-gamma round-off.
pub(crate) fn binomial_row(n: u64, p: f64) -> Vec<f64> {
    let len = n as usize + 1;
    let mut row = alloc::vec![0.0; len];
    if p <= 0.0 {
        row[0] = 1.0;
        return row;
    }
    if p >= 1.0 {
        row[len - 1] = 1.0;
        return row;
    }
    let q = 1.0 - p;
    let mode = (((n + 1) as f64 * p).floor() as u64).min(n) as usize;
    row[mode] = 1.0;
    for k in (1..=mode).rev() {
        row[k - 1] = row[k] * (k as f64 / (n as f64 - k as f64 + 1.0)) * (q / p);
    }
    for k in mode..len - 1 {
        row[k + 1] = row[k] * ((n as f64 - k as f64) / (k as f64 + 1.0)) * (p / q);
    }
    let total: f64 = row.iter().sum();
    for b in &mut row {
        *b /= total;
    }
    row
}

/// Fano factor measured after a loss `η_l`, from the one before it:
/// `η_l σ₀ + (1 - η_l)`.
pub fn fano_after_loss(sigma0: f64, eta_l: f64) -> Result<f64> {
    ensure(sigma0.is_finite() && sigma0 >= 0.0, "sigma0", sigma0, "a finite value >= 0")?;
    ensure((0.0..=1.0).contains(&eta_l), "eta_l", eta_l, "a transmission in [0, 1]")?;
    Ok(eta_l * sigma0 + (1.0 - eta_l))
}

/// Inverse of [`fano_after_loss`]: `σ₀ = (σ + η_l - 1) / η_l`.
pub fn fano_before_loss(sigma_after: f64, eta_l: f64) -> Result<f64> {
    ensure(
        sigma_after.is_finite() && sigma_after >= 0.0,
        "sigma_after",
        sigma_after,
        "a finite value >= 0",
    )?;
    ensure(eta_l > 0.0 && eta_l <= 1.0, "eta_l", eta_l, "a transmission in (0, 1]")?;
    let sigma0 = (sigma_after + eta_l - 1.0) / eta_l;
    if sigma0 < 0.0 {
        return Err(Error::domain(
            "measured Fano factor is below 1 - eta_l; no non-negative input Fano factor fits",
        ));
    }
    Ok(sigma0)
}

/// Dark-count statistics for one counting window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorModel {
    dark_mean: f64,
    dark_var: f64,
    window: f64,
}

impl DetectorModel {
    /// Mean and variance are per window of `window` seconds.
    pub fn new(dark_mean: f64, dark_var: f64, window: f64) -> Result<Self> {
        ensure(
            dark_mean.is_finite() && dark_mean >= 0.0,
            "dark_mean",
            dark_mean,
            "a finite value >= 0",
        )?;
        ensure(
            dark_var.is_finite() && dark_var >= 0.0,
            "dark_var",
            dark_var,
            "a finite value >= 0",
        )?;
        ensure(window.is_finite() && window > 0.0, "window", window, "a duration > 0")?;
        // non-negative counts with zero mean are identically zero
        ensure(
            dark_mean > 0.0 || dark_var == 0.0,
            "dark_var",
            dark_var,
            "0 when dark_mean is 0",
        )?;
        Ok(DetectorModel {
            dark_mean,
            dark_var,
            window,
        })
    }

    /// Poissonian dark counts, variance equal to the mean.
    pub fn poisson(dark_mean: f64, window: f64) -> Result<Self> {
        Self::new(dark_mean, dark_mean, window)
    }

    /// A detector with no dark counts.
    pub fn ideal(window: f64) -> Result<Self> {
        Self::new(0.0, 0.0, window)
    }

    /// Variance quoted as a rate-squared figure (counts²/s²), converted to a
    /// per-window variance by multiplying with `window²`.
    pub fn with_rate_squared_variance(dark_mean: f64, var_per_s2: f64, window: f64) -> Result<Self> {
        ensure(window.is_finite() && window > 0.0, "window", window, "a duration > 0")?;
        Self::new(dark_mean, var_per_s2 * window * window, window)
    }

    pub fn dark_mean(&self) -> f64 {
        self.dark_mean
    }

    pub fn dark_var(&self) -> f64 {
        self.dark_var
    }

    pub fn window(&self) -> f64 {
        self.window
    }
}
