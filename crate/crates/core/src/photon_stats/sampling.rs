//! Inversion samplers for the counting distributions.
//!
//! Binomial, Poisson and geometric draws invert the CDF with a single
//! uniform. For a fixed uniform the result is non-decreasing in the success
//! probability (or mean), so two runs that share a random stream but differ
//! only in transmission stay monotonically coupled. The CDF is built from
//! unnormalised ratio recurrences around the mode, which keeps the cost at a
//! few dozen standard deviations per draw and needs no log-gamma.

#[allow(unused_imports)] // inherent methods shadow it when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

use super::{DetectorModel, PhotonSource};

/// Terms below this fraction of the running total are treated as zero.
const TAIL_CUTOFF: f64 = 1e-18;

/// Smallest `k` with `P(X ≤ k) ≥ u` for a unimodal lattice distribution
/// given by its mode and the two neighbour ratios `w(k-1)/w(k)` and
/// `w(k+1)/w(k)`.
fn invert_unimodal(
    mode: u64,
    max: u64,
    u: f64,
    down: impl Fn(u64) -> f64,
    up: impl Fn(u64) -> f64,
) -> u64 {
    // mass at and below the mode
    let mut below = 1.0;
    let mut w = 1.0;
    let mut k = mode;
    while k > 0 {
        w *= down(k);
        k -= 1;
        below += w;
        if w < TAIL_CUTOFF * below {
            break;
        }
    }
    let mut total = below;
    let mut w = 1.0;
    let mut k = mode;
    while k < max {
        w *= up(k);
        k += 1;
        total += w;
        if w < TAIL_CUTOFF * total {
            break;
        }
    }

    let target = u * total;
    if target <= below {
        let mut cdf = below;
        let mut w = 1.0;
        let mut k = mode;
        while k > 0 && cdf - w >= target {
            cdf -= w;
            w *= down(k);
            k -= 1;
            if w == 0.0 {
                break;
            }
        }
        k
    } else {
        let mut cdf = below;
        let mut w = 1.0;
        let mut k = mode;
        while cdf < target && k < max {
            w *= up(k);
            k += 1;
            cdf += w;
            if w == 0.0 {
                break;
            }
        }
        k
    }
}

/// Binomial(`n`, `p`) quantile at `u ∈ [0, 1)`.
pub fn binomial_quantile(n: u64, p: f64, u: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    let q = 1.0 - p;
    let odds = p / q;
    let nf = n as f64;
    let mode = (((nf + 1.0) * p).floor() as u64).min(n);
    invert_unimodal(
        mode,
        n,
        u,
        |k| k as f64 / (nf - k as f64 + 1.0) / odds,
        |k| (nf - k as f64) / (k as f64 + 1.0) * odds,
    )
}

/// Poisson(`lambda`) quantile at `u ∈ [0, 1)`.
pub fn poisson_quantile(lambda: f64, u: f64) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    let mode = lambda.floor() as u64;
    invert_unimodal(
        mode,
        u64::MAX,
        u,
        |k| k as f64 / lambda,
        |k| lambda / (k as f64 + 1.0),
    )
}

/// Geometric (Bose-Einstein) quantile with the given mean at `u ∈ [0, 1)`.
pub fn geometric_quantile(mean: f64, u: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    // P(N ≤ k) = 1 - r^{k+1}, r = N̄ / (1 + N̄)
    let ln_r = -(1.0 / mean).ln_1p();
    let k = ((-u).ln_1p() / ln_r).ceil() - 1.0;
    if k <= 0.0 {
        0
    } else if k >= u64::MAX as f64 {
        u64::MAX
    } else {
        k as u64
    }
}

/// Binomial thinning: how many of `n_in` photons survive transmission `eta`.
pub fn thin<R: Rng + ?Sized>(n_in: u64, eta: f64, rng: &mut R) -> u64 {
    binomial_quantile(n_in, eta, rng.random::<f64>())
}

/// Draws an input photon number from a source.
pub fn sample_input<R: Rng + ?Sized>(source: &PhotonSource, rng: &mut R) -> u64 {
    match source {
        PhotonSource::Fock(n) => *n,
        PhotonSource::Coherent(mean) => poisson_quantile(*mean, rng.random()),
        PhotonSource::Thermal(mean) => geometric_quantile(*mean, rng.random()),
        PhotonSource::Empirical(pmf) => {
            let probs = pmf.probs();
            let target = rng.random::<f64>() * probs.iter().sum::<f64>();
            let mut cdf = 0.0;
            for (n, p) in probs.iter().enumerate() {
                cdf += p;
                if cdf > target {
                    return n as u64;
                }
            }
            (probs.len() - 1) as u64
        }
        PhotonSource::OverdispersedByFano { mean, fano } => {
            if *fano <= 1.0 {
                return poisson_quantile(*mean, rng.random());
            }
            // Poisson-gamma mixture: shape r = N̄/(σ-1), scale σ-1
            let excess = fano - 1.0;
            let rate = Gamma::new(mean / excess, excess)
                .expect("shape and scale are positive and finite")
                .sample(rng);
            poisson_quantile(rate, rng.random())
        }
    }
}

/// How dark counts with a given mean and variance are realised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum DarkCountLaw {
    Zero,
    Poisson(f64),
    /// Equal-weight mixture of two Poissons at `mean ± spread`.
    SymmetricMixture { low: f64, high: f64 },
    /// Zero with probability `1 - weight`, otherwise Poisson(`rate`).
    ZeroInflated { weight: f64, rate: f64 },
    /// Under-dispersed counts, approximated by a binomial with exact mean.
    Binomial { trials: u64, p: f64 },
}

impl DarkCountLaw {
    pub(crate) fn for_detector(det: &DetectorModel) -> Self {
        let m = det.dark_mean();
        let v = det.dark_var();
        if m == 0.0 {
            return DarkCountLaw::Zero;
        }
        if v == m {
            return DarkCountLaw::Poisson(m);
        }
        if v > m {
            let excess = v - m;
            if excess <= m * m {
                let spread = excess.sqrt();
                DarkCountLaw::SymmetricMixture {
                    low: m - spread,
                    high: m + spread,
                }
            } else {
                let weight = m * m / (m * m + excess);
                DarkCountLaw::ZeroInflated {
                    weight,
                    rate: m / weight,
                }
            }
        } else {
            // Binomial(n, m/n) has variance m - m²/n; pick the nearest n.
            let exact_n = m * m / (m - v);
            let trials = exact_n.round().max(m.ceil()).max(1.0) as u64;
            DarkCountLaw::Binomial {
                trials,
                p: (m / trials as f64).min(1.0),
            }
        }
    }
}

/// Dark counts in one window. Uses a pure Poisson law when the variance
/// equals the mean and a two-component Poisson mixture with matched mean and
/// variance when it is larger.
pub fn sample_dark_counts<R: Rng + ?Sized>(det: &DetectorModel, rng: &mut R) -> u64 {
    match DarkCountLaw::for_detector(det) {
        DarkCountLaw::Zero => 0,
        DarkCountLaw::Poisson(m) => poisson_quantile(m, rng.random()),
        DarkCountLaw::SymmetricMixture { low, high } => {
            let rate = if rng.random::<bool>() { high } else { low };
            poisson_quantile(rate, rng.random())
        }
        DarkCountLaw::ZeroInflated { weight, rate } => {
            let pick = rng.random::<f64>() < weight;
            let u = rng.random::<f64>();
            if pick {
                poisson_quantile(rate, u)
            } else {
                0
            }
        }
        DarkCountLaw::Binomial { trials, p } => binomial_quantile(trials, p, rng.random()),
    }
}
