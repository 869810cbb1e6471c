//! Closed-form Fisher information per mean incident photon.
//!
//! Functions suffixed `_eta` give information on a transmission; the `_a`
//! versions give information on the absorbance. The two are linked by
//! [`reparametrize_fisher`](crate::channel::reparametrize_fisher). Points
//! where the information diverges (a lossless Fock probe, for example) are
//! reported as [`Error::Domain`] instead of infinity.

#[allow(unused_imports)] // inherent methods shadow it when std is linked
use num_traits::Float;

use crate::channel::AbsorbanceChannel;
use crate::error::{ensure, Error, Result};

/// Information per incident photon and the Cramér-Rao bound it implies for
/// a given mean photon budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherReport {
    pub info_per_photon: f64,
    /// `1 / (N̄₀ 𝓕)`; infinite when either factor is zero.
    pub variance_bound: f64,
    pub n0: f64,
}

impl FisherReport {
    pub fn new(info_per_photon: f64, n0: f64) -> Result<Self> {
        ensure(
            info_per_photon.is_finite() && info_per_photon >= 0.0,
            "info_per_photon",
            info_per_photon,
            "a finite value >= 0",
        )?;
        ensure(n0.is_finite() && n0 >= 0.0, "n0", n0, "a finite value >= 0")?;
        Ok(FisherReport {
            info_per_photon,
            variance_bound: 1.0 / (n0 * info_per_photon),
            n0,
        })
    }

    /// Smallest achievable standard deviation of an unbiased estimate.
    pub fn std_error(&self) -> f64 {
        self.variance_bound.sqrt()
    }
}

fn check_transmission(name: &'static str, eta: f64) -> Result<()> {
    ensure(eta >= 0.0 && eta <= 1.0, name, eta, "a transmission in [0, 1]")
}

/// Coherent probe, `η_l / η`.
pub fn fisher_eta_classical(eta: f64, eta_l: f64) -> Result<f64> {
    check_transmission("eta", eta)?;
    check_transmission("eta_l", eta_l)?;
    if eta == 0.0 {
        return Err(Error::domain(
            "information on a zero transmission diverges (1/eta at eta = 0)",
        ));
    }
    ensure(eta_l > 0.0, "eta_l", eta_l, "a transmission in (0, 1]")?;
    Ok(eta_l / eta)
}

/// Fock probe, `η_l / (η (1 - η η_l))`.
pub fn fisher_eta_fock(eta: f64, eta_l: f64) -> Result<f64> {
    check_transmission("eta", eta)?;
    check_transmission("eta_l", eta_l)?;
    ensure(eta_l > 0.0, "eta_l", eta_l, "a transmission in (0, 1]")?;
    if eta == 0.0 {
        return Err(Error::domain(
            "information on a zero transmission diverges (1/eta at eta = 0)",
        ));
    }
    let lost = 1.0 - eta * eta_l;
    if lost <= 0.0 {
        return Err(Error::domain(
            "a Fock probe through a lossless channel is noiseless; information diverges",
        ));
    }
    Ok(eta_l / (eta * lost))
}

/// Arbitrary input statistics with Fano factor `σ`:
/// `1 / (η² σ + η (1 - η))`.
///
/// `eta_total` is the whole transmission seen by the light and `fano` is the
/// Fano factor where that transmission starts. Use
/// [`fano_after_loss`](crate::photon_stats::fano_after_loss) to move `σ`
/// across upstream loss first.
pub fn fisher_eta_general(eta_total: f64, fano: f64) -> Result<f64> {
    check_transmission("eta_total", eta_total)?;
    ensure(fano.is_finite() && fano >= 0.0, "fano", fano, "a finite value >= 0")?;
    let denom = eta_total * eta_total * fano + eta_total * (1.0 - eta_total);
    if denom <= 0.0 {
        return Err(Error::domain(
            "zero output variance (sigma = 0 at eta = 1, or eta = 0); information diverges",
        ));
    }
    Ok(1.0 / denom)
}

/// Coherent probe on the absorbance, `L² γ² e^{-(a+β)L}`. Zero at `L = 0`.
pub fn fisher_a_classical(ch: &AbsorbanceChannel) -> f64 {
    let l = ch.length();
    l * l * ch.facet_transmission() * (-(ch.absorbance() + ch.beta()) * l).exp()
}

/// Fock probe on the absorbance, `L² γ² / (e^{(a+β)L} - γ²)`.
pub fn fisher_a_fock(ch: &AbsorbanceChannel) -> Result<f64> {
    let l = ch.length();
    let g2 = ch.facet_transmission();
    // e^x - γ² written so that γ = 1 keeps full precision for small x
    let denom = ((ch.absorbance() + ch.beta()) * l).exp_m1() + (1.0 - g2);
    if denom <= 0.0 {
        return Err(Error::domain(
            "lossless Fock probing (L = 0 with gamma = 1) has a zero denominator",
        ));
    }
    Ok(l * l * g2 / denom)
}

/// Arbitrary-Fano probe with no instrumental loss, `L² / (σ + e^{aL} - 1)`.
pub fn fisher_a_general(absorbance: f64, length: f64, fano: f64) -> Result<f64> {
    ensure(fano.is_finite() && fano >= 0.0, "fano", fano, "a finite value >= 0")?;
    ensure(
        length.is_finite() && length >= 0.0,
        "length",
        length,
        "a finite value >= 0",
    )?;
    let denom = fano + (absorbance * length).exp_m1();
    if denom <= 0.0 {
        return Err(Error::domain(
            "sigma = 0 with aL = 0 has a zero denominator; information diverges",
        ));
    }
    Ok(length * length / denom)
}

/// Arbitrary-Fano probe through a lossy channel: information on `a` carried
/// by the total transmission, `L² η_t² 𝓕_ψ(η_t)`. With `γ = 1, β = 0` this
/// is [`fisher_a_general`]; `σ = 1` and `σ = 0` recover the coherent and Fock
/// formulas.
pub fn fisher_a_general_channel(ch: &AbsorbanceChannel, fano: f64) -> Result<f64> {
    let eta = ch.total_transmission();
    let l = ch.length();
    Ok(l * l * eta * eta * fisher_eta_general(eta, fano)?)
}

/// Information per incident photon of the dark-count-corrected single-arm
/// estimator `η̂ = (N - N̄_DC)/N̄₀`:
/// `1 / (Var(N_DC)/N̄₀ + η² σ + η (1 - η))`.
///
/// This is the information the estimator attains to first order in the
/// relative count fluctuation, not a proven Fisher bound.
/// `var_dc` and `n0` must refer to the same counting window.
pub fn estimator_info_dark(eta_total: f64, fano: f64, var_dc: f64, n0: f64) -> Result<f64> {
    check_transmission("eta_total", eta_total)?;
    ensure(fano.is_finite() && fano >= 0.0, "fano", fano, "a finite value >= 0")?;
    ensure(
        var_dc.is_finite() && var_dc >= 0.0,
        "var_dc",
        var_dc,
        "a finite value >= 0",
    )?;
    ensure(n0 > 0.0, "n0", n0, "a value > 0")?;
    let denom =
        var_dc / n0 + eta_total * eta_total * fano + eta_total * (1.0 - eta_total);
    if denom <= 0.0 {
        return Err(Error::domain(
            "estimator variance is zero; information diverges",
        ));
    }
    Ok(1.0 / denom)
}

/// Single-arm estimator information on the absorbance through a lossy
/// channel, `L² η_t² I(η_t)`.
pub fn estimator_info_dark_a(
    ch: &AbsorbanceChannel,
    fano: f64,
    var_dc: f64,
    n0: f64,
) -> Result<f64> {
    let eta = ch.total_transmission();
    let l = ch.length();
    Ok(l * l * eta * eta * estimator_info_dark(eta, fano, var_dc, n0)?)
}

/// Renormalises to information per absorbed photon, `𝓕 / (1 - η)`.
pub fn fisher_per_absorbed_photon(f: f64, eta_total: f64) -> Result<f64> {
    ensure(
        (0.0..=1.0).contains(&eta_total),
        "eta_total",
        eta_total,
        "a transmission in [0, 1)",
    )?;
    if eta_total == 1.0 {
        return Err(Error::domain(
            "no photons are absorbed at eta = 1; per-absorbed-photon information is undefined",
        ));
    }
    Ok(f / (1.0 - eta_total))
}

fn check_passes(epsilon: f64, passes: f64) -> Result<()> {
    ensure(
        epsilon > 0.0 && epsilon <= 1.0,
        "epsilon",
        epsilon,
        "a single-pass transmission in (0, 1]",
    )?;
    ensure(
        passes.is_finite() && passes >= 1.0,
        "passes",
        passes,
        "a pass count >= 1",
    )
}

/// Coherent probe through `i` passes of a sample with single-pass
/// transmission `ε`: `i² ε^{i-2}`. Real `i` is allowed for plotting.
pub fn fisher_multipass_coherent(epsilon: f64, passes: f64) -> Result<f64> {
    check_passes(epsilon, passes)?;
    Ok(passes * passes * epsilon.powf(passes - 2.0))
}

/// Fock probe through `i` passes: `i² ε^{i-2} / (1 - εⁱ)`.
pub fn fisher_multipass_fock(epsilon: f64, passes: f64) -> Result<f64> {
    check_passes(epsilon, passes)?;
    // 1 - ε^i = -expm1(i ln ε)
    let lost = -(passes * epsilon.ln()).exp_m1();
    if lost <= 0.0 {
        return Err(Error::domain(
            "a Fock probe through a lossless sample is noiseless; information diverges",
        ));
    }
    Ok(passes * passes * epsilon.powf(passes - 2.0) / lost)
}

/// Multipass probe with Fano factor `σ`: `i² ε^{i-2} / (εⁱ σ + 1 - εⁱ)`.
/// Reduces to the coherent and Fock forms at `σ = 1` and `σ = 0`.
pub fn fisher_multipass_general(epsilon: f64, passes: f64, fano: f64) -> Result<f64> {
    check_passes(epsilon, passes)?;
    ensure(fano.is_finite() && fano >= 0.0, "fano", fano, "a finite value >= 0")?;
    let total = epsilon.powf(passes);
    let denom = total * fano - (passes * epsilon.ln()).exp_m1();
    if denom <= 0.0 {
        return Err(Error::domain(
            "zero output variance (sigma = 0 through a lossless sample); information diverges",
        ));
    }
    Ok(passes * passes * epsilon.powf(passes - 2.0) / denom)
}
