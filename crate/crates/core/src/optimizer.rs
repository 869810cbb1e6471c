//! Optimal sample lengths, pass counts and the quantum advantage at the optimum.
//!
//! Every optimum here is closed form. Maximising `L² / (σ - 1 + e^{(a+β)L}/γ²)`
//! over `L` gives `(a+β) L = 2 + W₀(2γ²(σ-1)/e²)`; the coherent (`σ = 1`) and
//! Fock (`σ = 0`) lengths are the two special cases. Because the optimum fixes
//! the product `(a+β) L`, the optimal total transmission is the same for every
//! absorbance.

use alloc::vec::Vec;
use core::f64::consts::E;

#[allow(unused_imports)] // inherent methods shadow it when std is linked
use num_traits::Float;

use crate::channel::AbsorbanceChannel;
use crate::error::{ensure, Error, Result};
use crate::fisher::{
    fisher_a_classical, fisher_a_fock, fisher_a_general_channel, fisher_multipass_coherent,
    fisher_multipass_fock, fisher_multipass_general,
};
use crate::specfun::lambert_w0_checked;

/// Probe statistics an optimum is computed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    /// Coherent light, `σ = 1`.
    Classical,
    /// Fock states, `σ = 0`.
    Fock,
    /// Arbitrary Fano factor at the channel input.
    General(f64),
}

impl Strategy {
    pub fn fano(&self) -> f64 {
        match *self {
            Strategy::Classical => 1.0,
            Strategy::Fock => 0.0,
            Strategy::General(sigma) => sigma,
        }
    }
}

/// An optimal operating point for one strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumReport {
    pub strategy: Strategy,
    pub optimal_length: f64,
    pub optimal_total_transmission: f64,
    pub info_at_optimum: f64,
}

/// Continuous and integer optimum of a multipass strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassOptimum {
    pub strategy: Strategy,
    pub continuous: f64,
    pub discrete: u32,
    /// `ε^{i_cont}`; e⁻² for coherent light and ≈ 0.2032 for Fock states.
    pub continuous_total_transmission: f64,
    pub info_at_discrete: f64,
}

fn extinction(absorbance: f64, beta: f64) -> Result<f64> {
    ensure(
        absorbance.is_finite() && absorbance >= 0.0,
        "absorbance",
        absorbance,
        "a finite value >= 0",
    )?;
    ensure(beta.is_finite() && beta >= 0.0, "beta", beta, "a finite value >= 0")?;
    let k = absorbance + beta;
    if k <= 0.0 {
        return Err(Error::domain(
            "a + beta = 0: information grows without bound in L, no finite optimum",
        ));
    }
    Ok(k)
}

/// Optimal value of `(a+β) L` for Fano factor `σ` and facet transmission `γ`.
fn optimal_optical_depth(gamma: f64, fano: f64) -> Result<f64> {
    ensure(gamma > 0.0 && gamma <= 1.0, "gamma", gamma, "a value in (0, 1]")?;
    ensure(fano.is_finite() && fano >= 0.0, "fano", fano, "a finite value >= 0")?;
    if fano == 1.0 {
        return Ok(2.0);
    }
    let arg = 2.0 * gamma * gamma * (fano - 1.0) / (E * E);
    Ok(2.0 + lambert_w0_checked(arg)?)
}

/// `2 / (a + β)`, independent of `γ`.
pub fn optimal_length_classical(absorbance: f64, beta: f64) -> Result<f64> {
    Ok(2.0 / extinction(absorbance, beta)?)
}

/// `(W₀(-2γ²/e²) + 2) / (a + β)`.
pub fn optimal_length_fock(absorbance: f64, beta: f64, gamma: f64) -> Result<f64> {
    let k = extinction(absorbance, beta)?;
    Ok(optimal_optical_depth(gamma, 0.0)? / k)
}

/// `(W₀(2(σ-1)/e²) + 2) / a` for a probe with Fano factor `σ` and no
/// instrumental loss.
pub fn optimal_length_general(absorbance: f64, fano: f64) -> Result<f64> {
    optimal_length_general_channel(absorbance, 0.0, 1.0, fano)
}

/// Arbitrary Fano factor through facet loss `γ` and co-propagating loss `β`:
/// `(W₀(2γ²(σ-1)/e²) + 2) / (a + β)`.
pub fn optimal_length_general_channel(
    absorbance: f64,
    beta: f64,
    gamma: f64,
    fano: f64,
) -> Result<f64> {
    let k = extinction(absorbance, beta)?;
    Ok(optimal_optical_depth(gamma, fano)? / k)
}

/// Full report for a strategy at its own optimal length.
pub fn optimum(strategy: Strategy, absorbance: f64, beta: f64, gamma: f64) -> Result<OptimumReport> {
    let length = match strategy {
        Strategy::Classical => optimal_length_classical(absorbance, beta)?,
        Strategy::Fock => optimal_length_fock(absorbance, beta, gamma)?,
        Strategy::General(sigma) => optimal_length_general_channel(absorbance, beta, gamma, sigma)?,
    };
    let ch = AbsorbanceChannel::new(absorbance, length, beta, gamma)?;
    Ok(OptimumReport {
        strategy,
        optimal_length: length,
        optimal_total_transmission: ch.total_transmission(),
        info_at_optimum: info_for(strategy, &ch)?,
    })
}

/// Information on `a` for a strategy at a given channel.
pub fn info_for(strategy: Strategy, ch: &AbsorbanceChannel) -> Result<f64> {
    match strategy {
        Strategy::Classical => Ok(fisher_a_classical(ch)),
        Strategy::Fock => fisher_a_fock(ch),
        Strategy::General(sigma) => fisher_a_general_channel(ch, sigma),
    }
}

/// Ratio of Fock to coherent information at a fixed channel.
pub fn quantum_advantage(ch: &AbsorbanceChannel) -> Result<f64> {
    let classical = fisher_a_classical(ch);
    if classical == 0.0 {
        return Err(Error::domain(
            "coherent information is zero (L = 0); the advantage is undefined",
        ));
    }
    Ok(fisher_a_fock(ch)? / classical)
}

/// Advantage when each strategy runs at its own optimal length.
///
/// Depends only on `γ`: ≈ 1.1963 at `γ = 1`, falling to 1 as `γ → 0`.
pub fn quantum_advantage_at_optimum(absorbance: f64, beta: f64, gamma: f64) -> Result<f64> {
    let classical = optimum(Strategy::Classical, absorbance, beta, gamma)?;
    let fock = optimum(Strategy::Fock, absorbance, beta, gamma)?;
    Ok(fock.info_at_optimum / classical.info_at_optimum)
}

/// [`quantum_advantage_at_optimum`] for each `γ`, as `(γ, Q)` pairs in input order.
pub fn advantage_vs_gamma_sweep(
    absorbance: f64,
    beta: f64,
    gammas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    gammas
        .iter()
        .map(|&g| Ok((g, quantum_advantage_at_optimum(absorbance, beta, g)?)))
        .collect()
}

/// Multipass information for any strategy, real-valued pass count.
pub fn multipass_info(strategy: Strategy, epsilon: f64, passes: f64) -> Result<f64> {
    match strategy {
        Strategy::Classical => fisher_multipass_coherent(epsilon, passes),
        Strategy::Fock => fisher_multipass_fock(epsilon, passes),
        Strategy::General(sigma) => fisher_multipass_general(epsilon, passes, sigma),
    }
}

/// Optimal number of passes through a sample of single-pass transmission `ε`.
///
/// The continuous optimum is `-(2 + W₀(2(σ-1)/e²)) / ln ε`. The discrete
/// optimum is the best integer `i ≥ 1`; the information is unimodal in `i`,
/// so only the two integers around the continuous optimum compete. Exact ties
/// go to fewer passes.
pub fn optimal_passes(epsilon: f64, strategy: Strategy) -> Result<PassOptimum> {
    ensure(
        epsilon > 0.0 && epsilon < 1.0,
        "epsilon",
        epsilon,
        "a single-pass transmission in (0, 1)",
    )?;
    let depth = optimal_optical_depth(1.0, strategy.fano())?;
    let continuous = -depth / epsilon.ln();
    let lo = continuous.floor().max(1.0);
    let hi = continuous.ceil().max(1.0);
    let info_lo = multipass_info(strategy, epsilon, lo)?;
    let (discrete, info_at_discrete) = if hi > lo {
        let info_hi = multipass_info(strategy, epsilon, hi)?;
        if info_hi > info_lo {
            (hi, info_hi)
        } else {
            (lo, info_lo)
        }
    } else {
        (lo, info_lo)
    };
    if discrete > u32::MAX as f64 {
        return Err(Error::domain("optimal pass count exceeds u32 range"));
    }
    Ok(PassOptimum {
        strategy,
        continuous,
        discrete: discrete as u32,
        continuous_total_transmission: (-depth).exp(),
        info_at_discrete,
    })
}
