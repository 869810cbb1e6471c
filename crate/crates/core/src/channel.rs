//! Beer-Lambert loss channel with instrumental losses.
//!
//! Light crosses an entrance facet (transmission `γ`), a path of length `L`
//! that holds both the sample (absorbance `a`) and a co-propagating absorber
//! (`β`), then an exit facet (`γ` again). Lengths are unit-agnostic: `a` and
//! `β` carry the inverse unit of `L`.

#[allow(unused_imports)] // inherent methods shadow it when std is linked
use num_traits::Float;

use crate::error::{ensure, Result};

/// Sample absorbance plus the known instrumental losses around it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorbanceChannel {
    absorbance: f64,
    length: f64,
    beta: f64,
    gamma: f64,
}

/// The three transmissions of a channel; `total = sample · instrumental`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transmissions {
    pub sample: f64,
    pub instrumental: f64,
    pub total: f64,
}

impl AbsorbanceChannel {
    /// `a ≥ 0`, `L ≥ 0`, `β ≥ 0` and per-facet `γ ∈ (0, 1]`, all finite.
    pub fn new(absorbance: f64, length: f64, beta: f64, gamma: f64) -> Result<Self> {
        ensure(
            absorbance.is_finite() && absorbance >= 0.0,
            "absorbance",
            absorbance,
            "a finite value >= 0",
        )?;
        ensure(
            length.is_finite() && length >= 0.0,
            "length",
            length,
            "a finite value >= 0",
        )?;
        ensure(
            beta.is_finite() && beta >= 0.0,
            "beta",
            beta,
            "a finite value >= 0",
        )?;
        ensure(gamma > 0.0 && gamma <= 1.0, "gamma", gamma, "a value in (0, 1]")?;
        Ok(AbsorbanceChannel {
            absorbance,
            length,
            beta,
            gamma,
        })
    }

    /// Sample only: no facet or co-propagating loss.
    pub fn lossless(absorbance: f64, length: f64) -> Result<Self> {
        Self::new(absorbance, length, 0.0, 1.0)
    }

    pub fn absorbance(&self) -> f64 {
        self.absorbance
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Facet loss applied twice, `γ²`.
    pub fn facet_transmission(&self) -> f64 {
        self.gamma * self.gamma
    }

    pub fn with_length(&self, length: f64) -> Result<Self> {
        Self::new(self.absorbance, length, self.beta, self.gamma)
    }

    pub fn with_absorbance(&self, absorbance: f64) -> Result<Self> {
        Self::new(absorbance, self.length, self.beta, self.gamma)
    }

    pub fn sample_transmission(&self) -> f64 {
        (-self.absorbance * self.length).exp()
    }

    /// `η_l = γ² e^{-βL}`.
    pub fn instrumental_transmission(&self) -> f64 {
        self.facet_transmission() * (-self.beta * self.length).exp()
    }

    pub fn total_transmission(&self) -> f64 {
        self.sample_transmission() * self.instrumental_transmission()
    }

    pub fn transmissions(&self) -> Transmissions {
        let sample = self.sample_transmission();
        let instrumental = self.instrumental_transmission();
        Transmissions {
            sample,
            instrumental,
            total: sample * instrumental,
        }
    }
}

/// Moves information on the sample transmission `η = e^{-aL}` to information
/// on the absorbance: `(∂η/∂a)² 𝓕(η) = L² e^{-2aL} 𝓕(η)`.
pub fn reparametrize_fisher(f_eta: f64, absorbance: f64, length: f64) -> f64 {
    length * length * (-2.0 * absorbance * length).exp() * f_eta
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn lossless_channel_transmits_everything() {
        let t = AbsorbanceChannel::new(0.0, 5.0, 0.0, 1.0)
            .unwrap()
            .transmissions();
        assert_eq!((t.sample, t.instrumental, t.total), (1.0, 1.0, 1.0));
    }

    #[test]
    fn facet_loss_only() {
        let t = AbsorbanceChannel::new(1.0, 0.0, 0.0, 0.62)
            .unwrap()
            .transmissions();
        assert_eq!(t.sample, 1.0);
        assert!(close(t.instrumental, 0.3844, 1e-15));
        assert!(close(t.total, 0.3844, 1e-15));
    }

    #[test]
    fn unit_absorbance_length() {
        let t = AbsorbanceChannel::lossless(1.0, 1.0).unwrap().transmissions();
        assert!(close(t.sample, 0.367_879_441_171_442_3, 1e-15));
        assert_eq!(t.instrumental, 1.0);
        assert_eq!(t.total, t.sample);
    }

    #[test]
    fn reparametrization_examples() {
        assert_eq!(reparametrize_fisher(1.0, 0.0, 1.0), 1.0);
        assert!(close(reparametrize_fisher(1.0, 1.0, 1.0), 0.135_335_283_236_612_7, 1e-15));
        assert!(close(reparametrize_fisher(2.0, 0.5, 2.0), 1.082_682_265_892_901_6, 1e-15));
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(AbsorbanceChannel::new(-1.0, 1.0, 0.0, 1.0).is_err());
        assert!(AbsorbanceChannel::new(1.0, -1.0, 0.0, 1.0).is_err());
        assert!(AbsorbanceChannel::new(1.0, 1.0, -0.1, 1.0).is_err());
        assert!(AbsorbanceChannel::new(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(AbsorbanceChannel::new(1.0, 1.0, 0.0, 1.1).is_err());
        assert!(AbsorbanceChannel::new(f64::NAN, 1.0, 0.0, 1.0).is_err());
        assert!(AbsorbanceChannel::new(1.0, f64::INFINITY, 0.0, 1.0).is_err());
    }
}
