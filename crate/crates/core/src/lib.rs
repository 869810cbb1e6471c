//! Precision bounds for Beer-Lambert absorbance estimation.
//!
//! The crate covers the whole chain from a loss model to a simulated
//! measurement:
//!
//! - [`channel`]: sample absorbance plus instrumental losses, and the
//!   Jacobian that moves Fisher information from transmission to absorbance.
//! - [`fisher`]: closed-form information per incident photon for coherent,
//!   Fock and arbitrary-Fano probes, dark-count-limited estimators and
//!   multipass strategies.
//! - [`optimizer`]: optimal sample lengths and pass counts, and the quantum
//!   advantage that survives once both strategies are optimised.
//! - [`photon_stats`]: photon-number sources, binomial thinning and Fano
//!   factor bookkeeping across loss.
//! - [`simulator`]: Monte Carlo heralded and single-arm counting experiments
//!   with the grouped-variance Fisher estimate.
//!
//! The crate is `no_std` and only needs `alloc`; without `std` the
//! transcendental functions fall back to `libm`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channel;
mod error;
pub mod figures;
pub mod fisher;
pub mod optimizer;
pub mod photon_stats;
pub mod simulator;
pub mod specfun;

pub use channel::{AbsorbanceChannel, Transmissions};
pub use error::{Error, Result};
pub use fisher::FisherReport;
pub use optimizer::{OptimumReport, Strategy};
pub use photon_stats::{DetectorModel, PhotonSource};
pub use specfun::{lambert_w0, WDomainValue};
