use alloc::vec::Vec;

use crate::channel::AbsorbanceChannel;
use crate::error::Result;
use crate::fisher::{estimator_info_dark_a, fisher_a_classical, fisher_a_fock, fisher_a_general_channel};

/// Fixed inputs for the analytic curves drawn over simulated points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlayParams {
    /// Channel whose absorbance or length is swept.
    pub channel: AbsorbanceChannel,
    /// Source Fano factor for the general curves.
    pub fano: f64,
    /// Dark-count variance per window.
    pub dark_var: f64,
    /// Mean incident photons per window.
    pub n0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlayAxis {
    Length,
    Absorbance,
}

/// Information per incident photon, in `a`, at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlayPoint {
    pub x: f64,
    pub classical: f64,
    pub fock: f64,
    pub general: f64,
    pub general_with_dark: f64,
}

pub fn theory_overlay(params: &OverlayParams, axis: OverlayAxis, xs: &[f64]) -> Result<Vec<OverlayPoint>> {
    xs.iter()
        .map(|&x| {
            let ch = match axis {
                OverlayAxis::Length => params.channel.with_length(x)?,
                OverlayAxis::Absorbance => params.channel.with_absorbance(x)?,
            };
            Ok(OverlayPoint {
                x,
                classical: fisher_a_classical(&ch),
                fock: fisher_a_fock(&ch)?,
                general: fisher_a_general_channel(&ch, params.fano)?,
                general_with_dark: estimator_info_dark_a(&ch, params.fano, params.dark_var, params.n0)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_reduce_without_dark_counts() {
        let params = OverlayParams {
            channel: AbsorbanceChannel::lossless(1.0, 1.0).unwrap(),
            fano: 1.0,
            dark_var: 0.0,
            n0: 1e4,
        };
        let pts = theory_overlay(&params, OverlayAxis::Length, &[0.5, 1.0, 2.0]).unwrap();
        for p in &pts {
            assert!((p.general - p.classical).abs() < 1e-14 * p.classical);
            assert!((p.general_with_dark - p.classical).abs() < 1e-14 * p.classical);
            assert!(p.fock > p.classical);
        }
        let dark = OverlayParams { dark_var: 1e4, ..params };
        let pts = theory_overlay(&dark, OverlayAxis::Absorbance, &[0.5, 1.0]).unwrap();
        assert!(pts.iter().all(|p| p.general_with_dark < p.general));
    }
}
