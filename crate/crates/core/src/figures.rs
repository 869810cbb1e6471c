//! Analytic curve families: information vs absorbance, length, facet
//! transmission and pass count, with the Fock/coherent ratio alongside.

use alloc::vec::Vec;

use crate::channel::AbsorbanceChannel;
use crate::error::Result;
use crate::fisher::{fisher_a_classical, fisher_a_fock, fisher_multipass_coherent, fisher_multipass_fock};
use crate::optimizer::{optimum, Strategy};

/// One row of a curve: `(x, 𝓕_C, 𝓕_Q, Q = 𝓕_Q/𝓕_C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub classical: f64,
    pub quantum: f64,
    pub advantage: f64,
}

impl CurvePoint {
    fn new(x: f64, classical: f64, quantum: f64) -> Self {
        CurvePoint {
            x,
            classical,
            quantum,
            advantage: quantum / classical,
        }
    }
}

/// Which curve family to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// `x = a` at the channel's fixed length.
    VsAbsorbance,
    /// `x = L` at the channel's fixed absorbance.
    VsLength,
    /// `x = a`, each strategy at its own optimal length.
    AtOptimum,
    /// `x = γ`, each strategy at its own optimal length.
    VsGamma,
    /// `x = i` passes at single-pass transmission `epsilon`.
    Multipass,
}

/// Fixed parameters shared by all curve families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveParams {
    pub absorbance: f64,
    pub length: f64,
    pub beta: f64,
    pub gamma: f64,
    pub epsilon: f64,
}

impl Default for CurveParams {
    fn default() -> Self {
        CurveParams {
            absorbance: 1.0,
            length: 1.0,
            beta: 0.0,
            gamma: 1.0,
            epsilon: 0.5,
        }
    }
}

/// Evaluates one point. Errors carry the offending `x` via the caller.
pub fn curve_point(kind: CurveKind, params: &CurveParams, x: f64) -> Result<CurvePoint> {
    let p = params;
    match kind {
        CurveKind::VsAbsorbance => {
            let ch = AbsorbanceChannel::new(x, p.length, p.beta, p.gamma)?;
            Ok(CurvePoint::new(x, fisher_a_classical(&ch), fisher_a_fock(&ch)?))
        }
        CurveKind::VsLength => {
            let ch = AbsorbanceChannel::new(p.absorbance, x, p.beta, p.gamma)?;
            Ok(CurvePoint::new(x, fisher_a_classical(&ch), fisher_a_fock(&ch)?))
        }
        CurveKind::AtOptimum => {
            let c = optimum(Strategy::Classical, x, p.beta, p.gamma)?;
            let q = optimum(Strategy::Fock, x, p.beta, p.gamma)?;
            Ok(CurvePoint::new(x, c.info_at_optimum, q.info_at_optimum))
        }
        CurveKind::VsGamma => {
            let c = optimum(Strategy::Classical, p.absorbance, p.beta, x)?;
            let q = optimum(Strategy::Fock, p.absorbance, p.beta, x)?;
            Ok(CurvePoint::new(x, c.info_at_optimum, q.info_at_optimum))
        }
        CurveKind::Multipass => Ok(CurvePoint::new(
            x,
            fisher_multipass_coherent(p.epsilon, x)?,
            fisher_multipass_fock(p.epsilon, x)?,
        )),
    }
}

/// Tabulates a curve, stopping at the first point that fails together with
/// its `x`.
pub fn curve(
    kind: CurveKind,
    params: &CurveParams,
    xs: &[f64],
) -> core::result::Result<Vec<CurvePoint>, (f64, crate::Error)> {
    xs.iter()
        .map(|&x| curve_point(kind, params, x).map_err(|e| (x, e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argmax(points: &[CurvePoint], f: impl Fn(&CurvePoint) -> f64) -> f64 {
        points
            .iter()
            .fold((f64::NAN, f64::NEG_INFINITY), |(bx, bv), p| {
                if f(p) > bv {
                    (p.x, f(p))
                } else {
                    (bx, bv)
                }
            })
            .0
    }

    #[test]
    fn length_curve_peaks_at_two_for_classical() {
        let xs: Vec<f64> = (1..=80).map(|i| i as f64 * 0.05).collect();
        let pts = curve(CurveKind::VsLength, &CurveParams::default(), &xs).unwrap();
        assert!((argmax(&pts, |p| p.classical) - 2.0).abs() < 1e-12);
        assert!((argmax(&pts, |p| p.quantum) - 1.6).abs() < 1e-12);
    }

    #[test]
    fn optimum_curve_has_constant_ratio() {
        let xs = [0.1, 0.5, 1.0, 3.0, 10.0];
        let pts = curve(CurveKind::AtOptimum, &CurveParams::default(), &xs).unwrap();
        for p in &pts {
            assert!((p.advantage - 1.196_307_094_506_295_7).abs() < 1e-12);
        }
    }

    #[test]
    fn multipass_curve_optima() {
        let xs: Vec<f64> = (1..=8).map(f64::from).collect();
        let pts = curve(CurveKind::Multipass, &CurveParams::default(), &xs).unwrap();
        assert_eq!(argmax(&pts, |p| p.classical), 3.0);
        assert_eq!(argmax(&pts, |p| p.quantum), 2.0);
    }

    #[test]
    fn errors_carry_x() {
        let (x, err) = curve(CurveKind::VsLength, &CurveParams::default(), &[1.0, -2.0]).unwrap_err();
        assert_eq!(x, -2.0);
        assert!(!err.is_domain());
        let empty = curve(CurveKind::VsLength, &CurveParams::default(), &[]).unwrap();
        assert!(empty.is_empty());
    }
}
