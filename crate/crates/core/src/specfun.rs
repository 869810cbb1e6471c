//! Principal branch of the Lambert W function.
//!
//! Only `W₀` is provided. Every argument the optimal-length formulas produce
//! is `-2γ²/e²` with `γ ∈ (0, 1]` or `2(σ - 1)/e²` with `σ ≥ 0`, all of which
//! lie in `[-2/e², ∞)`, comfortably inside the principal-branch domain
//! `[-1/e, ∞)`. The lower branch `W₋₁` is never needed.

use core::f64::consts::E;

#[allow(unused_imports)] // inherent methods shadow it when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// `-1/e`, the branch point of `W`.
pub const BRANCH_POINT: f64 = -1.0 / E;

const MAX_HALLEY_STEPS: usize = 64;

/// An argument known to lie in the principal-branch domain `x ≥ -1/e`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WDomainValue(f64);

impl WDomainValue {
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::param("x", x, "a finite Lambert W argument"));
        }
        if x < BRANCH_POINT {
            return Err(Error::BelowBranchPoint { x });
        }
        Ok(WDomainValue(x))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for WDomainValue {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        WDomainValue::new(x)
    }
}

/// Principal value `W₀(x)`, the solution `w ≥ -1` of `w·eʷ = x`.
///
/// The starting point comes from the branch-point series near `-1/e`, a
/// rational fit around zero, or the log asymptote for large `x`; Halley's
/// iteration then refines it to rounding level.
pub fn lambert_w0(x: WDomainValue) -> f64 {
    let x = x.get();
    if x == 0.0 {
        return 0.0;
    }
    if x == BRANCH_POINT {
        return -1.0;
    }
    halley(x, initial_guess(x))
}

/// Convenience wrapper that validates the argument first.
pub fn lambert_w0_checked(x: f64) -> Result<f64> {
    WDomainValue::new(x).map(lambert_w0)
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // Series in p = sqrt(2(ex + 1)) about the branch point.
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
    } else if x < 3.0 {
        // Pade-style fit that is exact at 0 and good to a few percent on [-0.25, 3].
        x * (1.0 + 4.0 / 3.0 * x) / (1.0 + x * (7.0 / 3.0 + 5.0 / 6.0 * x))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

fn halley(x: f64, mut w: f64) -> f64 {
    for _ in 0..MAX_HALLEY_STEPS {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        let next = (w - step).max(-1.0);
        if (next - w).abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs()) {
            return next;
        }
        w = next;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: f64) -> f64 {
        lambert_w0_checked(x).unwrap()
    }

    #[test]
    fn exact_points() {
        assert_eq!(w(0.0), 0.0);
        assert!((w(E) - 1.0).abs() < 1e-15);
        assert_eq!(w(BRANCH_POINT), -1.0);
        // frozen from a 300-step bisection on w·e^w = x over [-1, 0]
        assert!((w(-2.0 / (E * E)) - (-0.406_375_739_959_959_9)).abs() < 1e-13);
    }

    #[test]
    fn rejects_below_branch_point() {
        let err = WDomainValue::new(-0.5).unwrap_err();
        assert_eq!(err, Error::BelowBranchPoint { x: -0.5 });
        let msg = alloc::format!("{err}");
        assert!(msg.contains("branch point"), "{msg}");
    }

    #[test]
    fn rejects_non_finite() {
        assert!(WDomainValue::new(f64::NAN).is_err());
        assert!(WDomainValue::new(f64::INFINITY).is_err());
    }

    #[test]
    fn near_branch_point_is_accurate() {
        for k in 1..12 {
            let x = BRANCH_POINT + 10f64.powi(-k);
            let v = w(x);
            assert!(v >= -1.0);
            assert!((v * v.exp() - x).abs() <= 1e-15, "x={x} w={v}");
        }
    }

    #[test]
    fn huge_arguments() {
        for &x in &[1e10, 1e100, 1e300] {
            let v = w(x);
            // compare in log space: ln w + w = ln x
            assert!((v.ln() + v - x.ln()).abs() < 1e-12 * x.ln(), "x={x}");
        }
    }
}
