use num_traits::Float;

use super::TrialOutcome;

/// `â = -ln(N_cc / (c N_S)) / L` with `c` the reference transmission the
/// idler arm would have with an empty sample.
///
/// `None` when there were no coincidences (or no heralds): the log is
/// undefined and the window is discarded.
pub fn estimate_a_heralded(outcome: &TrialOutcome, reference: f64, length: f64) -> Option<f64> {
    if outcome.n_coincidence == 0 || outcome.n_signal == 0 || !(length > 0.0) || !(reference > 0.0) {
        return None;
    }
    let ratio = outcome.n_coincidence as f64 / (reference * outcome.n_signal as f64);
    Some(-Float::ln(ratio) / length)
}

/// `â = -ln((N_I - D̄) / N̄₀) / L` with `D̄` the mean dark count and `N̄₀` the
/// calibrated count with the sample removed.
///
/// `None` when the dark-subtracted count is not positive.
pub fn estimate_a_single_arm(
    outcome: &TrialOutcome,
    calibrated_n0: f64,
    dark_mean: f64,
    length: f64,
) -> Option<f64> {
    let signal = outcome.n_idler as f64 - dark_mean;
    if !(signal > 0.0) || !(calibrated_n0 > 0.0) || !(length > 0.0) {
        return None;
    }
    Some(-Float::ln(signal / calibrated_n0) / length)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heralded(n_signal: u64, n_coincidence: u64) -> TrialOutcome {
        TrialOutcome { n_signal, n_coincidence, n_idler: n_coincidence, ..Default::default() }
    }

    #[test]
    fn heralded_values() {
        let a = estimate_a_heralded(&heralded(1000, 368), 1.0, 1.0).unwrap();
        assert!((a - 0.999_672_340_813_206_1).abs() < 1e-14);
        let a = estimate_a_heralded(&heralded(1000, 500), 0.5, 2.0).unwrap();
        assert_eq!(a, 0.0);
        assert_eq!(estimate_a_heralded(&heralded(1000, 0), 1.0, 1.0), None);
        assert_eq!(estimate_a_heralded(&heralded(0, 0), 1.0, 1.0), None);
    }

    #[test]
    fn single_arm_discards_non_positive_signal() {
        let o = TrialOutcome { n_idler: 10, ..Default::default() };
        assert_eq!(estimate_a_single_arm(&o, 100.0, 10.0, 1.0), None);
        assert_eq!(estimate_a_single_arm(&o, 100.0, 12.5, 1.0), None);
        let a = estimate_a_single_arm(&o, 100.0, 0.0, 1.0).unwrap();
        assert!((a - Float::ln(10.0)).abs() < 1e-15);
    }
}
