use absorbance_core::channel::AbsorbanceChannel;
use absorbance_core::optimizer::{
    info_for, multipass_info, optimal_length_general, optimal_passes, optimum, quantum_advantage,
    quantum_advantage_at_optimum, Strategy,
};
use proptest::prelude::{prop_assert, prop_assert_eq, prop_oneof, proptest, Just};
use proptest::strategy::Strategy as _;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn length_for(strategy: Strategy, a: f64, beta: f64, gamma: f64) -> f64 {
    optimum(strategy, a, beta, gamma).unwrap().optimal_length
}

fn info_at(strategy: Strategy, a: f64, beta: f64, gamma: f64, l: f64) -> f64 {
    info_for(strategy, &AbsorbanceChannel::new(a, l, beta, gamma).unwrap()).unwrap()
}

fn strategy() -> impl proptest::strategy::Strategy<Value = Strategy> {
    prop_oneof![
        Just(Strategy::Classical),
        Just(Strategy::Fock),
        (0.0f64..1000.0).prop_map(Strategy::General),
    ]
}

#[test]
fn frozen_values() {
    assert_eq!(length_for(Strategy::Classical, 1.0, 0.0, 1.0), 2.0);
    assert!(rel(length_for(Strategy::Fock, 1.0, 0.0, 1.0), 1.593_624_260_040_040_1) < 1e-14);
    assert!(rel(optimal_length_general(1.0, 826.0).unwrap(), 6.017_796_859_416_48) < 1e-13);
    assert!(rel(quantum_advantage_at_optimum(1.0, 0.0, 1.0).unwrap(), 1.196_307_094_506_295_7) < 1e-13);
    for &(g, q) in &[(0.5, 1.036_354_601_246_718_3), (0.62, 1.058_335_886_857_148), (0.9, 1.144_660_408_235_415_4)] {
        assert!(rel(quantum_advantage_at_optimum(1.0, 0.0, g).unwrap(), q) < 1e-13);
    }
    let p = optimal_passes(0.5, Strategy::Fock).unwrap();
    assert!(rel(p.continuous, 2.299_113_817_000_109_7) < 1e-13);
    let p = optimal_passes(0.5, Strategy::Classical).unwrap();
    assert!(rel(p.continuous, 2.885_390_081_777_927) < 1e-13);
}

#[test]
fn no_optimum_without_loss() {
    assert!(optimum(Strategy::Fock, 0.0, 0.0, 1.0).unwrap_err().is_domain());
    assert!(!optimum(Strategy::Fock, -1.0, 0.0, 1.0).unwrap_err().is_domain());
    assert!(optimal_passes(1.0, Strategy::Fock).is_err());
}

proptest! {
    #[test]
    fn stationary_and_global(
        s in strategy(), a in 0.01f64..10.0, beta in 0.0f64..5.0, gamma in 0.05f64..=1.0,
    ) {
        let l = length_for(s, a, beta, gamma);
        let f = |x: f64| info_at(s, a, beta, gamma, x);
        let h = 1e-5 * l;
        let slope = (f(l + h) - f(l - h)) / (2.0 * h) * l / f(l);
        prop_assert!(slope.abs() < 1e-6, "slope {slope} at L = {l}");
        // no point of a dense grid out to many optical depths beats it
        let best = f(l);
        for i in 1..=400 {
            let x = l * i as f64 / 100.0;
            prop_assert!(f(x) <= best * (1.0 + 1e-12), "L = {x} beats {l}");
        }
    }

    #[test]
    fn only_optical_depth_matters(
        s in strategy(), a in 0.01f64..10.0, beta in 0.0f64..5.0, gamma in 0.05f64..=1.0, k in 0.1f64..10.0,
    ) {
        let l1 = length_for(s, a, beta, gamma);
        let l2 = length_for(s, k * a, k * beta, gamma);
        prop_assert!(rel(l1, k * l2) < 1e-12);
        let t1 = optimum(s, a, beta, gamma).unwrap().optimal_total_transmission;
        let t2 = optimum(s, k * a, k * beta, gamma).unwrap().optimal_total_transmission;
        prop_assert!(rel(t1, t2) < 1e-12);
    }

    #[test]
    fn advantage_depends_only_on_gamma(a in 0.01f64..100.0, beta in 0.0f64..5.0, gamma in 0.01f64..=1.0) {
        let q = quantum_advantage_at_optimum(a, beta, gamma).unwrap();
        let q_ref = quantum_advantage_at_optimum(1.0, 0.0, gamma).unwrap();
        prop_assert!(rel(q, q_ref) < 1e-12);
        prop_assert!(q >= 1.0 && q <= 1.196_307_094_506_296);
    }

    #[test]
    fn fixed_length_advantage_bounded_by_optimum(a in 0.01f64..5.0, l in 0.01f64..5.0) {
        // at a common length Fock beats coherent, and each strategy at its
        // own optimum beats any shared length
        let ch = AbsorbanceChannel::lossless(a, l).unwrap();
        prop_assert!(quantum_advantage(&ch).unwrap() > 1.0);
        let fock_best = optimum(Strategy::Fock, a, 0.0, 1.0).unwrap().info_at_optimum;
        prop_assert!(info_for(Strategy::Fock, &ch).unwrap() <= fock_best * (1.0 + 1e-12));
    }

    #[test]
    fn discrete_passes_match_brute_force(eps in 0.01f64..0.99, s in strategy()) {
        let opt = optimal_passes(eps, s).unwrap();
        let mut best = (1u32, multipass_info(s, eps, 1.0).unwrap());
        for i in 2..=(opt.continuous.ceil() as u32 + 50) {
            let v = multipass_info(s, eps, i as f64).unwrap();
            if v > best.1 {
                best = (i, v);
            }
        }
        prop_assert_eq!(opt.discrete, best.0);
        prop_assert!(rel(opt.info_at_discrete, best.1) < 1e-12);
    }
}
