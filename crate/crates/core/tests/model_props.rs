use igsmac_core::model::{align_phases, pu_rate, pu_rate_aggregate, su_rate, su_rate_raw};
use igsmac_core::{CanonicalScenario, SignalParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rate from the 2x2 real-composite covariances: the primary symbol is proper,
/// interference with power `i` and real complementary variance `j` has
/// per-component variances `(i + j)/2` and `(i - j)/2`.
fn real_composite_rate(p: f64, i: f64, j: f64) -> f64 {
    let noise = [(1.0 + i + j) / 2.0, (1.0 + i - j) / 2.0];
    let total = [noise[0] + p / 2.0, noise[1] + p / 2.0];
    0.5 * ((total[0] * total[1]) / (noise[0] * noise[1])).log2()
}

#[test]
fn determinant_cross_check() {
    assert!((pu_rate_aggregate(100.0, 10.0, 10.0) - real_composite_rate(100.0, 10.0, 10.0)).abs() < 1e-12);
    assert!((pu_rate_aggregate(100.0, 5.0, 2.5) - real_composite_rate(100.0, 5.0, 2.5)).abs() < 1e-12);
}

#[test]
fn maximally_improper_rate_matches_real_channel() {
    // c = 1 leaves one real dimension: 0.5 log2(1 + 2p).
    for p in [0.1, 1.0, 5.0, 40.0] {
        assert!((su_rate_raw(p, 1.0) - 0.5 * (1.0 + 2.0 * p).log2()).abs() < 1e-12);
    }
}

#[test]
fn aligned_phases_are_best() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = CanonicalScenario::new(50.0, vec![0.8, 1.3, 0.4], vec![5.0; 3], 2.0).unwrap();
    let base: Vec<SignalParams> = (0..3).map(|_| SignalParams::new(rng.gen_range(0.0..5.0), rng.gen_range(0.0..1.0))).collect();
    let mut aligned = base.clone();
    align_phases(&mut aligned);
    let best = pu_rate(&s, &aligned).unwrap();
    for _ in 0..1000 {
        let mut trial = base.clone();
        for t in &mut trial {
            t.phase = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        }
        assert!(best >= pu_rate(&s, &trial).unwrap() - 1e-12);
    }
}

#[test]
fn common_phase_minimizes_loss_over_grid() {
    let s = CanonicalScenario::new(50.0, vec![0.8, 1.3], vec![5.0; 2], 2.0).unwrap();
    let mut params = [SignalParams { power: 2.0, circularity: 0.7, phase: 0.3 }, SignalParams { power: 3.0, circularity: 0.5, phase: -1.1 }];
    let before = pu_rate(&s, &params).unwrap();
    let mut best_phi = 0.0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..720 {
        let phi = -std::f64::consts::PI + (i as f64 + 1.0) * std::f64::consts::PI / 360.0;
        let trial = [params[0], SignalParams { phase: phi, ..params[1] }];
        let r = pu_rate(&s, &trial).unwrap();
        if r > best {
            best = r;
            best_phi = phi;
        }
    }
    assert!((best_phi - 0.3f64).abs() < 0.01);
    align_phases(&mut params);
    assert_eq!(params[0].phase, 0.0);
    assert_eq!(params[1].phase, 0.0);
    assert!(pu_rate(&s, &params).unwrap() >= before);
}

proptest! {
    #[test]
    fn su_rate_monotone(p in 0.0f64..100.0, c in 0.0f64..1.0, dp in 1e-3f64..1.0, dc in 1e-3f64..0.2) {
        let r = su_rate(SignalParams::new(p, c)).unwrap();
        prop_assert!(su_rate(SignalParams::new(p + dp, c)).unwrap() > r);
        if p > 0.01 && c + dc <= 1.0 {
            prop_assert!(su_rate(SignalParams::new(p, c + dc)).unwrap() < r);
        }
    }

    #[test]
    fn pu_rate_monotone(p in 1.0f64..200.0, a in 0.1f64..3.0, x in 0.0f64..20.0, c in 0.0f64..1.0, dx in 1e-2f64..2.0, dc in 1e-3f64..0.2) {
        let s = CanonicalScenario::new(p, vec![a], vec![100.0], 0.5).unwrap();
        let r = pu_rate(&s, &[SignalParams::new(x, c)]).unwrap();
        prop_assert!(pu_rate(&s, &[SignalParams::new(x + dx, c)]).unwrap() < r);
        if x > 0.01 && c + dc <= 1.0 {
            prop_assert!(pu_rate(&s, &[SignalParams::new(x, c + dc)]).unwrap() > r);
        }
    }

    #[test]
    fn proper_interference_closed_form(p in 0.0f64..500.0, a in proptest::collection::vec(0.0f64..3.0, 1..5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = a.len();
        let s = CanonicalScenario::new(p, a.clone(), vec![10.0; k], 0.0).unwrap();
        let params: Vec<SignalParams> = (0..k).map(|_| SignalParams::proper(rng.gen_range(0.0..10.0))).collect();
        let i: f64 = a.iter().zip(&params).map(|(a, x)| a * x.power).sum();
        let expect = (1.0 + p / (1.0 + i)).log2();
        prop_assert!((pu_rate(&s, &params).unwrap() - expect).abs() < 1e-12);
    }
}
