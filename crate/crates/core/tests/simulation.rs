use std::f64::consts::FRAC_PI_2;

use erasure_exponents::finite::{binary_union_bound, exact_margin_probability, MarginParams};
use erasure_exponents::sim::{
    estimate_exponent, gen_linear_code, hamming_7_4, margin_decode, margin_decode_awgn, simulate_awgn, simulate_bsc,
    simulate_cone_exit, weight_distribution, wilson_interval, Decision, SphericalCodebook, TrialTally, WILSON_Z95,
};
use erasure_exponents::spherical::AwgnChannel;
use erasure_exponents::MarginKind;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// z for a two-sided 99.9% interval.
const Z999: f64 = 3.290_526_731_491_926;

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn tallies_ignore_worker_count() {
    let code = gen_linear_code(15, 5, 9).unwrap();
    let ch = AwgnChannel::new(2.0).unwrap();
    let book = SphericalCodebook::random(16, 12, &ch, 4).unwrap();
    let run = |threads: usize| {
        pool(threads).install(|| {
            (
                simulate_bsc(&code, 0.08, 1, 100_003, 42),
                simulate_awgn(&book, 0.05, 20_000, 42),
                simulate_cone_exit(50, &ch, 0.6, 200_000, 42).unwrap(),
            )
        })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(3));
    assert_ne!(one.0, simulate_bsc(&code, 0.08, 1, 100_003, 43));
}

#[test]
fn bsc_matches_exact_oracle() {
    let code = gen_linear_code(12, 4, 5).unwrap();
    for t in 0..=2 {
        let exact = exact_margin_probability(&code, 0.06, t).unwrap();
        let tally = simulate_bsc(&code, 0.06, t, 400_000, 11 + t as u64);
        for (count, p) in [
            (tally.correct, exact.correct),
            (tally.undetected, exact.undetected),
            (tally.erasure, exact.erasure),
        ] {
            let (lo, hi) = wilson_interval(count, tally.trials, Z999);
            assert!(lo <= p && p <= hi, "t={t}: {p} outside [{lo}, {hi}]");
        }
    }
}

#[test]
fn decoder_agrees_with_exhaustive_classification() {
    let code = hamming_7_4();
    for y in 0u32..128 {
        let d = margin_decode(code.codewords(), y, 0);
        let dist: Vec<u32> = code.codewords().iter().map(|c| (c ^ y).count_ones()).collect();
        let best = *dist.iter().min().unwrap();
        assert!(best <= 1);
        assert_eq!(dist.iter().filter(|&&x| x == best).count(), 1);
        assert!(matches!(d, Decision::Decoded(c) if (c ^ y).count_ones() == best));
        assert_eq!(margin_decode(code.codewords(), y, 2), Decision::Erasure);
    }
}

#[test]
fn noiseless_and_degenerate_channels() {
    let code = gen_linear_code(10, 3, 2).unwrap();
    let t = simulate_bsc(&code, 0.0, 0, 5000, 1);
    assert_eq!((t.correct, t.undetected, t.erasure), (5000, 0, 0));
    let ch = AwgnChannel::new(4.0).unwrap();
    let book = SphericalCodebook::random(8, 20, &ch, 3).unwrap();
    let t = simulate_awgn(&book, FRAC_PI_2, 3000, 1);
    assert_eq!(t.erasure, 3000);
    let strong = AwgnChannel::new(400.0).unwrap();
    let book = SphericalCodebook::random(4, 30, &strong, 3).unwrap();
    let t = simulate_awgn(&book, 0.0, 3000, 1);
    assert_eq!(t.correct, 3000);
}

#[test]
fn codebook_geometry() {
    let ch = AwgnChannel::new(3.0).unwrap();
    let book = SphericalCodebook::random(20, 40, &ch, 8).unwrap();
    assert_eq!(book.len(), 20);
    for x in &book.points {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - (3.0f64 * 40.0).sqrt()).abs() < 1e-9);
    }
    assert_eq!(book, SphericalCodebook::random(20, 40, &ch, 8).unwrap());
    let x = book.points[3].clone();
    assert_eq!(margin_decode_awgn(&book, &x, 0.0), Some(3));
    assert!(SphericalCodebook::random(0, 4, &ch, 1).is_err());
}

#[test]
fn cone_exit_matches_full_dimensional_sampling() {
    let ch = AwgnChannel::new(4.0).unwrap();
    let (n, phi) = (12usize, 0.6);
    let est = simulate_cone_exit(n, &ch, phi, 400_000, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let radius = (4.0 * n as f64).sqrt();
    let trials = 400_000u64;
    let mut exits = 0u64;
    for _ in 0..trials {
        let y: Vec<f64> = (0..n)
            .map(|i| if i == 0 { radius } else { 0.0 } + rng.sample::<f64, _>(StandardNormal))
            .collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (y[0] / norm).acos() > phi {
            exits += 1;
        }
    }
    let (lo, hi) = wilson_interval(exits, trials, Z999);
    let (a, b) = wilson_interval(est.exits, est.trials, Z999);
    assert!(a <= hi && lo <= b, "[{a}, {b}] vs [{lo}, {hi}]");
    assert!(est.ci95.0 <= est.estimate && est.estimate <= est.ci95.1);
}

#[test]
fn cone_exit_rate_decays() {
    let ch = AwgnChannel::new(4.0).unwrap();
    let pts: Vec<(f64, f64)> = [20usize, 40, 60]
        .iter()
        .map(|&n| {
            let e = simulate_cone_exit(n, &ch, 0.55, 2_000_000, 7).unwrap();
            (n as f64, e.estimate)
        })
        .collect();
    let fit = estimate_exponent(&pts).unwrap();
    assert!(fit.slope > 0.0, "{fit:?}");
}

#[test]
fn regression_recovers_exact_exponent() {
    let pts: Vec<(f64, f64)> = [50.0, 100.0, 200.0, 400.0]
        .iter()
        .map(|&n: &f64| (n, 3.0 * (-0.04 * n).exp()))
        .collect();
    let fit = estimate_exponent(&pts).unwrap();
    assert!((fit.slope - 0.04).abs() < 1e-12);
    assert!((fit.intercept + 3.0f64.ln()).abs() < 1e-10);
    assert!((fit.r_squared - 1.0).abs() < 1e-12);
    assert!(estimate_exponent(&pts[..2]).is_err());
    assert!(estimate_exponent(&[(1.0, 0.1), (2.0, 0.0), (3.0, 0.01)]).is_err());
    assert!(estimate_exponent(&[(5.0, 0.1), (5.0, 0.2), (5.0, 0.01)]).is_err());
}

#[test]
fn empirical_rates_below_union_bound() {
    let code = gen_linear_code(15, 5, 21).unwrap();
    let wd = weight_distribution(&code).unwrap();
    for t in 0..=1 {
        let tally = simulate_bsc(&code, 0.05, t, 500_000, 3);
        let m = MarginParams { t, r: None };
        let be = binary_union_bound(&wd, 0.05, m, MarginKind::Error).unwrap().exp();
        let bx = binary_union_bound(&wd, 0.05, m, MarginKind::Erasure).unwrap().exp();
        assert!(tally.undetected_interval(Z999).0 <= be);
        let fail = tally.undetected + tally.erasure;
        assert!(wilson_interval(fail, tally.trials, Z999).0 <= bx);
    }
}

#[test]
fn tally_bookkeeping() {
    let a = TrialTally {
        trials: 10,
        correct: 7,
        undetected: 1,
        erasure: 2,
        seed: 4,
    };
    let b = TrialTally {
        trials: 5,
        correct: 5,
        undetected: 0,
        erasure: 0,
        seed: 4,
    };
    let m = a.merge(b);
    assert_eq!((m.trials, m.correct, m.undetected, m.erasure), (15, 12, 1, 2));
    assert_eq!(m.rate(m.erasure), 2.0 / 15.0);
    let s = m.summary();
    assert!(s.undetected_ci95.0 <= s.undetected_rate && s.undetected_rate <= s.undetected_ci95.1);
    assert_eq!(wilson_interval(0, 100, WILSON_Z95).0, 0.0);
    assert_eq!(wilson_interval(100, 100, WILSON_Z95).1, 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wilson_interval_brackets_estimate(n in 1u64..100_000, frac in 0.0f64..=1.0) {
        let k = ((n as f64) * frac).floor() as u64;
        let (lo, hi) = wilson_interval(k, n, WILSON_Z95);
        let p = k as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
        let (wlo, whi) = wilson_interval(k, n, Z999);
        prop_assert!(wlo <= lo + 1e-15 && hi <= whi + 1e-15);
    }

    #[test]
    fn tally_counts_add_up(seed in 0u64..10_000, trials in 1u64..40_000, t in 0usize..3) {
        let code = hamming_7_4();
        let tally = simulate_bsc(&code, 0.1, t, trials, seed);
        prop_assert_eq!(tally.trials, trials);
        prop_assert_eq!(tally.correct + tally.undetected + tally.erasure, trials);
    }
}
