use std::f64::consts::{FRAC_PI_2, LN_2};

use approx::assert_abs_diff_eq;
use erasure_exponents::binary::{gallager_exponent, BscChannel};
use erasure_exponents::finite::{
    awgn_union_bound, binary_union_bound, exact_margin_counts, exact_margin_probability, triangle_count, MarginParams,
    WeightDistribution,
};
use erasure_exponents::numerics::{log_sum, LogSum};
use erasure_exponents::sim::{gen_linear_code, hamming_7_4, weight_distribution};
use erasure_exponents::spherical::{esp, f_exponent, AwgnChannel};
use erasure_exponents::MarginKind;
use proptest::prelude::*;

fn h(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

/// The 50 seeded `[n ≤ 16, k ≤ 10]` codes used for the dominance checks.
fn seeded_codes() -> Vec<(usize, usize, u64)> {
    (0..50u64)
        .map(|s| {
            let n = 6 + (s as usize * 7) % 11;
            let k = 1 + (s as usize * 5) % (n - 1).min(10);
            (n, k, 1000 + s)
        })
        .collect()
}

#[test]
fn triangle_count_matches_enumeration() {
    for n in 0..=10usize {
        let mut table = vec![0u128; (n + 1) * (n + 1) * (n + 1)];
        for k in 0..=n {
            let y: u32 = (1u32 << k) - 1;
            for z in 0u32..(1 << n) {
                let i = z.count_ones() as usize;
                let j = (z ^ y).count_ones() as usize;
                table[(k * (n + 1) + i) * (n + 1) + j] += 1;
            }
        }
        for k in 0..=n {
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(
                        triangle_count(n, k, i, j),
                        table[(k * (n + 1) + i) * (n + 1) + j],
                        "n={n} k={k} i={i} j={j}"
                    );
                }
            }
        }
    }
    assert_eq!(triangle_count(5, 2, 1, 1), 2);
    assert_eq!(triangle_count(5, 2, 1, 2), 0);
    for k in 0..=8 {
        assert_eq!(triangle_count(8, k, 0, k), 1);
    }
}

#[test]
fn exact_probabilities_sum_to_one() {
    for (n, k, seed) in seeded_codes() {
        let code = gen_linear_code(n, k, seed).unwrap();
        for p in [0.01, 0.05, 0.1, 0.3] {
            for t in 0..3 {
                let e = exact_margin_probability(&code, p, t).unwrap();
                assert!((e.correct + e.undetected + e.erasure - 1.0).abs() < 1e-12);
            }
        }
        let counts = exact_margin_counts(&code, 1).unwrap();
        let total: u64 = counts
            .correct
            .iter()
            .chain(&counts.undetected)
            .chain(&counts.erasure)
            .sum();
        assert_eq!(total, 1u64 << n);
    }
}

#[test]
fn perfect_code_closed_form() {
    let code = hamming_7_4();
    let wd = weight_distribution(&code).unwrap();
    let counts: Vec<f64> = (0..=7).map(|w| wd.count(w).round()).collect();
    assert_eq!(counts, vec![1.0, 0.0, 0.0, 7.0, 7.0, 0.0, 0.0, 1.0]);
    for p in [0.01, 0.05, 0.2] {
        let q = 1.0 - p;
        let e = exact_margin_probability(&code, p, 0).unwrap();
        assert_eq!(e.erasure, 0.0);
        assert_abs_diff_eq!(e.undetected, 1.0 - q.powi(7) - 7.0 * p * q.powi(6), epsilon = 1e-15);
        assert_abs_diff_eq!(e.correct, q.powi(7) + 7.0 * p * q.powi(6), epsilon = 1e-15);
    }
    let e = exact_margin_probability(&code, 0.05, 0).unwrap();
    let b = binary_union_bound(&wd, 0.05, MarginParams::default(), MarginKind::Error)
        .unwrap()
        .exp();
    assert!(b >= e.undetected && b <= 10.0 * e.undetected, "{b} vs {}", e.undetected);
}

#[test]
fn exact_oracle_limits() {
    let code = gen_linear_code(10, 4, 7).unwrap();
    let e = exact_margin_probability(&code, 1e-9, 0).unwrap();
    assert!(e.correct > 1.0 - 1e-6);
    let e = exact_margin_probability(&code, 0.1, 10).unwrap();
    assert_abs_diff_eq!(e.erasure, 1.0, epsilon = 1e-12);
    assert!(exact_margin_probability(&gen_linear_code(24, 12, 1).unwrap(), 0.1, 0).is_err());
}

#[test]
fn union_bound_dominates_exact() {
    let mut checked = 0;
    for (n, k, seed) in seeded_codes() {
        let code = gen_linear_code(n, k, seed).unwrap();
        let wd = weight_distribution(&code).unwrap();
        for p in [0.01, 0.05, 0.1] {
            for t in 0..=2 {
                let e = exact_margin_probability(&code, p, t).unwrap();
                let m = MarginParams { t, r: None };
                let be = binary_union_bound(&wd, p, m, MarginKind::Error).unwrap().exp();
                let bx = binary_union_bound(&wd, p, m, MarginKind::Erasure).unwrap().exp();
                assert!(
                    be >= e.undetected * (1.0 - 1e-12),
                    "[{n},{k}] seed {seed} p={p} t={t}: {be} < {}",
                    e.undetected
                );
                assert!(
                    bx >= (e.undetected + e.erasure) * (1.0 - 1e-12),
                    "[{n},{k}] seed {seed} p={p} t={t}: {bx} < {}",
                    e.undetected + e.erasure
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 450);
}

#[test]
fn trivial_code_has_no_union_terms() {
    let wd = WeightDistribution::from_counts(&[1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    let b = binary_union_bound(&wd, 0.1, MarginParams::default(), MarginKind::Error).unwrap();
    assert_eq!(b, f64::NEG_INFINITY);
}

#[test]
fn gv_ensemble_approaches_gallager() {
    let ch = BscChannel::new(0.07).unwrap();
    for r in [0.15, 0.3, 0.45] {
        let target = gallager_exponent(r, &ch).value;
        let exps: Vec<f64> = [256usize, 512, 1024]
            .iter()
            .map(|&n| {
                let wd = WeightDistribution::gv_ensemble(n, r).unwrap();
                let b = binary_union_bound(&wd, 0.07, MarginParams::default(), MarginKind::Error).unwrap();
                -b / (n as f64 * LN_2)
            })
            .collect();
        let gaps: Vec<f64> = exps.iter().map(|e| (e - target).abs()).collect();
        assert!(gaps[2] < 0.05, "R={r}: {exps:?} vs {target}");
        assert!(gaps[2] < gaps[0], "R={r}: {gaps:?}");
    }
}

#[test]
fn log_sums_match_direct_summation() {
    let xs: Vec<f64> = (0..200).map(|i| ((i * 37) % 101) as f64 / 7.0 - 5.0).collect();
    let direct: f64 = xs.iter().map(|x| x.exp()).sum();
    assert!(((log_sum(&xs) - direct.ln()) / direct.ln()).abs() < 1e-12);
    let mut acc = LogSum::new();
    for &x in &xs {
        acc.add(x);
    }
    assert!(((acc.value() - direct.ln()) / direct.ln()).abs() < 1e-12);

    let code = gen_linear_code(12, 5, 3).unwrap();
    let wd = weight_distribution(&code).unwrap();
    let (n, p, t) = (12usize, 0.08f64, 1usize);
    let d = wd.min_distance().unwrap();
    let binom = |a: usize, b: usize| -> f64 { (0..b).fold(1.0, |c, m| c * (a - m) as f64 / (m + 1) as f64) };
    let mut direct = 0.0;
    for w in 1..=n {
        let a = wd.count(w).round();
        for e in (w.div_ceil(2) + t)..=(d + 2 * t).min(n) {
            for i in (w.div_ceil(2) + t)..=e.min(w) {
                if e - i <= n - w {
                    direct += a * binom(w, i) * binom(n - w, e - i) * p.powi(e as i32) * (1.0 - p).powi((n - e) as i32);
                }
            }
        }
    }
    for e in (d + 2 * t + 1)..=n {
        direct += binom(n, e) * p.powi(e as i32) * (1.0 - p).powi((n - e) as i32);
    }
    let b = binary_union_bound(&wd, p, MarginParams { t, r: None }, MarginKind::Error).unwrap();
    assert!((b.exp() - direct).abs() / direct < 1e-12);
}

#[test]
fn awgn_single_neighbor_matches_saddle() {
    let ch = AwgnChannel::new(4.0).unwrap();
    let n = 600;
    let w = 138;
    let mut counts = vec![0u64; n + 1];
    counts[0] = 1;
    counts[w] = 1;
    let wd = WeightDistribution::from_counts(&counts).unwrap();
    let theta = (1.0 - 2.0 * w as f64 / n as f64).acos();
    let exponent = -awgn_union_bound(&wd, &ch, 0.0, FRAC_PI_2).unwrap() / n as f64;
    let saddle = f_exponent(theta, 0.0, &ch, FRAC_PI_2).unwrap().0;
    assert!((exponent - saddle).abs() < 0.02, "{exponent} vs {saddle}");

    let mut only_zero = vec![0u64; n + 1];
    only_zero[0] = 1;
    let empty = WeightDistribution::from_counts(&only_zero).unwrap();
    let q = awgn_union_bound(&empty, &ch, 0.0, 1.2).unwrap();
    assert_abs_diff_eq!(q, -(n as f64) * esp(1.2, &ch).unwrap(), epsilon = 1e-9);
}

#[test]
fn awgn_ensemble_approaches_random_coding() {
    let ch = AwgnChannel::new(4.0).unwrap();
    let n = 800;
    for r in [0.3, 0.5] {
        let wd = WeightDistribution::gv_ensemble(n, r).unwrap();
        let exponent = -awgn_union_bound(&wd, &ch, 0.0, FRAC_PI_2).unwrap() / n as f64;
        // Competitor of relative weight ω sits at 1 − cos θ = 2ω, and the
        // pairwise term is (A/4)(1 − cos θ).
        let target = (1..4000)
            .map(|i| i as f64 / 4000.0)
            .filter(|&om| h(om) > 1.0 - r)
            .map(|om| 2.0 * om - LN_2 * (h(om) - (1.0 - r)))
            .fold(f64::INFINITY, f64::min)
            .min(esp(FRAC_PI_2, &ch).unwrap());
        assert!((exponent - target).abs() < 0.05, "R={r}: {exponent} vs {target}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn union_bound_monotone(seed in 0u64..1000, w in 1usize..12, p1 in 0.01f64..0.45, p2 in 0.01f64..0.45, t in 0usize..3) {
        let code = gen_linear_code(12, 4, seed).unwrap();
        let wd = weight_distribution(&code).unwrap();
        let m = MarginParams { t, r: Some(12) };
        for mode in [MarginKind::Error, MarginKind::Erasure] {
            let base = binary_union_bound(&wd, p1, m, mode).unwrap();
            let mut ln = wd.ln_counts().to_vec();
            ln[w] = log_sum(&[ln[w], 0.0]);
            let more = binary_union_bound(&WeightDistribution::from_ln_counts(ln).unwrap(), p1, m, mode).unwrap();
            prop_assert!(more >= base - 1e-12);
            let (lo, hi) = if p1 < p2 { (p1, p2) } else { (p2, p1) };
            let a = binary_union_bound(&wd, lo, m, mode).unwrap();
            let b = binary_union_bound(&wd, hi, m, mode).unwrap();
            prop_assert!(b >= a - 1e-12);
        }
    }
}
