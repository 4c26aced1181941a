use approx::assert_abs_diff_eq;
use erasure_exponents::binary::{
    bounded_distance_exponent, bz_bounds, delta_gv, gallager_exponent, landmarks, margin_bound, min_valid_rate_plus,
    nontrivial_rate_threshold, specific_code_bound, tradeoff_bounds, tradeoff_case_b_alternative,
    typical_error_geometry, BscChannel, Regime, WeightProfile,
};
use erasure_exponents::finite::{bounded_distance_sum, WeightDistribution};
use erasure_exponents::numerics::{binary_entropy, divergence, entropy_family};
use erasure_exponents::MarginKind;
use proptest::prelude::*;

fn h(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

fn kl(x: f64, p: f64) -> f64 {
    let a = if x > 0.0 { x * (x / p).log2() } else { 0.0 };
    let b = if x < 1.0 {
        (1.0 - x) * ((1.0 - x) / (1.0 - p)).log2()
    } else {
        0.0
    };
    a + b
}

/// Grid search followed by golden-section refinement around the best cell.
fn grid_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let step = (hi - lo) / n as f64;
    let (mut best_x, mut best) = (lo, f64::NEG_INFINITY);
    for i in 0..=n {
        let x = lo + step * i as f64;
        let v = f(x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let (mut a, mut b) = ((best_x - step).max(lo), (best_x + step).min(hi));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) >= f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    best.max(f(0.5 * (a + b)))
}

/// Exponent (bits) of `min(1, union bound)` over the GV ensemble for the
/// margin decoder: an error of relative weight `ρ` causes a failure when
/// some competitor of weight `ω ≥ δ` shares at least `ω/2 + s` of its
/// ones, `s = +τ` for undetected errors and `−τ` for any failure.
fn union_oracle(rate: f64, p: f64, s: f64) -> f64 {
    let delta = delta_gv(rate);
    let log_count = |rho: f64| {
        grid_max(
            |om: f64| {
                let lo = om / 2.0 + s;
                let hi = om.min(rho);
                if lo > hi || rho - hi > 1.0 - om {
                    return f64::NEG_INFINITY;
                }
                let iota = (rho * om).clamp(lo.max(rho - (1.0 - om)), hi);
                let inner = om * h(iota / om)
                    + if om < 1.0 {
                        (1.0 - om) * h((rho - iota) / (1.0 - om))
                    } else {
                        0.0
                    };
                rate - 1.0 + h(om) + inner - h(rho)
            },
            delta,
            1.0,
            600,
        )
    };
    -grid_max(|rho| -(kl(rho, p) + (-log_count(rho)).max(0.0)), 1e-9, 1.0 - 1e-9, 600)
}

#[test]
fn entropy_examples() {
    let e = entropy_family(0.5, 0.3).unwrap();
    assert_abs_diff_eq!(e.h, 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(divergence(0.3, 0.3), 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!(divergence(0.2062, 0.07), kl(0.2062, 0.07), epsilon = 1e-12);
    assert_abs_diff_eq!(divergence(0.2062, 0.07), 0.14009, epsilon = 1e-4);
}

#[test]
fn gallager_reference_points() {
    let ch = BscChannel::new(0.07).unwrap();
    let e = gallager_exponent(0.0, &ch);
    assert_eq!(e.regime, Regime::A);
    assert_abs_diff_eq!(e.value, -0.5 * (2.0 * (0.07f64 * 0.93).sqrt()).log2(), epsilon = 1e-12);
    assert_abs_diff_eq!(e.value, 0.48530, epsilon = 1e-5);
    let e = gallager_exponent(0.15, &ch);
    assert_eq!(e.regime, Regime::B);
    assert_abs_diff_eq!(e.value, 0.25517, epsilon = 1e-5);
    let e = gallager_exponent(0.4, &ch);
    assert_eq!(e.regime, Regime::C);
    assert_abs_diff_eq!(e.value, kl(delta_gv(0.4), 0.07), epsilon = 1e-12);
    assert_abs_diff_eq!(e.value, 0.049923, epsilon = 1e-6);
    assert!(!gallager_exponent(ch.capacity() + 1e-3, &ch).valid);
}

#[test]
fn delta_gv_inverts_entropy() {
    assert_abs_diff_eq!(delta_gv(0.4), 0.146102, epsilon = 1e-6);
    for r in [0.05, 0.2, 0.5, 0.8] {
        assert_abs_diff_eq!(1.0 - binary_entropy(delta_gv(r)), r, epsilon = 1e-11);
    }
}

#[test]
fn landmark_values() {
    let ch = BscChannel::new(0.07).unwrap();
    let l0 = landmarks(&ch, 0.0);
    assert_abs_diff_eq!(l0.rho0, 0.215287, epsilon = 1e-6);
    assert_abs_diff_eq!(l0.omega0, 2.0 * l0.rho0 * (1.0 - l0.rho0), epsilon = 1e-12);
    assert_abs_diff_eq!(l0.omega0, 0.337877, epsilon = 1e-6);
    assert_abs_diff_eq!(l0.r_c, 1.0 - h(l0.rho0), epsilon = 1e-12);
    assert_abs_diff_eq!(l0.r_c, 0.2485317, epsilon = 1e-7);
    assert_eq!(l0.rho0_plus, l0.rho0);
    assert_eq!(l0.rho0_minus, l0.rho0);
    let l = landmarks(&ch, 0.03);
    assert_abs_diff_eq!(l.rho0_plus, 0.246800, epsilon = 1e-6);
    assert_abs_diff_eq!(l.rho0_plus - l.rho0_minus, 0.06, epsilon = 1e-12);
    assert_abs_diff_eq!(l.omega0_tau, 0.341396, epsilon = 1e-6);
    let r = l.rho0_plus;
    assert_abs_diff_eq!(
        l.omega0_tau,
        2.0 * r * (1.0 - r) - 0.06 * (1.0 - 2.0 * r),
        epsilon = 1e-12
    );
    assert!(0.0 < l0.r_e && l0.r_e < l0.r_c && l0.r_c < 1.0);
}

#[test]
fn shifted_bound_values() {
    let ch = BscChannel::new(0.07).unwrap();
    let (ee, _) = bz_bounds(0.4, &ch, 0.03);
    assert_abs_diff_eq!(ee.value, 0.121006, epsilon = 1e-6);
    let e0 = gallager_exponent(0.4, &ch).value;
    let d = delta_gv(0.4);
    let slope = (d * 0.93 / (0.07 * (1.0 - d))).log2();
    assert_abs_diff_eq!(ee.value, e0 + 0.06 * slope, epsilon = 1e-12);
    for r in [0.05, 0.2, 0.3, 0.5] {
        let (a, b) = bz_bounds(r, &ch, 0.0);
        let g = gallager_exponent(r, &ch).value;
        assert_abs_diff_eq!(a.value, g, epsilon = 1e-12);
        assert_abs_diff_eq!(b.value, g, epsilon = 1e-12);
    }
    let ch = BscChannel::new(0.2).unwrap();
    let rc = landmarks(&ch, 0.0).r_c;
    for r in [rc, rc + 0.02, 0.25] {
        assert!(!bz_bounds(r, &ch, 0.09).1.valid, "R = {r}");
    }
}

#[test]
fn tradeoff_reference_points() {
    let ch = BscChannel::new(0.07).unwrap();
    let (mp, mm) = tradeoff_bounds(0.4, &ch, 0.03);
    assert_eq!(mp.regime, Regime::C);
    assert_eq!(mm.regime, Regime::C);
    assert_abs_diff_eq!(mp.value, 0.139865, epsilon = 1e-6);
    assert_abs_diff_eq!(mm.value, 0.002690, epsilon = 1e-6);
    let (mp, _) = tradeoff_bounds(0.05, &ch, 0.03);
    assert_eq!(mp.regime, Regime::A);
    assert_abs_diff_eq!(mp.value, 0.477296, epsilon = 1e-6);
}

#[test]
fn tradeoff_matches_union_oracle() {
    for (p, tau) in [(0.07, 0.03), (0.1, 0.02), (0.2, 0.05)] {
        let ch = BscChannel::new(p).unwrap();
        for i in 1..20 {
            let r = ch.capacity() * i as f64 / 20.0;
            for kind in [MarginKind::Error, MarginKind::Erasure] {
                let b = margin_bound(r, &ch, tau, kind);
                if !b.valid {
                    continue;
                }
                let oracle = union_oracle(r, p, kind.signed(tau));
                assert!(
                    (b.value - oracle).abs() < 1e-6,
                    "p={p} tau={tau} R={r} {kind:?}: {} vs {oracle}",
                    b.value
                );
            }
        }
    }
}

#[test]
fn zero_margin_reduces_to_gallager() {
    for p in [0.01, 0.05, 0.07, 0.1, 0.2, 0.3, 0.45] {
        let ch = BscChannel::new(p).unwrap();
        for i in 0..=50 {
            let r = ch.capacity() * i as f64 / 50.0;
            let g = gallager_exponent(r, &ch).value;
            let (a, b) = tradeoff_bounds(r, &ch, 0.0);
            assert_abs_diff_eq!(a.value, g, epsilon = 1e-9);
            assert_abs_diff_eq!(b.value, g, epsilon = 1e-9);
        }
    }
}

#[test]
fn case_b_alternative_form() {
    let ch = BscChannel::new(0.07).unwrap();
    let tau = 0.02;
    for i in 1..200 {
        let r = ch.capacity() * i as f64 / 200.0;
        for kind in [MarginKind::Error, MarginKind::Erasure] {
            let b = margin_bound(r, &ch, tau, kind);
            if b.valid && b.regime == Regime::B {
                assert_abs_diff_eq!(b.value, tradeoff_case_b_alternative(r, &ch, tau, kind), epsilon = 1e-10);
            }
        }
    }
}

#[test]
fn continuity_at_regime_changes() {
    let ch = BscChannel::new(0.07).unwrap();
    let tau = 0.03;
    for kind in [MarginKind::Error, MarginKind::Erasure] {
        let mut prev = margin_bound(0.01, &ch, tau, kind);
        let n = 20_000;
        for i in 1..n {
            let r = 0.01 + (ch.capacity() - 0.02) * i as f64 / n as f64;
            let b = margin_bound(r, &ch, tau, kind);
            if b.valid && prev.valid && b.regime != prev.regime {
                assert!((b.value - prev.value).abs() < 1e-4, "{kind:?} jump at R={r}");
            }
            prev = b;
        }
    }
}

#[test]
fn erasure_threshold_and_validity() {
    let ch = BscChannel::new(0.07).unwrap();
    let r0 = nontrivial_rate_threshold(&ch, 0.03);
    assert_abs_diff_eq!(r0, 1.0 - h(0.13), epsilon = 1e-12);
    assert_abs_diff_eq!(r0, 0.44254, epsilon = 1e-4);
    assert!(tradeoff_bounds(r0, &ch, 0.03).1.value.abs() < 1e-8);
    assert_abs_diff_eq!(nontrivial_rate_threshold(&ch, 0.0), ch.capacity(), epsilon = 1e-15);
    let rmin = min_valid_rate_plus(0.03);
    assert_abs_diff_eq!(rmin, 1.0 - h(0.47), epsilon = 1e-12);
    assert!((rmin - 0.0025).abs() < 1e-3);
    assert!(!tradeoff_bounds(rmin * 0.5, &ch, 0.03).0.valid);
    assert!(tradeoff_bounds(rmin * 1.01, &ch, 0.03).0.valid);
    let ch = BscChannel::new(0.2).unwrap();
    let (_, mm) = tradeoff_bounds(0.02, &ch, 0.09);
    assert!(mm.value > 0.0);
}

#[test]
fn error_geometry() {
    let ch = BscChannel::new(0.07).unwrap();
    let (rho, om, regime) = typical_error_geometry(0.4, &ch, 0.0);
    let d = delta_gv(0.4);
    assert_eq!(regime, Regime::C);
    assert_abs_diff_eq!(rho, d, epsilon = 1e-12);
    assert_abs_diff_eq!(om, 2.0 * d * (1.0 - d), epsilon = 1e-12);
    let (rho, _, regime) = typical_error_geometry(0.01, &ch, 0.0);
    let d = delta_gv(0.01);
    assert_eq!(regime, Regime::A);
    assert_abs_diff_eq!(rho, (1.0 - d) * 0.07 + d / 2.0, epsilon = 1e-12);
    let l = landmarks(&ch, 0.02);
    let (rho, om, regime) = typical_error_geometry(0.15, &ch, 0.02);
    assert_eq!(regime, Regime::B);
    assert_eq!((rho, om), (l.rho0_plus, l.omega0_tau));
}

#[test]
fn bounded_distance_cases() {
    let ch = BscChannel::new(0.07).unwrap();
    for r in [0.7, 0.8, 0.95] {
        assert_abs_diff_eq!(bounded_distance_exponent(r, &ch, 0.0).value, 1.0 - r, epsilon = 1e-12);
    }
    let r = 0.3;
    let d = delta_gv(r);
    let t = -d * 0.07f64.log2() - (1.0 - d) * 0.93f64.log2();
    assert_abs_diff_eq!(bounded_distance_exponent(r, &ch, 0.0).value, t, epsilon = 1e-12);
    let cap = ch.capacity();
    let below = bounded_distance_exponent(cap - 1e-7, &ch, 0.0).value;
    assert_abs_diff_eq!(below, 1.0 - cap, epsilon = 1e-5);

    let asym = bounded_distance_exponent(0.3, &ch, 0.05).value;
    let finite: Vec<f64> = [512usize, 1024, 2048]
        .iter()
        .map(|&n| {
            let wd = WeightDistribution::gv_ensemble(n, 0.3).unwrap();
            let t = (0.05 * n as f64).floor() as usize;
            -bounded_distance_sum(&wd, 0.07, t).unwrap() / n as f64 / std::f64::consts::LN_2
        })
        .collect();
    assert!(finite.windows(2).all(|w| w[1] < w[0]), "{finite:?}");
    assert!(asym <= finite[2] && finite[2] - asym < 0.02, "{asym} vs {finite:?}");
}

#[test]
fn specific_code_profiles() {
    let ch = BscChannel::new(0.07).unwrap();
    let r = 0.15;
    let gv = WeightProfile::gilbert_varshamov(r, 2000).unwrap();
    let b = specific_code_bound(&gv, r, &ch).unwrap();
    assert!(b.kappa.abs() < 1e-9);
    assert!(b.value >= gallager_exponent(r, &ch).value - 1e-12);
    assert_eq!(b.value, b.distance_term.max(gallager_exponent(r, &ch).value - b.kappa));

    let slope = 0.5 * (4.0 * ch.u).log2();
    let grid = grid_max(
        |w| {
            if w < delta_gv(r) {
                f64::NEG_INFINITY
            } else {
                h(w) - (1.0 - r) + w * slope
            }
        },
        0.0,
        1.0,
        10_000,
    );
    assert_abs_diff_eq!(b.distance_term, -grid, epsilon = 1e-6);

    let d = delta_gv(r);
    let single = specific_code_bound(&WeightProfile::single(d).unwrap(), r, &ch).unwrap();
    assert_abs_diff_eq!(single.distance_term, -d * slope, epsilon = 1e-12);
}

#[test]
fn erasure_geometry_inequality() {
    for p in [0.05, 0.1, 0.2, 0.3] {
        let cap = 1.0 - h(p);
        for i in 0..40 {
            let r = cap * i as f64 / 40.0;
            let d = delta_gv(r);
            let mut tau = 0.0;
            while tau <= p / 2.0 {
                assert!(d * d - d / 2.0 <= (2.0 * d - 1.0) * tau + 1e-12);
                tau += p / 40.0;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divergence_nonnegative(x in 0.0f64..1.0, y in 0.001f64..0.999) {
        prop_assert!(divergence(x, y) >= -1e-14);
    }

    #[test]
    fn dominance_over_shifted_bounds(p in 0.01f64..0.45, tau_frac in 0.0f64..0.5, rf in 0.0f64..1.0) {
        let ch = BscChannel::new(p).unwrap();
        let tau = tau_frac * p;
        let r = rf * ch.capacity();
        let (mp, mm) = tradeoff_bounds(r, &ch, tau);
        let (ee, ex) = bz_bounds(r, &ch, tau);
        if mp.valid && ee.valid {
            prop_assert!(mp.value >= ee.value - 1e-9, "{} < {}", mp.value, ee.value);
        }
        if mm.valid && ex.valid {
            prop_assert!(mm.value >= ex.value - 1e-9, "{} < {}", mm.value, ex.value);
        }
    }

    #[test]
    fn m_plus_nonincreasing(p in 0.01f64..0.45, tau_frac in 0.0f64..0.5, r1 in 0.0f64..1.0, r2 in 0.0f64..1.0) {
        let ch = BscChannel::new(p).unwrap();
        let tau = tau_frac * p;
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        let a = tradeoff_bounds(lo * ch.capacity(), &ch, tau).0;
        let b = tradeoff_bounds(hi * ch.capacity(), &ch, tau).0;
        if a.valid && b.valid {
            prop_assert!(a.value >= b.value - 1e-9);
        }
    }

    #[test]
    fn error_exponent_exceeds_erasure(p in 0.01f64..0.45, tau_frac in 0.0f64..0.5, rf in 0.0f64..1.0) {
        let ch = BscChannel::new(p).unwrap();
        let tau = tau_frac * p;
        let r = rf * ch.capacity();
        let (mp, mm) = tradeoff_bounds(r, &ch, tau);
        if mp.valid && mm.valid && delta_gv(r) - 2.0 * tau > p {
            prop_assert!(mp.value >= mm.value - 1e-12);
        }
    }

    #[test]
    fn bounds_never_panic(p in 0.001f64..0.499, tau in 0.0f64..0.5, r in -0.1f64..1.1) {
        let ch = BscChannel::new(p).unwrap();
        let (a, b) = tradeoff_bounds(r, &ch, tau);
        prop_assert!(!a.valid || a.value.is_finite());
        prop_assert!(!b.valid || b.value.is_finite());
        let _ = bz_bounds(r, &ch, tau);
    }
}
