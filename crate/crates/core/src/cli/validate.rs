use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use serde::Serialize;

use super::{to_json, CliError, CommandOutput, Format, ValidateArgs, EXIT_OK, EXIT_VALIDATION};
use crate::binary::{
    bz_bounds, gallager_exponent, margin_bound, min_valid_rate_plus, nontrivial_rate_threshold, BscChannel,
};
use crate::finite::{binary_union_bound, exact_margin_probability, triangle_count, MarginParams};
use crate::numerics::binary_entropy;
use crate::sim::{gen_linear_code, hamming_7_4, simulate_bsc, weight_distribution};
use crate::spherical::{
    big_g, decoding_radius, elias_rate, elias_theta, profile_exponent, rankin_rate, shannon_exponent,
    spherical_landmarks_with, theta_s, undetected_error_exponent, undetected_taylor_defect, AwgnChannel,
    DistanceProfile, ExpurgationForm, SphericalBounds,
};
use crate::MarginKind;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:width$}  defect {:.3e}  tol {:.1e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.defect,
                c.tolerance,
            ));
        }
        s.push_str(&format!("{}/{} checks passed\n", self.passed, self.checks.len()));
        s
    }
}

struct Suite {
    checks: Vec<CheckResult>,
}

impl Suite {
    fn record(&mut self, name: &'static str, defect: f64, tolerance: f64) {
        self.checks.push(CheckResult {
            name,
            defect,
            tolerance,
            pass: defect <= tolerance,
        });
    }

    /// Records an infinite defect when the computation itself failed.
    fn record_with(&mut self, name: &'static str, tolerance: f64, f: impl FnOnce() -> Option<f64>) {
        let defect = f().filter(|d| !d.is_nan()).unwrap_or(f64::INFINITY);
        self.record(name, defect, tolerance);
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
}

/// Run the fast identity checks. `g_offset` is added to `G` everywhere,
/// as a negative control for the checks that depend on it.
pub fn cmd_validate(g_offset: f64) -> ValidationReport {
    let mut s = Suite { checks: Vec::new() };
    let awgn = |a: f64| AwgnChannel::new(a).expect("positive snr").with_g_offset(g_offset);

    s.record_with("binary tau=0 reduction", 1e-9, || {
        let mut worst = 0.0f64;
        for p in [0.01, 0.05, 0.07, 0.1, 0.2, 0.3, 0.45] {
            let ch = BscChannel::new(p).ok()?;
            for r in grid(0.0, ch.capacity(), 200) {
                let e0 = gallager_exponent(r, &ch).value;
                for kind in [MarginKind::Error, MarginKind::Erasure] {
                    worst = worst.max((margin_bound(r, &ch, 0.0, kind).value - e0).abs());
                }
            }
        }
        Some(worst)
    });

    s.record_with("trade-off dominates shifted bounds (violations)", 0.0, || {
        let ch = BscChannel::new(0.07).ok()?;
        let mut violations = 0;
        for r in grid(0.0, ch.capacity(), 200) {
            let (ee, ex) = bz_bounds(r, &ch, 0.03);
            let mp = margin_bound(r, &ch, 0.03, MarginKind::Error);
            let mm = margin_bound(r, &ch, 0.03, MarginKind::Erasure);
            if mp.valid && ee.valid && mp.value < ee.value - 1e-12 {
                violations += 1;
            }
            if mm.valid && ex.valid && mm.value < ex.value - 1e-12 {
                violations += 1;
            }
        }
        Some(violations as f64)
    });

    s.record(
        "M+ validity threshold vs 1-h(1/2-tau)",
        (min_valid_rate_plus(0.03) - (1.0 - binary_entropy(0.47))).abs(),
        1e-12,
    );

    s.record_with("M- vanishes at 1-h(p+2tau)", 1e-8, || {
        let ch = BscChannel::new(0.07).ok()?;
        let r = nontrivial_rate_threshold(&ch, 0.03);
        Some(margin_bound(r, &ch, 0.03, MarginKind::Erasure).value.abs())
    });

    for (name, form) in [
        ("spherical tau=0 reduction", ExpurgationForm::Laplace),
        ("spherical tau=0 reduction (G form)", ExpurgationForm::WithG),
    ] {
        s.record_with(name, 1e-6, || {
            let mut worst = 0.0f64;
            for a in [1.0, 4.0, 10.0] {
                let ch = awgn(a);
                let b = SphericalBounds::new(&ch, 0.0, MarginKind::Error, form).ok()?;
                for r in grid(0.0, ch.capacity(), 40) {
                    let (m, e0) = (b.exponent(r), shannon_exponent(r, &ch));
                    if !(m.valid && e0.valid) {
                        return None;
                    }
                    worst = worst.max((m.value - e0.value).abs());
                }
            }
            Some(worst)
        });
    }

    s.record_with("tau=0 landmarks equal the classical angles", 1e-9, || {
        let mut worst = 0.0f64;
        for a in [1.0, 4.0, 10.0] {
            let ch = awgn(a);
            let lm = spherical_landmarks_with(0.0, &ch, ExpurgationForm::default()).ok()?;
            worst = worst
                .max((lm.theta_1 - lm.theta_e).abs())
                .max((lm.theta_2 - lm.theta_c).abs());
            for r in grid(0.0, ch.capacity(), 10) {
                worst = worst.max((decoding_radius(r, 0.0, &ch).ok()? - theta_s(r).ok()?).abs());
            }
        }
        Some(worst)
    });

    s.record_with("landmark residuals", 1e-10, || {
        let ch = awgn(4.0);
        let mut worst = 0.0f64;
        for tau in [0.04, -0.04] {
            let lm = spherical_landmarks_with(tau, &ch, ExpurgationForm::default()).ok()?;
            worst = worst.max(lm.theta_1_residual.abs()).max(lm.r_star_residual.abs());
        }
        Some(worst)
    });

    s.record_with("elias angle identity at tau=0", 1e-10, || {
        let mut worst = 0.0f64;
        for x in grid(0.05, 1.5, 15) {
            let th = elias_theta(x, 0.0).ok()?;
            worst = worst.max((th.cos() - x.cos().powi(2)).abs());
        }
        Some(worst)
    });

    s.record_with("elias rate equals rankin rate", 1e-9, || {
        let mut worst = 0.0f64;
        for th in grid(0.05, FRAC_PI_2, 20) {
            worst = worst.max((elias_rate(th).ok()? - rankin_rate(th)).abs());
        }
        Some(worst)
    });

    s.record_with("G vanishes at tau=0", 1e-14, || {
        let mut worst = 0.0f64;
        for a in [1.0, 4.0, 10.0] {
            let ch = awgn(a);
            for phi in grid(0.2, 1.4, 25) {
                worst = worst.max(big_g(phi, 0.0, &ch).ok()?.abs());
            }
        }
        Some(worst)
    });

    s.record_with("G nonpositive", 0.0, || {
        let mut worst = 0.0f64;
        for a in [1.0, 4.0, 10.0] {
            let ch = awgn(a);
            for phi in grid(0.2, 1.4, 25) {
                for tau in grid(0.0, 0.1, 10) {
                    worst = worst.max(big_g(phi, tau, &ch).ok()?);
                }
            }
        }
        Some(worst)
    });

    s.record_with("profile oracle equals trade-off bound", 1e-4, || {
        let ch = awgn(4.0);
        let mut worst = 0.0f64;
        for tau in [0.02, 0.04] {
            let b = SphericalBounds::new(&ch, tau, MarginKind::Error, ExpurgationForm::default()).ok()?;
            for r in [0.1, 0.3, 0.5, 0.65] {
                let v = b.exponent(r);
                let rho = decoding_radius(r, tau, &ch).ok()?;
                let p = profile_exponent(&DistanceProfile::beta(r).ok()?, &ch, tau, rho).ok()?;
                worst = worst.max((p - v.value).abs());
            }
        }
        Some(worst)
    });

    s.record(
        "triangle counts match enumeration (mismatches)",
        triangle_mismatches(8) as f64,
        0.0,
    );

    s.record_with("exact probabilities sum to one", 1e-12, || {
        let mut worst = 0.0f64;
        for t in 0..3 {
            let e = exact_margin_probability(&hamming_7_4(), 0.05, t).ok()?;
            worst = worst.max((e.correct + e.undetected + e.erasure - 1.0).abs());
        }
        Some(worst)
    });

    s.record_with("perfect-code closed form", 1e-12, || {
        let (p, q) = (0.05f64, 0.95f64);
        let e = exact_margin_probability(&hamming_7_4(), p, 0).ok()?;
        let closed = 1.0 - q.powi(7) - 7.0 * p * q.powi(6);
        Some(((e.undetected + e.erasure) - closed).abs() + e.erasure)
    });

    s.record_with("union bound dominates exact (violations)", 0.0, || {
        let mut violations = 0;
        for seed in 0..5 {
            let code = gen_linear_code(12, 5, seed).ok()?;
            let wd = weight_distribution(&code).ok()?;
            for t in 0..3 {
                let e = exact_margin_probability(&code, 0.05, t).ok()?;
                let m = MarginParams { t, r: None };
                let ub_e = binary_union_bound(&wd, 0.05, m, MarginKind::Error).ok()?.exp();
                let ub_x = binary_union_bound(&wd, 0.05, m, MarginKind::Erasure).ok()?.exp();
                violations += (ub_e < e.undetected * (1.0 - 1e-12)) as usize;
                violations += (ub_x < (e.undetected + e.erasure) * (1.0 - 1e-12)) as usize;
            }
        }
        Some(violations as f64)
    });

    s.record(
        "undetected-error Taylor remainder vs 32 tau^2/sin^2 2theta",
        taylor_remainder_gap(),
        0.05,
    );

    s.record(
        "undetected-error exponent at (pi/4, 0.01)",
        (undetected_error_exponent(FRAC_PI_4, 0.01).value - 1.262864).abs(),
        1e-5,
    );

    s.record_with("simulation independent of worker count", 0.0, || {
        let code = hamming_7_4();
        let run = |w: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .ok()
                .map(|pool| pool.install(|| simulate_bsc(&code, 0.1, 1, 100_000, 11)))
        };
        Some((run(1)? != run(4)?) as u8 as f64)
    });

    let failed = s.checks.iter().filter(|c| !c.pass).count();
    ValidationReport {
        passed: s.checks.len() - failed,
        failed,
        checks: s.checks,
    }
}

/// Largest relative gap between `defect/τ²` and its limit `32/sin²2θ`.
fn taylor_remainder_gap() -> f64 {
    let mut worst = 0.0f64;
    for theta in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        let limit = 32.0 / (2.0 * theta).sin().powi(2);
        for tau in [1e-2, 1e-3, 1e-4] {
            let ratio = undetected_taylor_defect(theta, tau) / (tau * tau);
            worst = worst.max((ratio / limit - 1.0).abs());
        }
    }
    worst
}

/// Number of `(n, k, i, j)` with `n ≤ max_n` where [`triangle_count`]
/// differs from direct enumeration over all words `z`.
pub(crate) fn triangle_mismatches(max_n: usize) -> usize {
    let mut bad = 0;
    for n in 0..=max_n {
        for k in 0..=n {
            let y: u32 = (1u32 << k) - 1;
            let mut counts = vec![vec![0u128; n + 1]; n + 1];
            for z in 0..1u32 << n {
                let i = z.count_ones() as usize;
                let j = (z ^ y).count_ones() as usize;
                counts[i][j] += 1;
            }
            for (i, row) in counts.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    bad += (triangle_count(n, k, i, j) != c) as usize;
                }
            }
        }
    }
    bad
}

pub(super) fn run(a: &ValidateArgs) -> Result<CommandOutput, CliError> {
    let report = cmd_validate(a.perturb_g);
    let body = match a.output.format {
        None => report.to_text(),
        Some(Format::Json) => to_json(&report),
        Some(Format::Csv) => {
            let mut s = String::from("check,defect,tolerance,pass\n");
            for c in &report.checks {
                s.push_str(&format!("{},{:e},{:e},{}\n", c.name, c.defect, c.tolerance, c.pass));
            }
            s
        }
        Some(Format::Svg) => return Err(CliError::Usage("validate has no svg output".into())),
    };
    Ok(CommandOutput {
        body,
        status: if report.all_passed() { EXIT_OK } else { EXIT_VALIDATION },
    })
}
