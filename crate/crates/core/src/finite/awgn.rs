use std::f64::consts::{FRAC_PI_2, PI};

use statrs::function::gamma::ln_gamma;

use super::WeightDistribution;
use crate::error::{Error, Result};
use crate::numerics::{log_sum, LogSum};
use crate::spherical::{esp, AwgnChannel};

/// Midpoint-rule nodes used for each cone integral.
pub const QUADRATURE_POINTS: usize = 2048;

/// Log of the normalized area of a cap of angular radius `β` on the unit
/// sphere in `R^dim`, leading-order Γ-ratio form, capped at `ln ½`.
pub fn ln_cap_area(dim: usize, beta: f64) -> f64 {
    let nn = dim as f64;
    if !(beta > 0.0) {
        return f64::NEG_INFINITY;
    }
    if beta >= FRAC_PI_2 {
        return 0.5f64.ln();
    }
    let v = ln_gamma(nn / 2.0) - 0.5 * PI.ln() - ln_gamma((nn - 1.0) / 2.0) + (nn - 1.0) * beta.sin().ln()
        - (nn - 1.0).ln()
        - beta.cos().ln();
    v.min(0.5f64.ln())
}

/// Log of the probability, at length `n`, that the margin decoder with
/// radius `ρ` prefers a neighbor at angle `θ`: the integral over noise
/// angles `φ ∈ [θ/2 + τ, ρ]` of the cap area seen from the neighbor times
/// `e^{-n E_sp(φ)}`.
pub fn ln_cone_probability(n: usize, theta: f64, tau: f64, rho: f64, ch: &AwgnChannel) -> Result<f64> {
    let lo = theta / 2.0 + tau;
    if !(lo < rho) || lo <= 0.0 {
        return Err(Error::EmptyInterval { lo, hi: rho });
    }
    let k = QUADRATURE_POINTS;
    let h = (rho - lo) / k as f64;
    let nf = n as f64;
    let mut acc = LogSum::new();
    for i in 0..k {
        let phi = lo + (i as f64 + 0.5) * h;
        let s2 = 1.0 - (lo.tan() / phi.tan()).powi(2);
        if !(s2 > 0.0) {
            continue;
        }
        let beta = s2.sqrt().asin();
        acc.add(ln_cap_area(n - 1, beta) - nf * esp(phi, ch)?);
    }
    Ok(acc.value() + h.ln())
}

/// Natural log of `Σ_w A_w F(θ_w, τ) + Q(ρ)` for a binary code mapped to
/// the sphere, with `θ_w = arccos(1 − 2w/n)` and `Q(ρ) = e^{-n E_sp(ρ)}`.
///
/// Neighbors with `θ_w/2 + τ ≥ ρ` contribute nothing.
pub fn awgn_union_bound(hamming_wd: &WeightDistribution, ch: &AwgnChannel, tau: f64, rho: f64) -> Result<f64> {
    let n = hamming_wd.n();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("length {n} too short")));
    }
    if !(rho > 0.0 && rho <= FRAC_PI_2) {
        return Err(Error::domain("rho", rho, "(0, pi/2]"));
    }
    if let Some(d) = hamming_wd.min_distance() {
        let theta_d = (1.0 - 2.0 * d as f64 / n as f64).acos();
        if rho <= theta_d / 2.0 {
            return Err(Error::domain("rho", rho, "(theta_d/2, pi/2]"));
        }
    }
    let mut terms = vec![-(n as f64) * esp(rho, ch)?];
    for w in 1..=n {
        let la = hamming_wd.ln_count(w);
        if la == f64::NEG_INFINITY {
            continue;
        }
        let theta = (1.0 - 2.0 * w as f64 / n as f64).acos();
        if theta / 2.0 + tau >= rho {
            continue;
        }
        terms.push(la + ln_cone_probability(n, theta, tau, rho, ch)?);
    }
    Ok(log_sum(&terms))
}
