use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::profile::{grid_min, DistanceProfile};
use super::{esp, AwgnChannel};
use crate::error::{Error, Result};
use crate::numerics::{solve_bracketed, RealInterval, SolverConfig};

/// Gap kept below `π/2 − τ` at the top of the bounded-distance range.
pub const BOUNDED_DISTANCE_EPS: f64 = 1e-4;

/// Saddle point of the bounded-distance cone integrand.
pub fn bounded_distance_phi0(theta: f64, tau: f64, ch: &AwgnChannel) -> f64 {
    let a = ch.a;
    let e = 2.0 * (theta - tau);
    let s2 = (4.0 + a * e.sin().powi(2)) / (4.0 + 2.0 * a + 2.0 * a * e.cos());
    s2.clamp(0.0, 1.0).sqrt().asin()
}

/// Error exponent of bounded-distance decoding with angular radius `τ`.
///
/// Minimum over `θ ∈ [θ(C), π/2 − τ − ε]` of `−b(θ) − q(θ₀)`, where `θ₀`
/// is the saddle point clipped to `θ + τ`, and the exponent of leaving the
/// cone of half-angle `π/2 − τ − ε`.
pub fn bounded_distance_exponent_s(profile: &DistanceProfile, ch: &AwgnChannel, tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::domain("tau", tau, "(0, pi/4)"));
    }
    let (lo, hi) = profile.support();
    let top = hi.min(FRAC_PI_2 - tau - BOUNDED_DISTANCE_EPS);
    if top < lo {
        return Err(Error::EmptyInterval { lo, hi: top });
    }
    let term = |theta: f64| {
        let p0 = bounded_distance_phi0(theta, tau, ch);
        let t0 = if p0 < theta + tau { p0 } else { theta + tau };
        let v = 1.0 - ((theta - tau).tan() / t0.tan()).powi(2);
        if !(v > 0.0) {
            return f64::INFINITY;
        }
        match esp(t0, ch) {
            Ok(e) => -profile.eval(theta) - 0.5 * v.ln() + e,
            Err(_) => f64::INFINITY,
        }
    };
    let tail = esp(FRAC_PI_2 - tau - BOUNDED_DISTANCE_EPS, ch)?;
    Ok(grid_min(term, lo, top).min(tail))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UndetectedErrorExponent {
    pub value: f64,
    /// `false` when `8τ csc 2θ ≥ 1`, where no decay is claimed.
    pub valid: bool,
}

/// Exponent `−½ ln(8τ csc 2θ)` of the undetected-error probability of
/// error detection with a code of distance `θ`, as the radius `τ → 0`.
pub fn undetected_error_exponent(theta: f64, tau: f64) -> UndetectedErrorExponent {
    let arg = 8.0 * tau / (2.0 * theta).sin();
    if !(theta > 0.0 && theta < FRAC_PI_2 && tau > 0.0) || !(arg < 1.0) {
        return UndetectedErrorExponent {
            value: 0.0,
            valid: false,
        };
    }
    UndetectedErrorExponent {
        value: -0.5 * arg.ln(),
        valid: true,
    }
}

/// `|1 − tan²(θ−τ)/tan²(θ+τ) − 8τ/sin 2θ|`: the error of the linear
/// approximation behind [`undetected_error_exponent`]. It behaves like
/// `32τ²/sin²2θ` as `τ → 0`.
pub fn undetected_taylor_defect(theta: f64, tau: f64) -> f64 {
    let exact = 1.0 - ((theta - tau).tan() / (theta + tau).tan()).powi(2);
    (exact - 8.0 * tau / (2.0 * theta).sin()).abs()
}

/// Upper bound `−ln(√2 sin(θ/2))` on the rate of a spherical code with
/// minimum angle `θ`.
pub fn rankin_rate(theta: f64) -> f64 {
    -(std::f64::consts::SQRT_2 * (theta / 2.0).sin()).ln()
}

/// Rate at which `θ` is the Elias angle: solves
/// `sin²θ = s(2 − s)` for `s = sin²θ_s(R)` and returns `−½ ln s`.
pub fn elias_rate(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::domain("theta", theta, "(0, pi/2]"));
    }
    let target = theta.sin().powi(2);
    let s = solve_bracketed(
        |s: f64| s * (2.0 - s) - target,
        RealInterval::new(0.0, 1.0)?,
        SolverConfig::with_tol(1e-16),
    )?;
    Ok(-0.5 * s.ln())
}
