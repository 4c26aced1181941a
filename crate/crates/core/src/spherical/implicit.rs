use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::{theta_s, AwgnChannel};
use crate::error::{Error, Result};
use crate::numerics::{solve_bracketed, RealInterval, SolverConfig};

fn g_parts(phi: f64, tau: f64, a: f64) -> (f64, f64) {
    let x = (phi + tau) / 2.0;
    let y = phi / 2.0 + tau;
    let num = a * x.cos().powi(2) * (x.sin().powi(2) - y.sin().powi(2));
    let den = y.cos().powi(2);
    (num, den)
}

/// Correction term `G(φ, τ) = ½ ln(1 + A cos²a (sin²a − sin²b) / cos²b)`
/// with `a = (φ+τ)/2`, `b = φ/2 + τ`. Vanishes at `τ = 0`.
pub fn big_g(phi: f64, tau: f64, ch: &AwgnChannel) -> Result<f64> {
    let (num, den) = g_parts(phi, tau, ch.a);
    let arg = 1.0 + num / den;
    if !(den > 0.0) || !(arg > 0.0) {
        return Err(Error::domain("phi/2 + tau", phi / 2.0 + tau, "(0, pi/2)"));
    }
    Ok(0.5 * arg.ln() + ch.g_offset())
}

/// `∂G/∂φ` in closed form.
pub fn big_g_derivative(phi: f64, tau: f64, ch: &AwgnChannel) -> Result<f64> {
    let a = ch.a;
    let x = (phi + tau) / 2.0;
    let y = phi / 2.0 + tau;
    let (num, den) = g_parts(phi, tau, a);
    let arg = 1.0 + num / den;
    if !(den > 0.0) || !(arg > 0.0) {
        return Err(Error::domain("phi/2 + tau", phi / 2.0 + tau, "(0, pi/2)"));
    }
    let dnum = a
        * (0.25 * (4.0 * x).sin() + 0.5 * (2.0 * x).sin() * y.sin().powi(2) - 0.5 * x.cos().powi(2) * (2.0 * y).sin());
    let dden = -0.5 * (2.0 * y).sin();
    let darg = (dnum * den - num * dden) / (den * den);
    Ok(darg / (2.0 * arg))
}

/// Residual of the Elias-angle equation in cotangent form,
/// `cot θ − cos²x tan(θ/2+τ) / (cos(θ+2τ) − cos 2x)`.
pub fn elias_residual(theta: f64, x: f64, tau: f64) -> f64 {
    1.0 / theta.tan() - x.cos().powi(2) * (theta / 2.0 + tau).tan() / ((theta + 2.0 * tau).cos() - (2.0 * x).cos())
}

/// Elias-angle equation with the poles cleared.
fn elias_smooth(theta: f64, x: f64, tau: f64) -> f64 {
    let half = theta / 2.0 + tau;
    theta.cos() * half.cos() * ((theta + 2.0 * tau).cos() - (2.0 * x).cos())
        - theta.sin() * x.cos().powi(2) * half.sin()
}

const ELIAS_SCAN: usize = 512;

/// The angle `θ(x)` solving the Elias-angle equation: the first root on
/// `(0, min(π, π − 2τ))`. Negative `τ` gives the erasure-side angle.
pub fn elias_theta(x: f64, tau: f64) -> Result<f64> {
    if !(x > 0.0 && x <= FRAC_PI_2) {
        return Err(Error::domain("x", x, "(0, pi/2]"));
    }
    let hi = PI.min(PI - 2.0 * tau);
    let lo = 1e-9;
    if !(hi > lo) {
        return Err(Error::RootNotBracketed {
            equation: "elias angle",
            lo,
            hi,
        });
    }
    let f = |t: f64| elias_smooth(t, x, tau);
    let step = (hi - lo) / ELIAS_SCAN as f64;
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=ELIAS_SCAN {
        let b = if i == ELIAS_SCAN {
            hi - 1e-12
        } else {
            lo + step * i as f64
        };
        let fb = f(b);
        if fa == 0.0 {
            return Ok(a);
        }
        if fa.signum() != fb.signum() {
            let cfg = SolverConfig::with_tol(1e-15);
            return solve_bracketed(f, RealInterval::new(a, b)?, cfg);
        }
        a = b;
        fa = fb;
    }
    Err(Error::RootNotBracketed {
        equation: "elias angle",
        lo,
        hi,
    })
}

/// `R + ln sin θ(ρ) + ½ ln(1 − tan²(θ(ρ)/2 + τ) / tan²ρ)`; `-inf` where
/// the logarithm's argument is not positive.
pub fn decoding_residual(rho: f64, rate: f64, tau: f64) -> f64 {
    let Ok(th) = elias_theta(rho, tau) else {
        return f64::NAN;
    };
    let v = 1.0 - ((th / 2.0 + tau).tan() / rho.tan()).powi(2);
    if !(v > 0.0) || !(th.sin() > 0.0) {
        return f64::NEG_INFINITY;
    }
    rate + th.sin().ln() + 0.5 * v.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecodingRadius {
    pub rho: f64,
    pub residual: f64,
    /// Sign changes seen by the scan; `1` means the root is unique on the
    /// scan grid.
    pub sign_changes: usize,
}

const RADIUS_SCAN: usize = 256;

/// Optimal decoding radius `ρ(R)` for margin `τ` (negative for erasure).
pub fn decoding_radius(rate: f64, tau: f64, ch: &AwgnChannel) -> Result<f64> {
    decoding_radius_detail(rate, tau, ch).map(|d| d.rho)
}

/// [`decoding_radius`] with its residual and the scan's sign-change count.
///
/// The root is sought on `[θ_s, min(2θ_s, π/2)]` for `τ ≥ 0`. With a
/// negative margin the residual is already positive at `θ_s`, so the
/// erasure-side root is sought on `[θ_s/2, θ_s]`.
pub fn decoding_radius_detail(rate: f64, tau: f64, _ch: &AwgnChannel) -> Result<DecodingRadius> {
    if !(rate > 0.0) {
        return Err(Error::domain("R", rate, "(0, inf)"));
    }
    let ts = theta_s(rate)?;
    let (lo, hi) = if tau >= 0.0 {
        (ts, (2.0 * ts).min(FRAC_PI_2))
    } else {
        (ts / 2.0, ts)
    };
    let not_bracketed = Error::RootNotBracketed {
        equation: "decoding angle",
        lo,
        hi,
    };
    if !(hi > lo) {
        return Err(not_bracketed);
    }
    let f = |r: f64| decoding_residual(r, rate, tau);
    let f_lo = f(lo);
    if f_lo.abs() <= 1e-12 {
        return Ok(DecodingRadius {
            rho: lo,
            residual: f_lo,
            sign_changes: 1,
        });
    }

    let step = (hi - lo) / RADIUS_SCAN as f64;
    let xs: Vec<f64> = (0..=RADIUS_SCAN)
        .map(|i| if i == RADIUS_SCAN { hi } else { lo + step * i as f64 })
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut first = None;
    let mut changes = 0;
    for i in 0..RADIUS_SCAN {
        let (a, b) = (vals[i], vals[i + 1]);
        if a.is_nan() || b.is_nan() {
            continue;
        }
        if a.signum() != b.signum() || b == 0.0 {
            changes += 1;
            if first.is_none() {
                first = Some(i);
            }
        }
    }
    let Some(i) = first else {
        return Err(not_bracketed);
    };
    // -inf endpoints are fine for bisection; clamp them for the secant.
    let g = |r: f64| f(r).max(-1e6);
    let rho = solve_bracketed(g, RealInterval::new(xs[i], xs[i + 1])?, SolverConfig::with_tol(1e-15))?;
    Ok(DecodingRadius {
        rho,
        residual: f(rho),
        sign_changes: changes,
    })
}
