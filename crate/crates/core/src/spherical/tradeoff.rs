use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::implicit::{big_g, big_g_derivative, decoding_radius_detail, elias_theta};
use super::{esp, shannon_angles, theta_s, AwgnChannel, SphericalBoundValue, SphericalDiagnostics, SphericalRegime};
use crate::error::{Error, Result};
use crate::numerics::{solve_bracketed, RealInterval, SolverConfig};
use crate::MarginKind;

/// Saddle point `φ₀` of the cone integrand for a neighbor at angle `θ`.
pub fn phi0(theta: f64, tau: f64, ch: &AwgnChannel) -> f64 {
    let a = ch.a;
    let e = theta + 2.0 * tau;
    let s2 = (4.0 + a * e.sin().powi(2)) / (2.0 * (2.0 + a + a * e.cos()));
    s2.clamp(0.0, 1.0).sqrt().asin()
}

/// Exponent of the probability that the decoder with radius `ρ` and margin
/// `τ` prefers a neighbor at angle `θ`; returns `(value, φ)` with `φ` the
/// active point, `min(φ₀, ρ)`.
pub fn f_exponent(theta: f64, tau: f64, ch: &AwgnChannel, rho: f64) -> Result<(f64, f64)> {
    let edge = theta / 2.0 + tau;
    if !(edge < rho && rho <= FRAC_PI_2 && edge > 0.0) {
        return Err(Error::EmptyInterval { lo: edge, hi: rho });
    }
    let p0 = phi0(theta, tau, ch);
    if !(p0 > edge) {
        return Err(Error::InvalidArgument(format!(
            "saddle {p0} not above theta/2 + tau = {edge}"
        )));
    }
    let phi = p0.min(rho);
    let v = 1.0 - (edge.tan() / phi.tan()).powi(2);
    if !(v > 0.0) {
        return Err(Error::EmptyInterval { lo: edge, hi: phi });
    }
    Ok((esp(phi, ch)? - 0.5 * v.ln(), phi))
}

/// Which expression is used for the expurgation and straight-line parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpurgationForm {
    /// `(A/4)(1 − cos(θ + 2τ))`, the saddle-point value of the cone
    /// integral, with `θ₁` the root of `cot x = (A/4) sin(x + 2τ)`.
    #[default]
    Laplace,
    /// `(A/4)(1 − cos(θ + τ)) − G(θ, τ)` with `θ₁` the stationary point
    /// of `ln sin x + (A/4) cos(x + τ) + G(x, τ)`.
    WithG,
}

fn expurgation_value(theta: f64, tau: f64, ch: &AwgnChannel, form: ExpurgationForm) -> Result<f64> {
    let q = ch.a / 4.0;
    match form {
        ExpurgationForm::Laplace => Ok(q * (1.0 - (theta + 2.0 * tau).cos())),
        ExpurgationForm::WithG => Ok(q * (1.0 - (theta + tau).cos()) - big_g(theta, tau, ch)?),
    }
}

/// Derivative in `x` of the function whose stationary point is `θ₁`.
pub fn expurgation_slope(x: f64, tau: f64, ch: &AwgnChannel, form: ExpurgationForm) -> Result<f64> {
    let q = ch.a / 4.0;
    match form {
        ExpurgationForm::Laplace => Ok(1.0 / x.tan() - q * (x + 2.0 * tau).sin()),
        ExpurgationForm::WithG => Ok(1.0 / x.tan() - q * (x + tau).sin() + big_g_derivative(x, tau, ch)?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalLandmarks {
    pub theta_e: f64,
    pub theta_c: f64,
    pub theta_1: f64,
    pub theta_2: f64,
    pub r_star: f64,
    pub theta_1_residual: f64,
    pub r_star_residual: f64,
}

const LANDMARK_SCAN: usize = 256;

fn theta_1(tau: f64, ch: &AwgnChannel, form: ExpurgationForm) -> Result<f64> {
    let (lo, hi) = (1e-6, FRAC_PI_2);
    let f = |x: f64| expurgation_slope(x, tau, ch, form).unwrap_or(f64::NAN);
    let step = (hi - lo) / LANDMARK_SCAN as f64;
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=LANDMARK_SCAN {
        let b = lo + step * i as f64;
        let fb = f(b);
        if !fa.is_nan() && !fb.is_nan() && fa.signum() != fb.signum() {
            return solve_bracketed(f, RealInterval::new(a, b)?, SolverConfig::with_tol(1e-15));
        }
        a = b;
        fa = fb;
    }
    Err(Error::RootNotBracketed {
        equation: "expurgation angle",
        lo,
        hi,
    })
}

/// Angle of the neighbor that dominates at rate `R`, `θ(ρ(R))`.
fn dominant_angle(rate: f64, tau: f64, ch: &AwgnChannel) -> Option<f64> {
    let rho = decoding_radius_detail(rate, tau, ch).ok()?.rho;
    elias_theta(rho, tau).ok()
}

fn r_star(theta1: f64, tau: f64, ch: &AwgnChannel) -> Result<f64> {
    let cap = ch.capacity();
    let d = |r: f64| dominant_angle(r, tau, ch).map_or(f64::NAN, |t| t - theta1);
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..LANDMARK_SCAN {
        let r = cap * i as f64 / LANDMARK_SCAN as f64;
        let v = d(r);
        if v.is_nan() {
            prev = None;
            continue;
        }
        if v == 0.0 {
            return Ok(r);
        }
        if let Some((pr, pv)) = prev {
            if pv.signum() != v.signum() {
                return solve_bracketed(d, RealInterval::new(pr, r)?, SolverConfig::with_tol(1e-15));
            }
        }
        prev = Some((r, v));
    }
    Err(Error::RootNotBracketed {
        equation: "theta(rho(R)) = theta_1",
        lo: 0.0,
        hi: cap,
    })
}

/// Landmarks of `M(R)` with the default [`ExpurgationForm::Laplace`].
/// `tau` is signed: negative for the erasure side.
pub fn spherical_landmarks(tau: f64, ch: &AwgnChannel) -> Result<SphericalLandmarks> {
    spherical_landmarks_with(tau, ch, ExpurgationForm::default())
}

pub fn spherical_landmarks_with(tau: f64, ch: &AwgnChannel, form: ExpurgationForm) -> Result<SphericalLandmarks> {
    let (theta_e, theta_c) = shannon_angles(ch);
    let t1 = theta_1(tau, ch, form)?;
    let rs = r_star(t1, tau, ch)?;
    let r_star_residual = dominant_angle(rs, tau, ch).map_or(f64::NAN, |t| t - t1);
    Ok(SphericalLandmarks {
        theta_e,
        theta_c,
        theta_1: t1,
        theta_2: theta_s(rs)?,
        r_star: rs,
        theta_1_residual: expurgation_slope(t1, tau, ch, form)?,
        r_star_residual,
    })
}

/// `M(R)` for one channel, margin and side, with landmarks solved once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalBounds {
    pub channel: AwgnChannel,
    /// Signed margin: `−τ` on the erasure side.
    pub tau: f64,
    pub form: ExpurgationForm,
    pub landmarks: SphericalLandmarks,
}

impl SphericalBounds {
    pub fn new(ch: &AwgnChannel, tau: f64, kind: MarginKind, form: ExpurgationForm) -> Result<Self> {
        if !(tau >= 0.0) {
            return Err(Error::domain("tau", tau, "[0, inf)"));
        }
        let tau = kind.signed(tau);
        Ok(SphericalBounds {
            channel: *ch,
            tau,
            form,
            landmarks: spherical_landmarks_with(tau, ch, form)?,
        })
    }

    pub fn exponent(&self, rate: f64) -> SphericalBoundValue {
        let ch = &self.channel;
        let tau = self.tau;
        let lm = &self.landmarks;
        let Ok(ts) = theta_s(rate) else {
            return SphericalBoundValue::invalid(SphericalRegime::Expurgation);
        };
        if rate > ch.capacity() {
            return SphericalBoundValue::invalid(SphericalRegime::SpherePacking);
        }
        let (regime, value, diag) = if ts >= lm.theta_1 {
            let v = expurgation_value(ts, tau, ch, self.form);
            let diag = SphericalDiagnostics {
                phi0: Some(phi0(ts, tau, ch)),
                rho: None,
                theta_star: Some(ts),
            };
            (SphericalRegime::Expurgation, v, diag)
        } else if ts >= lm.theta_2 {
            let v = expurgation_value(lm.theta_1, tau, ch, self.form).map(|e| e + (ts.sin() / lm.theta_1.sin()).ln());
            let diag = SphericalDiagnostics {
                phi0: Some(phi0(lm.theta_1, tau, ch)),
                rho: None,
                theta_star: Some(lm.theta_1),
            };
            (SphericalRegime::Straight, v, diag)
        } else {
            let rho = decoding_radius_detail(rate, tau, ch).map(|d| d.rho);
            let cap_angle = ch.capacity_angle();
            let v = rho.clone().and_then(|r| {
                // Below the capacity angle the cone is left with probability → 1.
                if r < cap_angle {
                    Err(Error::domain("rho", r, "[arccot sqrt(A), pi/2]"))
                } else {
                    esp(r, ch)
                }
            });
            let diag = SphericalDiagnostics {
                phi0: None,
                rho: rho.as_ref().ok().copied(),
                theta_star: rho.as_ref().ok().and_then(|&r| elias_theta(r, tau).ok()),
            };
            (SphericalRegime::SpherePacking, v, diag)
        };
        match value {
            Ok(v) if v.is_finite() => SphericalBoundValue {
                value: v,
                regime,
                valid: true,
                diagnostics: diag,
            },
            _ => SphericalBoundValue {
                diagnostics: diag,
                ..SphericalBoundValue::invalid(regime)
            },
        }
    }
}

/// `M(R)` on the error or erasure side, with the default expurgation form.
///
/// Solves the landmarks on every call; build a [`SphericalBounds`] to
/// evaluate many rates.
pub fn tradeoff_exponent(rate: f64, ch: &AwgnChannel, tau: f64, kind: MarginKind) -> SphericalBoundValue {
    match SphericalBounds::new(ch, tau, kind, ExpurgationForm::default()) {
        Ok(b) => b.exponent(rate),
        Err(_) => SphericalBoundValue::invalid(SphericalRegime::Expurgation),
    }
}
