//! Exponents for spherical codes on the AWGN channel, in nats.
//!
//! Codewords lie on the sphere of radius `√(An)` and distances are angles.
//! [`SphericalBounds`] evaluates the margin trade-off `M(R)` for the error
//! and erasure sides; [`profile_exponent`] evaluates the same bound for an
//! arbitrary distance profile and doubles as its oracle.

mod detection;
mod implicit;
mod profile;
mod tradeoff;

pub use detection::{
    bounded_distance_exponent_s, bounded_distance_phi0, elias_rate, rankin_rate, undetected_error_exponent,
    undetected_taylor_defect, UndetectedErrorExponent, BOUNDED_DISTANCE_EPS,
};
pub use implicit::{
    big_g, big_g_derivative, decoding_radius, decoding_radius_detail, decoding_residual, elias_residual, elias_theta,
    DecodingRadius,
};
pub use profile::{profile_exponent, DistanceProfile};
pub use tradeoff::{
    expurgation_slope, f_exponent, phi0, spherical_landmarks, spherical_landmarks_with, tradeoff_exponent,
    ExpurgationForm, SphericalBounds, SphericalLandmarks,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// Gaussian channel with signal-to-noise ratio `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AwgnChannel {
    pub a: f64,
    #[serde(skip)]
    g_offset: f64,
}

impl AwgnChannel {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::domain("A", a, "(0, inf)"));
        }
        Ok(AwgnChannel { a, g_offset: 0.0 })
    }

    /// Adds a constant to every evaluation of [`big_g`]. Negative control
    /// for the validation suite only.
    #[doc(hidden)]
    pub fn with_g_offset(mut self, offset: f64) -> Self {
        self.g_offset = offset;
        self
    }

    pub(crate) fn g_offset(&self) -> f64 {
        self.g_offset
    }

    /// `½ ln(1 + A)`
    pub fn capacity(&self) -> f64 {
        0.5 * self.a.ln_1p()
    }

    /// `arccot √A`, the angle at which `E_sp` vanishes.
    pub fn capacity_angle(&self) -> f64 {
        (1.0 / self.a.sqrt()).atan()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphericalRegime {
    Expurgation,
    Straight,
    SpherePacking,
}

impl SphericalRegime {
    pub fn label(self) -> &'static str {
        match self {
            SphericalRegime::Expurgation => "expurgation",
            SphericalRegime::Straight => "straight",
            SphericalRegime::SpherePacking => "sphere-packing",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SphericalDiagnostics {
    pub phi0: Option<f64>,
    pub rho: Option<f64>,
    pub theta_star: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalBoundValue {
    /// Exponent in nats per dimension.
    pub value: f64,
    pub regime: SphericalRegime,
    pub valid: bool,
    pub diagnostics: SphericalDiagnostics,
}

impl SphericalBoundValue {
    pub(crate) fn invalid(regime: SphericalRegime) -> Self {
        SphericalBoundValue {
            value: 0.0,
            regime,
            valid: false,
            diagnostics: SphericalDiagnostics::default(),
        }
    }
}

/// `arcsin e^{-R}`, the GV-type distance of spherical codes of rate `R`.
pub fn theta_s(rate: f64) -> Result<f64> {
    if !(rate >= 0.0) {
        return Err(Error::domain("R", rate, "[0, inf)"));
    }
    Ok((-rate).exp().asin())
}

/// Inverse of [`theta_s`]: `-ln sin θ`.
pub fn rate_of_angle(theta: f64) -> f64 {
    -theta.sin().ln()
}

/// `g(φ) = ½(√A cos φ + √(A cos²φ + 4))`
pub fn g(phi: f64, ch: &AwgnChannel) -> f64 {
    let c = phi.cos();
    0.5 * (ch.a.sqrt() * c + (ch.a * c * c + 4.0).sqrt())
}

/// Sphere-packing exponent: decay rate of the probability that the noise
/// pushes a codeword out of the cone of half-angle `φ` around it.
pub fn esp(phi: f64, ch: &AwgnChannel) -> Result<f64> {
    let gv = g(phi, ch);
    let arg = gv * phi.sin();
    if !(phi > 0.0 && phi < std::f64::consts::PI) || !(arg > 0.0) {
        return Err(Error::domain("phi", phi, "(0, pi)"));
    }
    Ok(ch.a / 2.0 - ch.a.sqrt() / 2.0 * gv * phi.cos() - arg.ln())
}

/// `(θ_e, θ_c)`: the angles where the classical bound switches from the
/// expurgation to the straight-line part and from there to sphere packing.
pub fn shannon_angles(ch: &AwgnChannel) -> (f64, f64) {
    let a = ch.a;
    let root = (1.0 + a * a / 4.0).sqrt();
    let csc2_e = 0.5 + 0.5 * root;
    let csc2_c = 0.5 + a / 4.0 + 0.5 * root;
    ((1.0 / csc2_e.sqrt()).asin(), (1.0 / csc2_c.sqrt()).asin())
}

/// Classical lower bound `E₀(θ_s(R), A)` on the reliability function.
pub fn shannon_exponent(rate: f64, ch: &AwgnChannel) -> SphericalBoundValue {
    let Ok(th) = theta_s(rate) else {
        return SphericalBoundValue::invalid(SphericalRegime::Expurgation);
    };
    if rate > ch.capacity() {
        return SphericalBoundValue::invalid(SphericalRegime::SpherePacking);
    }
    shannon_at_angle(th, ch)
}

/// [`shannon_exponent`] parametrized by the angle `θ = θ_s(R)`.
pub fn shannon_at_angle(theta: f64, ch: &AwgnChannel) -> SphericalBoundValue {
    let (te, tc) = shannon_angles(ch);
    let (value, regime) = if theta >= te {
        (ch.a / 4.0 * (1.0 - theta.cos()), SphericalRegime::Expurgation)
    } else if theta >= tc {
        (
            ch.a / 4.0 * (1.0 - te.cos()) + (theta.sin() / te.sin()).ln(),
            SphericalRegime::Straight,
        )
    } else {
        match esp(theta, ch) {
            Ok(v) => (v, SphericalRegime::SpherePacking),
            Err(_) => return SphericalBoundValue::invalid(SphericalRegime::SpherePacking),
        }
    };
    SphericalBoundValue {
        value,
        regime,
        valid: true,
        diagnostics: SphericalDiagnostics {
            theta_star: Some(theta),
            ..Default::default()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_guard() {
        assert!(AwgnChannel::new(0.0).is_err());
        assert!(AwgnChannel::new(f64::INFINITY).is_err());
    }

    #[test]
    fn theta_s_endpoints() {
        assert_eq!(theta_s(0.0).unwrap(), std::f64::consts::FRAC_PI_2);
        assert!(theta_s(-0.1).is_err());
    }

    #[test]
    fn esp_domain() {
        let ch = AwgnChannel::new(4.0).unwrap();
        assert!(esp(0.0, &ch).is_err());
        assert!(esp(std::f64::consts::PI, &ch).is_err());
    }

    #[test]
    fn above_capacity() {
        let ch = AwgnChannel::new(4.0).unwrap();
        assert!(!shannon_exponent(0.9, &ch).valid);
    }
}
