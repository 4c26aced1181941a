//! Asymptotic exponents for binary linear codes on the BSC, in bits.
//!
//! The margin decoder with margin `t = τn` trades undetected errors for
//! erasures. [`tradeoff_bounds`] gives the lower bounds `M+` (undetected
//! error) and `M-` (error or erasure) for codes meeting the GV bound;
//! [`bz_bounds`] gives the older bounds they improve on.

mod profile;

pub use profile::{specific_code_bound, SpecificCodeBound, WeightProfile};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{binary_entropy as h, cross_entropy, divergence, entropy_inverse};
use crate::MarginKind;

/// Binary symmetric channel with crossover probability `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BscChannel {
    pub p: f64,
    /// `log2((1-p)/p)`
    pub nu: f64,
    /// `p(1-p)`
    pub u: f64,
}

impl BscChannel {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::domain("p", p, "(0, 1/2)"));
        }
        Ok(BscChannel {
            p,
            nu: ((1.0 - p) / p).log2(),
            u: p * (1.0 - p),
        })
    }

    /// `1 - h(p)`
    pub fn capacity(&self) -> f64 {
        1.0 - h(self.p)
    }
}

/// Rate interval that produced a piecewise value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    A,
    B,
    C,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::A => "a",
            Regime::B => "b",
            Regime::C => "c",
        }
    }
}

/// Relative weight of typical error vectors and of the competing codeword.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorGeometry {
    pub rho_typ: f64,
    pub omega_typ: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinaryBoundValue {
    /// Exponent in bits per symbol.
    pub value: f64,
    pub regime: Regime,
    pub valid: bool,
    pub diagnostics: Option<ErrorGeometry>,
}

impl BinaryBoundValue {
    fn new(value: f64, regime: Regime) -> Self {
        BinaryBoundValue {
            value,
            regime,
            valid: true,
            diagnostics: None,
        }
    }

    fn invalid(regime: Regime) -> Self {
        BinaryBoundValue {
            value: 0.0,
            regime,
            valid: false,
            diagnostics: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinaryLandmarks {
    pub rho0: f64,
    pub omega0: f64,
    pub r_e: f64,
    pub r_c: f64,
    pub rho0_plus: f64,
    pub rho0_minus: f64,
    pub omega0_tau: f64,
}

/// Relative GV distance `h⁻¹(1-R)`; `R` is clamped to `[0, 1]`.
pub fn delta_gv(rate: f64) -> f64 {
    entropy_inverse((1.0 - rate).clamp(0.0, 1.0)).unwrap_or(0.0)
}

fn rate_ok(rate: f64) -> bool {
    (0.0..=1.0).contains(&rate)
}

pub fn landmarks(ch: &BscChannel, tau: f64) -> BinaryLandmarks {
    let (p, u) = (ch.p, ch.u);
    let rho0 = p.sqrt() / (p.sqrt() + (1.0 - p).sqrt());
    let omega0 = 2.0 * rho0 * (1.0 - rho0);
    let s = (u + tau * tau * (1.0 - 2.0 * p).powi(2)).sqrt();
    let (rho0_plus, rho0_minus) = if tau == 0.0 {
        (rho0, rho0)
    } else {
        (
            (s - p * (1.0 + 2.0 * tau) + tau) / (1.0 - 2.0 * p),
            (s - p * (1.0 - 2.0 * tau) - tau) / (1.0 - 2.0 * p),
        )
    };
    let omega0_tau = 2.0 * ((u + tau * tau * (1.0 - 4.0 * u)).sqrt() - 2.0 * u) / (1.0 - 4.0 * u);
    BinaryLandmarks {
        rho0,
        omega0,
        r_e: 1.0 - h(omega0),
        r_c: 1.0 - h(rho0),
        rho0_plus,
        rho0_minus,
        omega0_tau,
    }
}

/// Gallager's lower bound `E₀(R, p)` on the reliability function.
pub fn gallager_exponent(rate: f64, ch: &BscChannel) -> BinaryBoundValue {
    if !rate_ok(rate) || rate > ch.capacity() {
        return BinaryBoundValue::invalid(Regime::C);
    }
    let lm = landmarks(ch, 0.0);
    let delta = delta_gv(rate);
    if rate <= lm.r_e {
        BinaryBoundValue::new(-delta * (2.0 * ch.u.sqrt()).log2(), Regime::A)
    } else if rate <= lm.r_c {
        BinaryBoundValue::new(divergence(lm.rho0, ch.p) + lm.r_c - rate, Regime::B)
    } else {
        BinaryBoundValue::new(divergence(delta, ch.p), Regime::C)
    }
}

/// Lower bounds on the undetected-error and erasure exponents obtained
/// by shifting `E₀` with the margin.
///
/// Returns `(Ee, Ex)`. `Ex` is clamped at zero and flagged invalid when
/// the shifted value is negative.
pub fn bz_bounds(rate: f64, ch: &BscChannel, tau: f64) -> (BinaryBoundValue, BinaryBoundValue) {
    let e0 = gallager_exponent(rate, ch);
    if !e0.valid || !(tau >= 0.0) {
        return (
            BinaryBoundValue::invalid(e0.regime),
            BinaryBoundValue::invalid(e0.regime),
        );
    }
    let r_c = landmarks(ch, 0.0).r_c;
    let shift = if rate < r_c {
        ch.nu * tau
    } else {
        let d = delta_gv(rate);
        2.0 * tau * (d * (1.0 - ch.p) / (ch.p * (1.0 - d))).log2()
    };
    let ee = BinaryBoundValue::new(e0.value + shift, e0.regime);
    let ex_value = e0.value - shift;
    let ex = if ex_value < 0.0 {
        BinaryBoundValue::invalid(e0.regime)
    } else {
        BinaryBoundValue::new(ex_value, e0.regime)
    };
    (ee, ex)
}

/// Trade-off bounds `(M+, M-)` on the undetected-error and erasure
/// exponents.
///
/// `M+` is valid for `R ≥ 1 - h(1/2 - τ)` and `M-` for `τ ≤ p/2`. The
/// diagnostics carry the typical error weight and competitor weight.
pub fn tradeoff_bounds(rate: f64, ch: &BscChannel, tau: f64) -> (BinaryBoundValue, BinaryBoundValue) {
    (
        margin_bound(rate, ch, tau, MarginKind::Error),
        margin_bound(rate, ch, tau, MarginKind::Erasure),
    )
}

/// One side of [`tradeoff_bounds`].
pub fn margin_bound(rate: f64, ch: &BscChannel, tau: f64, margin: MarginKind) -> BinaryBoundValue {
    let regime = margin_regime(rate, ch, tau, margin);
    if !rate_ok(rate) || !(0.0..0.5).contains(&tau) {
        return BinaryBoundValue::invalid(regime);
    }
    let valid = match margin {
        MarginKind::Error => rate >= 1.0 - h(0.5 - tau),
        MarginKind::Erasure => tau <= ch.p / 2.0,
    };
    if !valid {
        return BinaryBoundValue::invalid(regime);
    }
    let s = margin.sign();
    let lm = landmarks(ch, tau);
    let (rho_same, rho_other) = match margin {
        MarginKind::Error => (lm.rho0_plus, lm.rho0_minus),
        MarginKind::Erasure => (lm.rho0_minus, lm.rho0_plus),
    };
    let delta = delta_gv(rate);
    let value = match regime {
        Regime::A => {
            let x = 0.5 + s * tau / delta;
            if !(0.0..=1.0).contains(&x) {
                return BinaryBoundValue::invalid(regime);
            }
            -delta * (h(x) + 0.5 * ch.u.log2()) + s * ch.nu * tau
        }
        Regime::B => divergence(rho_same, ch.p) + 1.0 - rate - h(rho_other),
        Regime::C => {
            let x = delta + s * 2.0 * tau;
            if x > ch.p {
                divergence(x, ch.p)
            } else {
                0.0
            }
        }
    };
    BinaryBoundValue {
        value,
        regime,
        valid: true,
        diagnostics: Some(geometry(rate, ch, tau, margin, regime)),
    }
}

fn margin_regime(rate: f64, ch: &BscChannel, tau: f64, margin: MarginKind) -> Regime {
    let lm = landmarks(ch, tau);
    let rho_other = match margin {
        MarginKind::Error => lm.rho0_minus,
        MarginKind::Erasure => lm.rho0_plus,
    };
    if rate <= 1.0 - h(lm.omega0_tau) {
        Regime::A
    } else if rate <= 1.0 - h(rho_other) {
        Regime::B
    } else {
        Regime::C
    }
}

fn geometry(rate: f64, ch: &BscChannel, tau: f64, margin: MarginKind, regime: Regime) -> ErrorGeometry {
    let t = margin.sign() * tau;
    let delta = delta_gv(rate);
    let lm = landmarks(ch, tau);
    match regime {
        Regime::A => ErrorGeometry {
            rho_typ: (1.0 - delta) * ch.p + delta / 2.0 + t,
            omega_typ: delta,
        },
        Regime::B => ErrorGeometry {
            rho_typ: match margin {
                MarginKind::Error => lm.rho0_plus,
                MarginKind::Erasure => lm.rho0_minus,
            },
            omega_typ: lm.omega0_tau,
        },
        Regime::C => ErrorGeometry {
            rho_typ: delta + 2.0 * t,
            omega_typ: 2.0 * delta * (1.0 - delta) + 2.0 * t * (1.0 - 2.0 * delta),
        },
    }
}

/// Case-(b) value of `M±` written through `ω₀(τ)` instead of `ρ₀±`.
pub fn tradeoff_case_b_alternative(rate: f64, ch: &BscChannel, tau: f64, margin: MarginKind) -> f64 {
    let s = margin.sign();
    let om = landmarks(ch, tau).omega0_tau;
    1.0 - rate - h(om) - om * h(0.5 + s * tau / om) - om / 2.0 * ch.u.log2() + s * ch.nu * tau
}

/// Typical error weight, competitor weight and regime for the `M+` bound.
pub fn typical_error_geometry(rate: f64, ch: &BscChannel, tau: f64) -> (f64, f64, Regime) {
    let regime = margin_regime(rate, ch, tau, MarginKind::Error);
    let g = geometry(rate, ch, tau, MarginKind::Error, regime);
    (g.rho_typ, g.omega_typ, regime)
}

/// Rate `1 - h(p + 2τ)` above which `M-` vanishes; zero once `p + 2τ ≥ 1/2`.
pub fn nontrivial_rate_threshold(ch: &BscChannel, tau: f64) -> f64 {
    let x = ch.p + 2.0 * tau;
    if x >= 0.5 {
        0.0
    } else {
        1.0 - h(x)
    }
}

/// Smallest rate at which `M+` is valid, `1 - h(1/2 - τ)`.
pub fn min_valid_rate_plus(tau: f64) -> f64 {
    1.0 - h(0.5 - tau)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundedDistanceExponent {
    /// Exponent of undetected error for bounded-distance decoding, bits.
    pub value: f64,
    /// Whether the largest union-bound term sits at `ℓ = 0, i = w - t` on
    /// the check lattice.
    pub hypothesis_ok: bool,
}

/// Lattice size used for the maximality check in
/// [`bounded_distance_exponent`].
pub const HYPOTHESIS_CHECK_N: usize = 512;

/// Undetected-error exponent of bounded-distance decoding with radius `τn`.
pub fn bounded_distance_exponent(rate: f64, ch: &BscChannel, tau: f64) -> BoundedDistanceExponent {
    let p = ch.p;
    let delta = delta_gv(rate);
    let value = if rate >= 1.0 - h(p + tau * (1.0 - p)) {
        1.0 - rate - h(tau) - tau * (1.0 - p).log2()
    } else if tau == 0.0 {
        cross_entropy(delta, p)
    } else {
        cross_entropy(delta - tau, p) - delta * h(tau / delta)
    };
    BoundedDistanceExponent {
        value,
        hypothesis_ok: bounded_distance_hypothesis(rate, ch, tau, HYPOTHESIS_CHECK_N),
    }
}

/// For a GV-profile code of length `n`: is the largest term of the
/// bounded-distance union bound at `ℓ = 0, j = t`?
///
/// A term is indexed by the competitor weight `w`, the number `j` of its
/// ones left unflipped and the number `ℓ` of its zeros flipped.
pub fn bounded_distance_hypothesis(rate: f64, ch: &BscChannel, tau: f64, n: usize) -> bool {
    let nf = n as f64;
    let t = (tau * nf).floor() as usize;
    let (lp, lq) = (ch.p.log2(), (1.0 - ch.p).log2());
    let mut best = (f64::NEG_INFINITY, false);
    for w in 1..=n {
        let om = w as f64 / nf;
        let alpha = h(om) - (1.0 - rate);
        if alpha < 0.0 {
            continue;
        }
        for j in 0..=t.min(w) {
            for l in 0..=(t - j).min(n - w) {
                let jf = j as f64 / nf;
                let lf = l as f64 / nf;
                let a = om * h(jf / om) + if w < n { (1.0 - om) * h(lf / (1.0 - om)) } else { 0.0 };
                let e = alpha + a + (om - jf + lf) * lp + (1.0 - om + jf - lf) * lq;
                if e > best.0 + 1e-12 {
                    best = (e, l == 0 && j == t.min(w));
                }
            }
        }
    }
    best.1
}
