use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::tradeoff::f_exponent;
use super::{esp, theta_s, AwgnChannel};
use crate::error::{Error, Result};
use crate::numerics::{minimize_unimodal, RealInterval, SolverConfig};

type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Exponential growth rate `b(θ)` (nats) of the number of codeword pairs
/// at angle `θ`, on a declared support.
#[derive(Clone)]
pub struct DistanceProfile {
    b: ProfileFn,
    lo: f64,
    hi: f64,
}

impl fmt::Debug for DistanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistanceProfile")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish_non_exhaustive()
    }
}

impl DistanceProfile {
    pub fn new<F>(b: F, lo: f64, hi: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lo > 0.0 && lo <= hi && hi < PI) {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(DistanceProfile { b: Arc::new(b), lo, hi })
    }

    /// `β(R, θ) = R + ln sin θ` on `[θ_s(R), π − θ_s(R)]`.
    pub fn beta(rate: f64) -> Result<Self> {
        let ts = theta_s(rate)?;
        DistanceProfile::new(move |t: f64| rate + t.sin().ln(), ts, PI - ts)
    }

    /// A single neighbor angle of subexponential multiplicity.
    pub fn single(theta: f64) -> Result<Self> {
        DistanceProfile::new(|_| 0.0, theta, theta)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        if theta < self.lo || theta > self.hi {
            f64::NEG_INFINITY
        } else {
            (self.b)(theta)
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

/// Grid step used when scanning profile supports, in radians.
pub(crate) const PROFILE_STEP: f64 = 1e-4;

/// Minimum of `g` over `[lo, hi]` by a grid of step [`PROFILE_STEP`] and a
/// local refinement around the best grid point.
pub(crate) fn grid_min<G>(g: G, lo: f64, hi: f64) -> f64
where
    G: Fn(f64) -> f64,
{
    if hi <= lo {
        return g(lo);
    }
    let n = ((hi - lo) / PROFILE_STEP).ceil().max(1.0) as usize;
    let step = (hi - lo) / n as f64;
    let mut best = (lo, f64::INFINITY);
    for i in 0..=n {
        let x = if i == n { hi } else { lo + step * i as f64 };
        let v = g(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    let a = (best.0 - step).max(lo);
    let b = (best.0 + step).min(hi);
    if let Ok(iv) = RealInterval::new(a, b) {
        if let Ok((_, v)) = minimize_unimodal(&g, iv, SolverConfig::default()) {
            if v < best.1 {
                best.1 = v;
            }
        }
    }
    best.1
}

/// Exponent of the union bound for a code with distance profile `b` decoded
/// with radius `ρ` and signed margin `τ`:
/// `min(min_θ [−b(θ) + F(θ)], E_sp(ρ))`.
///
/// Neighbors at `θ ≥ 2(ρ − τ)` cannot win inside the decoding cone and
/// are skipped.
pub fn profile_exponent(profile: &DistanceProfile, ch: &AwgnChannel, tau: f64, rho: f64) -> Result<f64> {
    let (lo, hi) = profile.support();
    if !(lo / 2.0 + tau < rho) {
        return Err(Error::EmptyInterval {
            lo: lo / 2.0 + tau,
            hi: rho,
        });
    }
    let tail = esp(rho, ch)?;
    let top = hi.min(2.0 * (rho - tau) - 1e-12);
    if top < lo {
        return Ok(tail);
    }
    let term = |t: f64| match f_exponent(t, tau, ch, rho) {
        Ok((f, _)) => f - profile.eval(t),
        Err(_) => f64::INFINITY,
    };
    Ok(grid_min(term, lo, top).min(tail))
}
