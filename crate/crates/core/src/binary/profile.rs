use serde::Serialize;

use super::{gallager_exponent, BscChannel};
use crate::error::{Error, Result};
use crate::numerics::{binary_entropy, maximize_unimodal, RealInterval, SolverConfig};

/// Exponential weight profile `α(ω) = n⁻¹ log2 A_{ωn}` on a grid,
/// linearly interpolated and `-inf` outside the support.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    points: Vec<(f64, f64)>,
}

impl WeightProfile {
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("empty weight profile".into()));
        }
        if points.iter().any(|&(w, a)| !(0.0..=1.0).contains(&w) || a.is_nan()) {
            return Err(Error::InvalidArgument("profile weight outside [0, 1]".into()));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        Ok(WeightProfile { points })
    }

    /// Profile of a code meeting the GV bound: `h(ω) - (1-R)` where that is
    /// nonnegative, sampled at `steps + 1` points.
    pub fn gilbert_varshamov(rate: f64, steps: usize) -> Result<Self> {
        let d = super::delta_gv(rate);
        if d <= 0.0 {
            return Err(Error::domain("rate", rate, "[0, 1)"));
        }
        let (lo, hi) = (d, 1.0 - d);
        let steps = steps.max(1);
        let pts = (0..=steps)
            .map(|i| {
                let w = lo + (hi - lo) * i as f64 / steps as f64;
                (w, ensemble_alpha(w, rate))
            })
            .collect();
        WeightProfile::new(pts)
    }

    /// Profile with a single weight class of subexponential size.
    pub fn single(omega: f64) -> Result<Self> {
        WeightProfile::new(vec![(omega, 0.0)])
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn support(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    pub fn eval(&self, omega: f64) -> f64 {
        let pts = &self.points;
        let (lo, hi) = self.support();
        if omega < lo || omega > hi {
            return f64::NEG_INFINITY;
        }
        let i = pts.partition_point(|&(w, _)| w < omega);
        if i < pts.len() && pts[i].0 == omega {
            return pts[i].1;
        }
        let (w0, a0) = pts[i - 1];
        let (w1, a1) = pts[i];
        a0 + (a1 - a0) * (omega - w0) / (w1 - w0)
    }
}

/// Ensemble profile `max(0, h(ω) - (1-R))`.
pub fn ensemble_alpha(omega: f64, rate: f64) -> f64 {
    (binary_entropy(omega) - (1.0 - rate)).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecificCodeBound {
    /// `max(distance_term, E₀ - kappa)`
    pub value: f64,
    /// `-max_ω (α(ω) + (ω/2) log2 4u)`
    pub distance_term: f64,
    /// Largest excess of the profile over the ensemble profile.
    pub kappa: f64,
}

const PROFILE_GRID: usize = 10_000;

/// Exponent bound for a specific code from its weight profile.
///
/// The zero weight is excluded from both maximizations.
pub fn specific_code_bound(profile: &WeightProfile, rate: f64, ch: &BscChannel) -> Result<SpecificCodeBound> {
    let slope = 0.5 * (4.0 * ch.u).log2();
    let distance = max_over_profile(profile, |w, a| a + w * slope)
        .ok_or_else(|| Error::InvalidArgument("profile has no nonzero weight".into()))?;
    let kappa = max_over_profile(profile, |w, a| a - ensemble_alpha(w, rate)).unwrap_or(0.0);
    let distance_term = -distance;
    let e0 = gallager_exponent(rate, ch);
    let value = if e0.valid {
        distance_term.max(e0.value - kappa)
    } else {
        distance_term
    };
    Ok(SpecificCodeBound {
        value,
        distance_term,
        kappa,
    })
}

/// Max of `g(ω, α(ω))` over the nonzero part of the profile support: grid
/// nodes, a dense scan, and a local refinement around the best scan point.
fn max_over_profile<G>(profile: &WeightProfile, g: G) -> Option<f64>
where
    G: Fn(f64, f64) -> f64,
{
    let f = |w: f64| {
        let a = profile.eval(w);
        if a == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            g(w, a)
        }
    };
    let mut best: Option<(f64, f64)> = None;
    fn consider(best: &mut Option<(f64, f64)>, w: f64, v: f64) {
        if w > 0.0 && v > f64::NEG_INFINITY && best.is_none_or(|(_, b)| v > b) {
            *best = Some((w, v));
        }
    }
    for &(w, a) in profile.points() {
        consider(&mut best, w, g(w, a));
    }
    let (lo, hi) = profile.support();
    if hi > lo {
        for i in 0..=PROFILE_GRID {
            let w = lo + (hi - lo) * i as f64 / PROFILE_GRID as f64;
            consider(&mut best, w, f(w));
        }
        if let Some((w, _)) = best {
            let step = (hi - lo) / PROFILE_GRID as f64;
            let a = (w - step).max(lo.max(f64::MIN_POSITIVE));
            let b = (w + step).min(hi);
            if let Ok(iv) = RealInterval::new(a, b) {
                if let Ok((x, v)) = maximize_unimodal(f, iv, SolverConfig::default()) {
                    consider(&mut best, x, v);
                }
            }
        }
    }
    best.map(|(_, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation() {
        let p = WeightProfile::new(vec![(0.5, 1.0), (0.1, 0.0)]).unwrap();
        assert!((p.eval(0.3) - 0.5).abs() < 1e-15);
        assert_eq!(p.eval(0.6), f64::NEG_INFINITY);
        assert_eq!(p.eval(0.1), 0.0);
    }

    #[test]
    fn empty_profile_rejected() {
        assert!(WeightProfile::new(vec![]).is_err());
        let only_zero = WeightProfile::new(vec![(0.0, 0.0)]).unwrap();
        let ch = BscChannel::new(0.07).unwrap();
        assert!(specific_code_bound(&only_zero, 0.3, &ch).is_err());
    }
}
