use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::Serialize;

use super::run_blocks;
use super::tally::{wilson_interval, TrialTally, WILSON_Z95};
use crate::error::{Error, Result};
use crate::spherical::AwgnChannel;

/// `M` points on the sphere of radius `√(An)` in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalCodebook {
    pub n: usize,
    pub a: f64,
    pub points: Vec<Vec<f64>>,
}

impl SphericalCodebook {
    /// Normalized i.i.d. Gaussian directions, seeded.
    pub fn random(m: usize, n: usize, ch: &AwgnChannel, seed: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument(format!("codebook with M={m}, n={n}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let radius = (ch.a * n as f64).sqrt();
        let points = (0..m)
            .map(|_| {
                let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.into_iter().map(|x| x * radius / norm).collect()
            })
            .collect();
        Ok(SphericalCodebook { n, a: ch.a, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn angle(x: &[f64], y: &[f64]) -> f64 {
    let (mut dot, mut nx, mut ny) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        dot += a * b;
        nx += a * a;
        ny += b * b;
    }
    (dot / (nx * ny).sqrt()).clamp(-1.0, 1.0).acos()
}

/// Index of the codeword at the smallest angle from `y` if every other
/// codeword is farther by at least `2τ` (and strictly farther); `None`
/// is an erasure.
pub fn margin_decode_awgn(codebook: &SphericalCodebook, y: &[f64], tau: f64) -> Option<usize> {
    let mut best = (f64::INFINITY, 0usize);
    let mut second = f64::INFINITY;
    for (i, x) in codebook.points.iter().enumerate() {
        let d = angle(x, y);
        if d < best.0 {
            second = best.0;
            best = (d, i);
        } else if d < second {
            second = d;
        }
    }
    let gap = second - best.0;
    (gap > 0.0 && gap >= 2.0 * tau).then_some(best.1)
}

/// Send a uniformly chosen codeword through unit-variance Gaussian noise
/// `trials` times and tally the margin decoder's outcomes.
pub fn simulate_awgn(codebook: &SphericalCodebook, tau: f64, trials: u64, seed: u64) -> TrialTally {
    let m = codebook.len();
    let parts = run_blocks(trials, seed, TrialTally::empty(seed), |rng, len, mut tally| {
        let mut y = vec![0.0; codebook.n];
        for _ in 0..len {
            let sent = rng.random_range(0..m);
            for (yi, xi) in y.iter_mut().zip(&codebook.points[sent]) {
                let z: f64 = rng.sample(StandardNormal);
                *yi = xi + z;
            }
            match margin_decode_awgn(codebook, &y, tau) {
                Some(i) if i == sent => tally.correct += 1,
                Some(_) => tally.undetected += 1,
                None => tally.erasure += 1,
            }
            tally.trials += 1;
        }
        tally
    });
    parts.into_iter().fold(TrialTally::empty(seed), TrialTally::merge)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeExitEstimate {
    pub n: usize,
    pub phi: f64,
    pub trials: u64,
    pub exits: u64,
    pub seed: u64,
    pub estimate: f64,
    pub ci95: (f64, f64),
}

/// Estimate of the probability that noise moves the codeword `x` out of
/// the cone of half-angle `φ` about it.
///
/// By rotational symmetry only the noise component along `x` and the
/// squared norm of the orthogonal part matter; these are sampled as a
/// standard normal and a `χ²(n−1)` variable.
pub fn simulate_cone_exit(n: usize, ch: &AwgnChannel, phi: f64, trials: u64, seed: u64) -> Result<ConeExitEstimate> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n}, need n >= 2")));
    }
    if !(phi > 0.0 && phi < std::f64::consts::PI) {
        return Err(Error::domain("phi", phi, "(0, pi)"));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("zero trials".into()));
    }
    let radius = (ch.a * n as f64).sqrt();
    let chi = ChiSquared::new((n - 1) as f64).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let parts = run_blocks(trials, seed, 0u64, |rng, len, mut exits| {
        for _ in 0..len {
            let z1: f64 = rng.sample(StandardNormal);
            let perp = chi.sample(rng).sqrt();
            if perp.atan2(radius + z1) > phi {
                exits += 1;
            }
        }
        exits
    });
    let exits: u64 = parts.into_iter().sum();
    Ok(ConeExitEstimate {
        n,
        phi,
        trials,
        exits,
        seed,
        estimate: exits as f64 / trials as f64,
        ci95: wilson_interval(exits, trials, WILSON_Z95),
    })
}
