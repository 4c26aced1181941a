use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const WILSON_Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let ph = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (ph + z2 / (2.0 * nf)) / denom;
    let half = z * (ph * (1.0 - ph) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Outcome counts of a seeded simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialTally {
    pub trials: u64,
    pub correct: u64,
    pub undetected: u64,
    pub erasure: u64,
    pub seed: u64,
}

impl TrialTally {
    pub fn empty(seed: u64) -> Self {
        TrialTally {
            trials: 0,
            correct: 0,
            undetected: 0,
            erasure: 0,
            seed,
        }
    }

    pub fn merge(self, other: Self) -> Self {
        TrialTally {
            trials: self.trials + other.trials,
            correct: self.correct + other.correct,
            undetected: self.undetected + other.undetected,
            erasure: self.erasure + other.erasure,
            seed: self.seed,
        }
    }

    pub fn rate(&self, count: u64) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            count as f64 / self.trials as f64
        }
    }

    pub fn undetected_interval(&self, z: f64) -> (f64, f64) {
        wilson_interval(self.undetected, self.trials, z)
    }

    pub fn erasure_interval(&self, z: f64) -> (f64, f64) {
        wilson_interval(self.erasure, self.trials, z)
    }

    pub fn correct_interval(&self, z: f64) -> (f64, f64) {
        wilson_interval(self.correct, self.trials, z)
    }

    /// Counts, rates and 95% Wilson intervals.
    pub fn summary(&self) -> TallySummary {
        TallySummary {
            tally: *self,
            correct_rate: self.rate(self.correct),
            undetected_rate: self.rate(self.undetected),
            erasure_rate: self.rate(self.erasure),
            correct_ci95: self.correct_interval(WILSON_Z95),
            undetected_ci95: self.undetected_interval(WILSON_Z95),
            erasure_ci95: self.erasure_interval(WILSON_Z95),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TallySummary {
    #[serde(flatten)]
    pub tally: TrialTally,
    pub correct_rate: f64,
    pub undetected_rate: f64,
    pub erasure_rate: f64,
    pub correct_ci95: (f64, f64),
    pub undetected_ci95: (f64, f64),
    pub erasure_ci95: (f64, f64),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(30, 100, WILSON_Z95);
        assert!(lo < 0.3 && 0.3 < hi);
        let (lo, hi) = wilson_interval(0, 100, WILSON_Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
    }
}
