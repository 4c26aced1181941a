//! Finite-length union bounds and an exhaustive decoding oracle.
//!
//! Everything here is exact at a given blocklength: the binary union bound
//! sums over the weight distribution with triangle counts, the AWGN bound
//! integrates cone probabilities numerically, and
//! [`exact_margin_probability`] enumerates every received word.

mod awgn;
mod exact;

pub use awgn::{awgn_union_bound, ln_cap_area, ln_cone_probability, QUADRATURE_POINTS};
pub use exact::{
    exact_margin_counts, exact_margin_probability, MarginCounts, MarginProbabilities, EXACT_MAX_N, EXACT_MAX_WORK,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{ln_binomial, ln_factorials, log_sum, LogSum};
use crate::MarginKind;

/// Weight distribution `A_0..A_n`, stored as natural logs (`-inf` for 0).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightDistribution {
    n: usize,
    ln_counts: Vec<f64>,
}

impl WeightDistribution {
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidArgument("empty weight distribution".into()));
        }
        Ok(WeightDistribution {
            n: counts.len() - 1,
            ln_counts: counts
                .iter()
                .map(|&c| if c == 0 { f64::NEG_INFINITY } else { (c as f64).ln() })
                .collect(),
        })
    }

    pub fn from_ln_counts(ln_counts: Vec<f64>) -> Result<Self> {
        if ln_counts.is_empty() || ln_counts.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::InvalidArgument("bad log weight distribution".into()));
        }
        Ok(WeightDistribution {
            n: ln_counts.len() - 1,
            ln_counts,
        })
    }

    /// Weights of a code meeting the GV bound: `A_0 = 1` and
    /// `⌊C(n,w) 2^{-n(1-R)}⌋` for `w ≥ 1`.
    pub fn gv_ensemble(n: usize, rate: f64) -> Result<Self> {
        if n == 0 || !(0.0..=1.0).contains(&rate) {
            return Err(Error::InvalidArgument(format!("GV ensemble with n={n}, R={rate}")));
        }
        let shift = n as f64 * (1.0 - rate) * std::f64::consts::LN_2;
        let mut ln_counts = vec![f64::NEG_INFINITY; n + 1];
        ln_counts[0] = 0.0;
        for (w, slot) in ln_counts.iter_mut().enumerate().skip(1) {
            let la = ln_binomial(n as u64, w as u64)? - shift;
            *slot = floor_ln(la);
        }
        Ok(WeightDistribution { n, ln_counts })
    }

    /// All `2^n` words: `A_w = C(n, w)`.
    pub fn binomial(n: usize) -> Self {
        let ln_counts = (0..=n)
            .map(|w| ln_binomial(n as u64, w as u64).unwrap_or(f64::NEG_INFINITY))
            .collect();
        WeightDistribution { n, ln_counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ln_count(&self, w: usize) -> f64 {
        self.ln_counts.get(w).copied().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn count(&self, w: usize) -> f64 {
        self.ln_count(w).exp()
    }

    pub fn ln_counts(&self) -> &[f64] {
        &self.ln_counts
    }

    /// Smallest nonzero weight present.
    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&w| self.ln_counts[w] > f64::NEG_INFINITY)
    }

    /// `ln Σ_w A_w`
    pub fn ln_size(&self) -> f64 {
        log_sum(&self.ln_counts)
    }
}

/// `ln ⌊e^x⌋`, `-inf` when the floor is zero.
fn floor_ln(x: f64) -> f64 {
    if x < 0.0 {
        f64::NEG_INFINITY
    } else if x < 36.0 {
        x.exp().floor().ln()
    } else {
        x
    }
}

/// Margin `t` and optional decoding-radius override for the binary bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct MarginParams {
    pub t: usize,
    pub r: Option<usize>,
}

/// Number of words at distance `i` from `x` and `j` from `y` when
/// `d(x, y) = k`, in Hamming space of length `n`.
pub fn triangle_count(n: usize, k: usize, i: usize, j: usize) -> u128 {
    if i > n || j > n || k > n {
        return 0;
    }
    let twice = k as i64 + i as i64 - j as i64;
    if twice < 0 || twice % 2 != 0 {
        return 0;
    }
    let s = (twice / 2) as usize;
    if s > k || s > i || i - s > n - k {
        return 0;
    }
    binom_u128(k, s) * binom_u128(n - k, i - s)
}

fn binom_u128(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for m in 0..k {
        c = c * (n - m) as u128 / (m + 1) as u128;
    }
    c
}

/// Natural log of the union bound on `P(F+)` (undetected error) or `P(F-)`
/// (error or erasure) for margin decoding of a code with weight
/// distribution `wd` on a BSC with crossover `p`.
///
/// Competitor weights `w` contribute error patterns of weight `e ≤ r` that
/// hit at least `⌈w/2⌉ ± t` of the competitor's support; patterns heavier
/// than `r` are bounded by the binomial tail. Without a competitor the
/// radius defaults to `n` and the bound is `-inf`.
pub fn binary_union_bound(wd: &WeightDistribution, p: f64, m: MarginParams, mode: MarginKind) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::domain("p", p, "(0, 1/2)"));
    }
    let n = wd.n;
    let t = m.t as i64;
    let sign = match mode {
        MarginKind::Error => 1,
        MarginKind::Erasure => -1,
    };
    let r: i64 = match (m.r, wd.min_distance()) {
        (Some(r), _) => r as i64,
        (None, Some(d)) => d as i64 + sign * 2 * t,
        (None, None) => n as i64,
    };
    let lf = ln_factorials(n);
    let lc = |a: usize, b: usize| lf[a] - lf[b] - lf[a - b];
    let (lp, lq) = (p.ln(), (1.0 - p).ln());

    let per_weight: Vec<f64> = (1..=n)
        .into_par_iter()
        .map(|w| {
            let la = wd.ln_counts[w];
            if la == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            let i_lo = (w.div_ceil(2) as i64 + sign * t).max(0) as usize;
            let mut acc = LogSum::new();
            let e_hi = r.min(n as i64);
            if e_hi < i_lo as i64 {
                return f64::NEG_INFINITY;
            }
            for e in i_lo..=e_hi as usize {
                let mut inner = LogSum::new();
                let i_min = i_lo.max(e.saturating_sub(n - w));
                for i in i_min..=e.min(w) {
                    inner.add(lc(w, i) + lc(n - w, e - i));
                }
                acc.add(inner.value() + e as f64 * lp + (n - e) as f64 * lq);
            }
            la + acc.value()
        })
        .collect();

    let mut total = LogSum::new();
    for v in per_weight {
        total.add(v);
    }
    let tail_from = (r + 1).max(0) as usize;
    for e in tail_from..=n {
        total.add(lc(n, e) + e as f64 * lp + (n - e) as f64 * lq);
    }
    Ok(total.value())
}

/// Natural log of the union bound on undetected error for bounded-distance
/// decoding with radius `t`: the probability that the received word falls
/// within distance `t` of some nonzero codeword.
pub fn bounded_distance_sum(wd: &WeightDistribution, p: f64, t: usize) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::domain("p", p, "(0, 1/2)"));
    }
    let n = wd.n;
    let lf = ln_factorials(n);
    let lc = |a: usize, b: usize| lf[a] - lf[b] - lf[a - b];
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let per_weight: Vec<f64> = (1..=n)
        .into_par_iter()
        .map(|w| {
            let la = wd.ln_counts[w];
            if la == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            let mut acc = LogSum::new();
            for j in 0..=t.min(w) {
                for l in 0..=(t - j).min(n - w) {
                    let e = w - j + l;
                    acc.add(lc(w, j) + lc(n - w, l) + e as f64 * lp + (n - e) as f64 * lq);
                }
            }
            la + acc.value()
        })
        .collect();
    let mut total = LogSum::new();
    for v in per_weight {
        total.add(v);
    }
    Ok(total.value())
}
