use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sim::{margin_decode, Decision, LinearCode};

/// Largest blocklength the exhaustive oracle accepts.
pub const EXACT_MAX_N: usize = 20;
/// Largest `n + k`: the oracle does `2^n · 2^k` distance evaluations.
pub const EXACT_MAX_WORK: usize = 30;

/// Decoding outcomes of every received word, grouped by the weight of the
/// error pattern (codeword 0 transmitted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarginCounts {
    pub correct: Vec<u64>,
    pub undetected: Vec<u64>,
    pub erasure: Vec<u64>,
}

impl MarginCounts {
    fn zeros(n: usize) -> Self {
        MarginCounts {
            correct: vec![0; n + 1],
            undetected: vec![0; n + 1],
            erasure: vec![0; n + 1],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in [
            (&mut self.correct, &other.correct),
            (&mut self.undetected, &other.undetected),
            (&mut self.erasure, &other.erasure),
        ] {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginProbabilities {
    pub correct: f64,
    pub undetected: f64,
    pub erasure: f64,
}

const CHUNK: u32 = 1 << 12;

/// Classify all `2^n` received words under the margin decoder with
/// margin `t`.
pub fn exact_margin_counts(code: &LinearCode, t: usize) -> Result<MarginCounts> {
    let (n, k) = (code.n(), code.k());
    if n > EXACT_MAX_N || n + k > EXACT_MAX_WORK {
        return Err(Error::GuardExceeded(format!(
            "exhaustive oracle limited to n <= {EXACT_MAX_N} and n + k <= {EXACT_MAX_WORK}, got [{n}, {k}]"
        )));
    }
    let words = code.codewords();
    let total: u32 = 1 << n;
    let chunks = total.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = MarginCounts::zeros(n);
            let end = ((c + 1) * CHUNK).min(total);
            for y in c * CHUNK..end {
                let e = y.count_ones() as usize;
                match margin_decode(words, y, t) {
                    Decision::Decoded(0) => acc.correct[e] += 1,
                    Decision::Decoded(_) => acc.undetected[e] += 1,
                    Decision::Erasure => acc.erasure[e] += 1,
                }
            }
            acc
        })
        .reduce(|| MarginCounts::zeros(n), MarginCounts::merge);
    Ok(counts)
}

/// Exact probabilities of correct decoding, undetected error and erasure
/// on a BSC with crossover `p`.
pub fn exact_margin_probability(code: &LinearCode, p: f64, t: usize) -> Result<MarginProbabilities> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("p", p, "[0, 1]"));
    }
    let counts = exact_margin_counts(code, t)?;
    let n = code.n();
    let weight = |e: usize| p.powi(e as i32) * (1.0 - p).powi((n - e) as i32);
    let mass = |v: &[u64]| -> f64 { v.iter().enumerate().map(|(e, &c)| c as f64 * weight(e)).sum() };
    Ok(MarginProbabilities {
        correct: mass(&counts.correct),
        undetected: mass(&counts.undetected),
        erasure: mass(&counts.erasure),
    })
}
