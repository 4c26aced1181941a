//! Seeded Monte Carlo simulation of margin decoding.
//!
//! Trials run in fixed-size blocks. Block `b` draws from the ChaCha stream
//! `b` of the user seed, so a tally depends only on `(seed, trials)` and
//! never on how many threads rayon uses.

mod code;
mod regression;
mod spherical;
mod tally;

pub use code::{gen_linear_code, hamming_7_4, margin_decode, weight_distribution, Decision, LinearCode, MAX_K, MAX_N};
pub use regression::{estimate_exponent, RegressionResult};
pub use spherical::{margin_decode_awgn, simulate_awgn, simulate_cone_exit, ConeExitEstimate, SphericalCodebook};
pub use tally::{wilson_interval, TallySummary, TrialTally, WILSON_Z95};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Trials per RNG stream.
pub const BLOCK: u64 = 1 << 14;

/// Run `trials` trials in blocks, each with its own RNG stream, and merge
/// the per-block results in block order.
pub(crate) fn run_blocks<T, F>(trials: u64, seed: u64, identity: T, block: F) -> Vec<T>
where
    T: Send + Sync + Clone,
    F: Fn(&mut ChaCha8Rng, u64, T) -> T + Sync,
{
    let blocks = trials.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = BLOCK.min(trials - b * BLOCK);
            block(&mut rng, len, identity.clone())
        })
        .collect()
}

/// Transmit the zero codeword of `code` over a BSC with crossover `p`
/// `trials` times and tally the margin decoder's outcomes.
pub fn simulate_bsc(code: &LinearCode, p: f64, t: usize, trials: u64, seed: u64) -> TrialTally {
    let words = code.codewords();
    let n = code.n();
    let p = p.clamp(0.0, 1.0);
    let parts = run_blocks(trials, seed, TrialTally::empty(seed), |rng, len, mut tally| {
        for _ in 0..len {
            let mut y = 0u32;
            for i in 0..n {
                if rng.random_bool(p) {
                    y |= 1 << i;
                }
            }
            match margin_decode(words, y, t) {
                Decision::Decoded(0) => tally.correct += 1,
                Decision::Decoded(_) => tally.undetected += 1,
                Decision::Erasure => tally.erasure += 1,
            }
            tally.trials += 1;
        }
        tally
    });
    parts.into_iter().fold(TrialTally::empty(seed), TrialTally::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_cover_all_trials() {
        let parts = run_blocks(3 * BLOCK + 5, 1, 0u64, |_, len, acc| acc + len);
        assert_eq!(parts.iter().sum::<u64>(), 3 * BLOCK + 5);
        assert_eq!(parts.len(), 4);
    }

    #[test]
    fn noiseless_channel() {
        let t = simulate_bsc(&hamming_7_4(), 0.0, 0, 1000, 3);
        assert_eq!(t.correct, 1000);
    }
}
