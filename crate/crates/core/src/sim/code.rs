use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::WeightDistribution;

/// Largest dimension for which codewords are enumerated.
pub const MAX_K: usize = 26;
/// Words are packed into `u32`, one bit per coordinate.
pub const MAX_N: usize = 32;

/// Binary linear `[n, k]` code with systematic generator `[I | P]`.
///
/// Row `j` of the generator is stored as a bit mask with coordinate `i`
/// at bit `i`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearCode {
    n: usize,
    k: usize,
    generator: Vec<u32>,
    #[serde(skip)]
    codewords: OnceLock<Vec<u32>>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.generator == other.generator
    }
}

impl LinearCode {
    /// Code with generator `[I | P]`; `parity[j]` holds the `n - k` parity
    /// bits of row `j` in its low bits.
    pub fn systematic(n: usize, k: usize, parity: &[u32]) -> Result<Self> {
        if n == 0 || n > MAX_N || k > n || k > MAX_K {
            return Err(Error::GuardExceeded(format!(
                "[{n}, {k}] code outside n <= {MAX_N}, k <= min(n, {MAX_K})"
            )));
        }
        if parity.len() != k {
            return Err(Error::InvalidArgument(format!(
                "{} parity rows for k = {k}",
                parity.len()
            )));
        }
        let r = n - k;
        let mask = if r == 32 { u32::MAX } else { (1u32 << r) - 1 };
        let generator = parity
            .iter()
            .enumerate()
            .map(|(j, &pj)| (1u32 << j) | ((pj & mask) << k))
            .collect();
        Ok(LinearCode {
            n,
            k,
            generator,
            codewords: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &[u32] {
        &self.generator
    }

    pub fn encode(&self, message: u32) -> u32 {
        self.generator
            .iter()
            .enumerate()
            .filter(|(j, _)| message >> j & 1 == 1)
            .fold(0, |acc, (_, &row)| acc ^ row)
    }

    /// All `2^k` codewords, indexed by message.
    pub fn codewords(&self) -> &[u32] {
        self.codewords
            .get_or_init(|| (0..1u32 << self.k).map(|m| self.encode(m)).collect())
    }
}

/// Random systematic code whose parity block is uniform under a
/// ChaCha generator seeded with `seed`.
pub fn gen_linear_code(n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    if n == 0 || n > MAX_N || k > n || k > MAX_K {
        return Err(Error::GuardExceeded(format!("[{n}, {k}] code outside supported sizes")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parity: Vec<u32> = (0..k).map(|_| rng.random::<u32>()).collect();
    LinearCode::systematic(n, k, &parity)
}

/// The `[7, 4, 3]` Hamming code.
pub fn hamming_7_4() -> LinearCode {
    LinearCode::systematic(7, 4, &[0b011, 0b101, 0b110, 0b111]).expect("fixed parameters")
}

/// Exact weight distribution by Gray-code walk over all `2^k` messages.
pub fn weight_distribution(code: &LinearCode) -> Result<WeightDistribution> {
    let mut counts = vec![0u64; code.n + 1];
    let mut word = 0u32;
    counts[0] = 1;
    for i in 1..1u64 << code.k {
        word ^= code.generator[i.trailing_zeros() as usize];
        counts[word.count_ones() as usize] += 1;
    }
    WeightDistribution::from_counts(&counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    /// Decoded to this codeword.
    Decoded(u32),
    Erasure,
}

/// Full-search margin decoding of the received word `y`.
///
/// Outputs the nearest codeword when every other codeword is farther by at
/// least `2t` and by at least one; ties always erase.
pub fn margin_decode(codewords: &[u32], y: u32, t: usize) -> Decision {
    let mut best = (u32::MAX, 0u32);
    let mut second = u32::MAX;
    for &c in codewords {
        let d = (c ^ y).count_ones();
        if d < best.0 {
            second = best.0;
            best = (d, c);
        } else if d < second {
            second = d;
        }
    }
    let gap = second.saturating_sub(best.0) as usize;
    if gap > 0 && gap >= 2 * t {
        Decision::Decoded(best.1)
    } else {
        Decision::Erasure
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_has_only_zero_word() {
        let code = LinearCode::systematic(5, 0, &[]).unwrap();
        let wd = weight_distribution(&code).unwrap();
        assert_eq!(wd.count(0), 1.0);
        assert_eq!(wd.min_distance(), None);
    }

    #[test]
    fn hamming_spectrum() {
        let wd = weight_distribution(&hamming_7_4()).unwrap();
        let counts: Vec<f64> = (0..=7).map(|w| wd.count(w).round()).collect();
        assert_eq!(counts, vec![1.0, 0.0, 0.0, 7.0, 7.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn single_codeword_always_decodes() {
        assert_eq!(margin_decode(&[0], 0b1111, 3), Decision::Decoded(0));
    }
}
