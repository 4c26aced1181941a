use statrs::function::factorial;

use crate::error::{Error, Result};

/// Natural log of the binomial coefficient `C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidArgument(format!("binomial C({n}, {k}) with k > n")));
    }
    if k == 0 || k == n {
        return Ok(0.0);
    }
    Ok(factorial::ln_binomial(n, k))
}

/// Base-2 log of the binomial coefficient `C(n, k)`.
pub fn log2_binomial(n: u64, k: u64) -> Result<f64> {
    Ok(ln_binomial(n, k)? / std::f64::consts::LN_2)
}

/// `ln(e^a + e^b)` without overflow.
pub fn log_sum_pair(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(sum_i e^{v_i})`; the empty sum is `-inf`.
pub fn log_sum(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    let s: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + s.ln()
}

/// Streaming `ln Σ e^{v}` accumulator; order of `add` calls matters only
/// at the rounding level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSum {
    max: f64,
    scaled: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        LogSum {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        if v == f64::NEG_INFINITY {
            return;
        }
        if v <= self.max {
            self.scaled += (v - self.max).exp();
        } else {
            self.scaled = self.scaled * (self.max - v).exp() + 1.0;
            self.max = v;
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            self.max
        } else {
            self.max + self.scaled.ln()
        }
    }
}

/// `ln k!` for `k = 0..=n`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    (0..=n).map(|k| factorial::ln_factorial(k as u64)).collect()
}
