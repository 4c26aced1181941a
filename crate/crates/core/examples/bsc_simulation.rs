//! Seeded Monte Carlo of margin decoding on a BSC, checked against the exact
//! probabilities.

use erasure_exponents::finite::exact_margin_probability;
use erasure_exponents::sim::{hamming_7_4, simulate_bsc, WILSON_Z95};

fn main() -> erasure_exponents::Result<()> {
    let code = hamming_7_4();
    for t in 0..=1 {
        let exact = exact_margin_probability(&code, 0.05, t)?;
        let tally = simulate_bsc(&code, 0.05, t, 1_000_000, 42);
        let (lo, hi) = tally.undetected_interval(WILSON_Z95);
        println!(
            "t {t}: undetected {:.5} in [{lo:.5}, {hi:.5}], exact {:.5}; erasure {:.5}, exact {:.5}",
            tally.rate(tally.undetected),
            exact.undetected,
            tally.rate(tally.erasure),
            exact.erasure
        );
    }
    Ok(())
}
