//! Exact margin-decoding probabilities of a small code against the union bound.

use erasure_exponents::finite::{binary_union_bound, exact_margin_probability, MarginParams};
use erasure_exponents::sim::{gen_linear_code, weight_distribution};
use erasure_exponents::MarginKind;

fn main() -> erasure_exponents::Result<()> {
    let code = gen_linear_code(15, 5, 21)?;
    let wd = weight_distribution(&code)?;
    println!("[15, 5] code, minimum distance {:?}", wd.min_distance());
    for p in [0.01, 0.05, 0.1] {
        for t in 0..=2 {
            let e = exact_margin_probability(&code, p, t)?;
            let m = MarginParams { t, r: None };
            let b = binary_union_bound(&wd, p, m, MarginKind::Error)?.exp();
            println!(
                "p {p:.2} t {t}: correct {:.6} undetected {:.3e} (bound {b:.3e}) erasure {:.3e}",
                e.correct, e.undetected, e.erasure
            );
        }
    }
    Ok(())
}
