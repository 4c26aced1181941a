//! Landmark angles and rates of the AWGN margin exponents.

use erasure_exponents::spherical::{spherical_landmarks, tradeoff_exponent, AwgnChannel};
use erasure_exponents::MarginKind;

fn main() -> erasure_exponents::Result<()> {
    let ch = AwgnChannel::new(4.0)?;
    println!("capacity {:.6} nats", ch.capacity());
    for tau in [0.0, 0.04, -0.04] {
        let l = spherical_landmarks(tau, &ch)?;
        println!(
            "tau {tau:+.2}: theta_1 {:.6}  theta_2 {:.6}  R* {:.6}  residuals {:.1e} {:.1e}",
            l.theta_1, l.theta_2, l.r_star, l.theta_1_residual, l.r_star_residual
        );
    }
    for r in [0.1, 0.3, 0.5] {
        let e = tradeoff_exponent(r, &ch, 0.04, MarginKind::Error);
        let x = tradeoff_exponent(r, &ch, 0.04, MarginKind::Erasure);
        println!(
            "R {r:.1}: error {:.6} ({}), erasure {:.6} ({})",
            e.value,
            e.regime.label(),
            x.value,
            x.regime.label()
        );
    }
    Ok(())
}
