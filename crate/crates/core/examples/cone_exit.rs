//! Estimates the sphere-packing exponent from the decay of the probability
//! that Gaussian noise leaves a cone around the transmitted point.

use erasure_exponents::sim::{estimate_exponent, simulate_cone_exit};
use erasure_exponents::spherical::{esp, AwgnChannel};

fn main() -> erasure_exponents::Result<()> {
    let ch = AwgnChannel::new(4.0)?;
    let phi = 0.55;
    let mut points = Vec::new();
    for n in [25, 50, 100, 150] {
        let e = simulate_cone_exit(n, &ch, phi, 4_000_000, 7)?;
        println!("n {n:4}: {:.4e} in [{:.4e}, {:.4e}]", e.estimate, e.ci95.0, e.ci95.1);
        points.push((n as f64, e.estimate));
    }
    let fit = estimate_exponent(&points)?;
    println!(
        "fitted slope {:.5}, sphere-packing exponent {:.5}",
        fit.slope,
        esp(phi, &ch)?
    );
    Ok(())
}
