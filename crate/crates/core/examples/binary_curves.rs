//! Margin exponents of binary codes on a BSC next to the classical bounds.

use erasure_exponents::binary::{bz_bounds, gallager_exponent, landmarks, margin_bound, BscChannel};
use erasure_exponents::MarginKind;

fn main() -> erasure_exponents::Result<()> {
    let ch = BscChannel::new(0.07)?;
    let tau = 0.03;
    let l = landmarks(&ch, tau);
    println!("critical rate {:.6}, expurgation rate {:.6}", l.r_c, l.r_e);
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "R", "E0", "M+", "shift err", "M-", "shift ers"
    );
    for i in 1..=10 {
        let r = 0.06 * i as f64;
        let (be, bx) = bz_bounds(r, &ch, tau);
        let show = |v: erasure_exponents::binary::BinaryBoundValue| {
            if v.valid {
                format!("{:9.5}", v.value)
            } else {
                format!("{:>9}", "-")
            }
        };
        println!(
            "{r:6.2} {} {} {} {} {}",
            show(gallager_exponent(r, &ch)),
            show(margin_bound(r, &ch, tau, MarginKind::Error)),
            show(be),
            show(margin_bound(r, &ch, tau, MarginKind::Erasure)),
            show(bx),
        );
    }
    Ok(())
}
