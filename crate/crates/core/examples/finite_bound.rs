//! Finite-length union bounds of the Gilbert-Varshamov ensemble approach
//! the asymptotic exponent as the block length grows.

use std::f64::consts::LN_2;

use erasure_exponents::binary::{gallager_exponent, BscChannel};
use erasure_exponents::finite::{binary_union_bound, MarginParams, WeightDistribution};
use erasure_exponents::MarginKind;

fn main() -> erasure_exponents::Result<()> {
    let (p, r) = (0.07, 0.3);
    let target = gallager_exponent(r, &BscChannel::new(p)?).value;
    println!("asymptotic exponent {target:.5}");
    for n in [128, 256, 512, 1024, 2048] {
        let wd = WeightDistribution::gv_ensemble(n, r)?;
        for t in [0, 2] {
            let m = MarginParams { t, r: None };
            let e = binary_union_bound(&wd, p, m, MarginKind::Error)?;
            let x = binary_union_bound(&wd, p, m, MarginKind::Erasure)?;
            println!(
                "n {n:5} t {t}: ln P_err <= {e:10.3} (exponent {:.5}), ln P_fail <= {x:10.3}",
                -e / (n as f64 * LN_2)
            );
        }
    }
    Ok(())
}
