use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares fit of `−ln p̂` against `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegressionResult {
    /// Exponent estimate (nats per symbol).
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn estimate_exponent(points: &[(f64, f64)]) -> Result<RegressionResult> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "{} points, need at least 3",
            points.len()
        )));
    }
    if let Some(&(_, p)) = points.iter().find(|(_, p)| !(*p > 0.0)) {
        return Err(Error::domain("p_hat", p, "(0, 1]"));
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(n, _)| n).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, p)| -p.ln()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::InvalidArgument("all points share one blocklength".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(RegressionResult {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}
