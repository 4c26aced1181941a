use crate::error::{Error, Result};

/// `-x log2 y - (1-x) log2 (1-y)`, with `0 log 0 = 0` and `+inf` when a
/// positive weight meets a zero probability.
pub fn cross_entropy(x: f64, y: f64) -> f64 {
    let term = |w: f64, q: f64| {
        if w == 0.0 {
            0.0
        } else if q == 0.0 {
            f64::INFINITY
        } else {
            -w * q.log2()
        }
    };
    term(x, y) + term(1.0 - x, 1.0 - y)
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

/// Binary divergence `D(x||y)` in bits.
pub fn divergence(x: f64, y: f64) -> f64 {
    let term = |w: f64, q: f64| {
        if w == 0.0 {
            0.0
        } else if q == 0.0 {
            f64::INFINITY
        } else {
            w * (w / q).log2()
        }
    };
    term(x, y) + term(1.0 - x, 1.0 - y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyFamily {
    pub h: f64,
    pub t: f64,
    pub d: f64,
}

/// `(h(x), T(x,y), D(x||y))` in bits; infinite values are returned as `+inf`.
pub fn entropy_family(x: f64, y: f64) -> Result<EntropyFamily> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("x", x, "[0, 1]"));
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain("y", y, "[0, 1]"));
    }
    Ok(EntropyFamily {
        h: binary_entropy(x),
        t: cross_entropy(x, y),
        d: divergence(x, y),
    })
}

/// Inverse of the binary entropy on `[0, 1/2]`, bisected to full precision.
pub fn entropy_inverse(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain("y", y, "[0, 1]"));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if binary_entropy(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
