use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with finite endpoints and `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RealInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(RealInterval { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// `n + 1` equally spaced points from `lo` to `hi` inclusive.
    pub fn grid(&self, n: usize) -> impl Iterator<Item = f64> + '_ {
        let n = n.max(1);
        (0..=n).map(move |i| {
            if i == n {
                self.hi
            } else {
                self.lo + self.width() * i as f64 / n as f64
            }
        })
    }
}

/// Tolerance and iteration budget shared by the 1-D solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            abs_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl SolverConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        SolverConfig {
            abs_tol,
            ..Default::default()
        }
    }
}

/// Root of `f` inside a sign-changing bracket.
///
/// Bisection safeguarded secant: a secant step is taken only when it lands
/// strictly inside the bracket and the previous step at least halved it, so
/// the bracket always shrinks geometrically. Returns whichever final bracket
/// end has the smaller residual.
pub fn solve_bracketed<F>(f: F, interval: RealInterval, cfg: SolverConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (interval.lo, interval.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }

    let mut last_width = f64::INFINITY;
    for _ in 0..cfg.max_iter {
        let width = b - a;
        if width <= cfg.abs_tol {
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }
        let mid = a + 0.5 * width;
        let secant = b - fb * (b - a) / (fb - fa);
        let x = if width <= 0.5 * last_width && secant > a && secant < b && secant.is_finite() {
            secant
        } else {
            mid
        };
        if x <= a || x >= b {
            // The bracket is down to adjacent floats.
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }
        last_width = width;
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.is_nan() {
            return Err(Error::NoSignChange { lo: a, hi: b });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    if b - a <= cfg.abs_tol {
        return Ok(if fa.abs() <= fb.abs() { a } else { b });
    }
    Err(Error::MaxIterations {
        iterations: cfg.max_iter,
        width: b - a,
    })
}

const GUARD_POINTS: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizer of `f` on `interval`.
///
/// A 64-point guard scan picks the best cell, golden-section search narrows
/// it, and a final bisection on the sign of a central-difference derivative
/// pins the argmax down past the `sqrt(eps)` limit of pure comparisons.
/// Monotone functions end at the matching endpoint.
pub fn maximize_unimodal<F>(f: F, interval: RealInterval, cfg: SolverConfig) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let RealInterval { lo, hi } = interval;
    let step = (hi - lo) / GUARD_POINTS as f64;
    let value = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };

    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=GUARD_POINTS {
        let x = if i == GUARD_POINTS { hi } else { lo + step * i as f64 };
        let v = value(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut a = if best_i == 0 {
        lo
    } else {
        lo + step * (best_i - 1) as f64
    };
    let mut b = if best_i >= GUARD_POINTS - 1 {
        hi
    } else {
        lo + step * (best_i + 1) as f64
    };

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (value(c), value(d));
    let coarse = cfg.abs_tol.max(1e-7 * (hi - lo).max(1.0));
    let mut iter = 0;
    while b - a > coarse && iter < cfg.max_iter {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = value(d);
        }
        iter += 1;
    }

    // Derivative sign refinement inside the golden bracket.
    let h = 1e-6 * (hi - lo).min(1.0);
    let slope = |x: f64| {
        let xl = (x - h).max(lo);
        let xr = (x + h).min(hi);
        (value(xr) - value(xl)) / (xr - xl)
    };
    let (mut sa, sb) = (slope(a), slope(b));
    if sa > 0.0 && sb < 0.0 {
        let mut it = 0;
        while b - a > cfg.abs_tol && it < cfg.max_iter {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let sm = slope(m);
            if sm > 0.0 {
                a = m;
                sa = sm;
            } else {
                b = m;
            }
            it += 1;
        }
        let _ = sa;
    }

    let mut arg = 0.5 * (a + b);
    let mut max = value(arg);
    for x in [a, b, lo, hi] {
        let v = value(x);
        if v > max {
            max = v;
            arg = x;
        }
    }
    if best_v > max {
        let x = if best_i == GUARD_POINTS {
            hi
        } else {
            lo + step * best_i as f64
        };
        return Ok((x, best_v));
    }
    Ok((arg, max))
}

/// Minimizer of `f` on `interval`; see [`maximize_unimodal`].
pub fn minimize_unimodal<F>(f: F, interval: RealInterval, cfg: SolverConfig) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let (x, v) = maximize_unimodal(|x| -f(x), interval, cfg)?;
    Ok((x, -v))
}
