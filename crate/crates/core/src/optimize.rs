//! One-dimensional searches: bisection for roots, golden-section for minima.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a bounded 1-D minimization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`. The best point seen,
/// including both endpoints, is returned, so minima sitting on the boundary
/// are found as well.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Minimum>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(Error::NoConvergence(format!(
            "invalid golden-section bracket [{lo}, {hi}]"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut best = Minimum {
        x: lo,
        value: f(lo),
        iterations: 0,
    };
    let fb = f(hi);
    if fb < best.value {
        best = Minimum {
            x: hi,
            value: fb,
            iterations: 0,
        };
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while (b - a) > tol && iterations < 400 {
        iterations += 1;
        if fc.is_nan() || fd.is_nan() {
            return Err(Error::NoConvergence(format!(
                "objective returned NaN near x = {c}"
            )));
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v < best.value {
            best = Minimum {
                x,
                value: v,
                iterations,
            };
        }
    }
    best.iterations = iterations;
    if best.value.is_nan() {
        return Err(Error::NoConvergence("objective returned NaN".into()));
    }
    Ok(best)
}

/// Golden-section search for a maximum; `value` holds the maximum of `f`.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Minimum>
where
    F: FnMut(f64) -> f64,
{
    let m = golden_section_min(|x| -f(x), lo, hi, tol)?;
    Ok(Minimum {
        value: -m.value,
        ..m
    })
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Runs until the bracket stops shrinking in floating point or `xtol` is
/// reached, whichever comes first.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::NotBracketed {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }
    let neg_at_a = fa < 0.0;
    for _ in 0..2000 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b || (b - a) <= xtol {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == neg_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
