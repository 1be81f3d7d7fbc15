//! The mean-like constant `m(x)`: the unique root of
//! `f(t) = Σ u_n sgn(x_n - t) |x_n - t|^(q-1)`, which also minimises
//! `F(t) = Σ u_n |x_n - t|^q`.

use libm::fabs;

use crate::error::{HardyError, Result};
use crate::model::{Exponents, Sequence, WeightedInterval};
use crate::operators::{abs_pow, signed_pow};
use crate::sum::{sum_by, Compensated};

/// Outcome of [`solve_m`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanResult {
    pub m: f64,
    /// `f(m)`.
    pub residual: f64,
    pub iterations: usize,
}

const MAX_ITERS: usize = 200;

/// `Σ w_i sgn(x_i - t) |x_i - t|^(r-1)` on raw slices.
pub fn f_slices(values: &[f64], weights: &[f64], r: f64, t: f64) -> f64 {
    sum_by(values.len(), |i| weights[i] * signed_pow(values[i] - t, r - 1.0))
}

fn df_slices(values: &[f64], weights: &[f64], r: f64, t: f64) -> f64 {
    -(r - 1.0) * sum_by(values.len(), |i| weights[i] * abs_pow(values[i] - t, r - 2.0))
}

/// Root of [`f_slices`] in `t`. Works for any positive weights and `r > 1`;
/// constant data returns the constant.
pub fn solve_slices(values: &[f64], weights: &[f64], r: f64) -> Result<MeanResult> {
    if values.is_empty() {
        return Err(HardyError::Empty);
    }
    if values.len() != weights.len() {
        return Err(HardyError::LengthMismatch { expected: values.len(), found: weights.len() });
    }
    let mut lo = values[0];
    let mut hi = values[0];
    for &t in values {
        lo = lo.min(t);
        hi = hi.max(t);
    }
    if lo == hi {
        return Ok(MeanResult { m: lo, residual: 0.0, iterations: 0 });
    }
    if r == 2.0 {
        let mut num = Compensated::new();
        let mut den = Compensated::new();
        for (x, w) in values.iter().zip(weights) {
            num.add(w * x);
            den.add(*w);
        }
        let m = (num.value() / den.value()).clamp(lo, hi);
        return Ok(MeanResult { m, residual: f_slices(values, weights, r, m), iterations: 0 });
    }

    let newton = r >= 2.0;
    let mut f_lo = f_slices(values, weights, r, lo);
    let mut f_hi = f_slices(values, weights, r, hi);
    let mut t = 0.5 * (lo + hi);
    let mut iterations = 0;
    while iterations < MAX_ITERS {
        iterations += 1;
        let ft = f_slices(values, weights, r, t);
        if ft == 0.0 {
            return Ok(MeanResult { m: t, residual: 0.0, iterations });
        }
        // f is decreasing: a positive value means the root lies to the right
        if ft > 0.0 {
            lo = t;
            f_lo = ft;
        } else {
            hi = t;
            f_hi = ft;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        t = mid;
        if newton {
            let d = df_slices(values, weights, r, t);
            let cand = t - f_slices(values, weights, r, t) / d;
            if d < 0.0 && cand > lo && cand < hi {
                t = cand;
            }
        }
    }
    let (m, residual) = if fabs(f_lo) <= fabs(f_hi) { (lo, f_lo) } else { (hi, f_hi) };
    Ok(MeanResult { m, residual, iterations })
}

/// `f(t) = Σ u_n sgn(x_n - t) |x_n - t|^(q-1)`.
pub fn f_eval(x: &Sequence, w: &WeightedInterval, e: &Exponents, t: f64) -> Result<f64> {
    x.check_on(w)?;
    Ok(f_slices(x.values(), w.u(), e.q(), t))
}

/// `F(t) = Σ u_n |x_n - t|^q`.
pub fn big_f_eval(x: &Sequence, w: &WeightedInterval, e: &Exponents, t: f64) -> Result<f64> {
    x.check_on(w)?;
    let (xs, u, q) = (x.values(), w.u(), e.q());
    Ok(sum_by(xs.len(), |i| u[i] * abs_pow(xs[i] - t, q)))
}

/// `m(x)`.
pub fn solve_m(x: &Sequence, w: &WeightedInterval, e: &Exponents) -> Result<MeanResult> {
    x.check_on(w)?;
    solve_slices(x.values(), w.u(), e.q())
}

/// True iff `F(m) <= F(m - eps)` and `F(m) <= F(m + eps)`.
pub fn check_min_property(x: &Sequence, w: &WeightedInterval, e: &Exponents, m: f64, eps: f64) -> Result<bool> {
    if !(eps > 0.0) {
        return Err(HardyError::InvalidParameter { name: "eps", value: eps, reason: "need eps > 0" });
    }
    let at = big_f_eval(x, w, e, m)?;
    Ok(at <= big_f_eval(x, w, e, m - eps)? && at <= big_f_eval(x, w, e, m + eps)?)
}
