//! Norms, energies, the summation operators `H`, `H*` and the decreasing
//! rearrangement.

use alloc::vec::Vec;
use libm::{fabs, pow};

use crate::error::Result;
use crate::model::{Exponents, Sequence, WeightedInterval};
use crate::sum::{sum_by, Compensated};

/// `sgn(t) |t|^e`, with `sgn(0) = 0` so that `0^e` never appears for `e < 0`.
#[inline]
pub fn signed_pow(t: f64, e: f64) -> f64 {
    if e == 1.0 {
        return t;
    }
    if t > 0.0 {
        pow(t, e)
    } else if t < 0.0 {
        -pow(-t, e)
    } else {
        0.0
    }
}

/// `|t|^e` with `|0|^e = 0` for every `e > 0`.
#[inline]
pub fn abs_pow(t: f64, e: f64) -> f64 {
    if e == 2.0 {
        return t * t;
    }
    if t == 0.0 {
        0.0
    } else {
        pow(fabs(t), e)
    }
}

/// `(Σ u_n |x_n - shift|^q)^(1/q)`.
pub fn lq_norm(x: &Sequence, w: &WeightedInterval, e: &Exponents, shift: f64) -> Result<f64> {
    x.check_on(w)?;
    let (xs, u, q) = (x.values(), w.u(), e.q());
    let s = sum_by(xs.len(), |i| u[i] * abs_pow(xs[i] - shift, q));
    Ok(pow(s, 1.0 / q))
}

/// `Σ v_n |x_n - x_{n+1}|^p`, with `x_{N+1}` taken from the right boundary.
pub fn forward_energy_pow(x: &Sequence, w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    x.check_on(w)?;
    let pad = x.get(x.last() + 1)?;
    let (xs, v, p) = (x.values(), w.v(), e.p());
    let l = xs.len();
    Ok(sum_by(l, |i| {
        let next = if i + 1 < l { xs[i + 1] } else { pad };
        v[i] * abs_pow(xs[i] - next, p)
    }))
}

/// `Σ v_n |x_n - x_{n-1}|^p`, with `x_{-M-1}` taken from the left boundary.
pub fn backward_energy_pow(x: &Sequence, w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    x.check_on(w)?;
    let pad = x.get(x.first() - 1)?;
    let (xs, v, p) = (x.values(), w.v(), e.p());
    Ok(sum_by(xs.len(), |i| {
        let prev = if i > 0 { xs[i - 1] } else { pad };
        v[i] * abs_pow(xs[i] - prev, p)
    }))
}

/// `(Σ v_n |x_n - x_{n+1}|^p)^(1/p)`.
pub fn forward_energy(x: &Sequence, w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    Ok(pow(forward_energy_pow(x, w, e)?, 1.0 / e.p()))
}

/// `(Σ v_n |x_n - x_{n-1}|^p)^(1/p)`.
pub fn backward_energy(x: &Sequence, w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    Ok(pow(backward_energy_pow(x, w, e)?, 1.0 / e.p()))
}

/// `H x (n) = Σ_{i=-M}^{n} x_i`.
pub fn hardy_h(x: &Sequence) -> Sequence {
    let mut acc = Compensated::new();
    let out: Vec<f64> = x
        .values()
        .iter()
        .map(|&t| {
            acc.add(t);
            acc.value()
        })
        .collect();
    Sequence::new(x.first(), out, x.left(), x.right())
}

/// `H* x (n) = Σ_{i=n}^{N} x_i`.
pub fn hardy_h_star(x: &Sequence) -> Sequence {
    let mut acc = Compensated::new();
    let mut out: Vec<f64> = x
        .values()
        .iter()
        .rev()
        .map(|&t| {
            acc.add(t);
            acc.value()
        })
        .collect();
    out.reverse();
    Sequence::new(x.first(), out, x.left(), x.right())
}

/// `⟨x, y⟩ = Σ x_n y_n` over the common index set.
pub fn inner(x: &Sequence, y: &Sequence) -> Result<f64> {
    if x.len() != y.len() {
        return Err(crate::HardyError::LengthMismatch { expected: x.len(), found: y.len() });
    }
    let (a, b) = (x.values(), y.values());
    Ok(sum_by(a.len(), |i| a[i] * b[i]))
}

/// `y_n = max_{k >= n} |x_k|`; boundary conventions are carried over.
pub fn decreasing_rearrange(x: &Sequence) -> Sequence {
    let mut out = Vec::with_capacity(x.len());
    let mut running = 0.0f64;
    for &t in x.values().iter().rev() {
        let a = fabs(t);
        if a > running {
            running = a;
        }
        out.push(running);
    }
    out.reverse();
    Sequence::new(x.first(), out, x.left(), x.right())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{LeftBoundary as Lb, RightBoundary as Rb};
    use alloc::vec;

    fn unit(len: usize, p: f64, q: f64) -> (WeightedInterval, Exponents) {
        let e = Exponents::new(p, q).unwrap();
        (WeightedInterval::new(0, vec![1.0; len], vec![1.0; len], &e).unwrap(), e)
    }

    #[test]
    fn norm_examples() {
        let (w, e) = unit(2, 2.0, 2.0);
        let x = Sequence::free(0, vec![1.0, 1.0]);
        assert!((lq_norm(&x, &w, &e, 0.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);

        let e = Exponents::new(2.0, 2.0).unwrap();
        let w = WeightedInterval::new(0, vec![1.0, 2.0, 1.0], vec![1.0; 3], &e).unwrap();
        let x = Sequence::free(0, vec![0.0, 3.0, 6.0]);
        assert!((lq_norm(&x, &w, &e, 3.0).unwrap() - 18f64.sqrt()).abs() < 1e-14);

        let e = Exponents::new(2.0, 3.0).unwrap();
        let w = WeightedInterval::new(0, vec![5.0], vec![1.0], &e).unwrap();
        let x = Sequence::free(0, vec![2.0]);
        assert!((lq_norm(&x, &w, &e, 0.0).unwrap() - 40f64.powf(1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn forward_examples() {
        let (w, e) = unit(2, 2.0, 2.0);
        let x = Sequence::new(0, vec![1.0, 0.0], Lb::Free, Rb::DirichletZero);
        assert_eq!(forward_energy(&x, &w, &e).unwrap(), 1.0);

        let e3 = Exponents::new(3.0, 3.0).unwrap();
        let w3 = WeightedInterval::new(0, vec![1.0; 4], vec![1.0, 2.0, 3.0, 4.0], &e3).unwrap();
        let c = 1.7;
        let x = Sequence::new(0, vec![c; 4], Lb::Free, Rb::DirichletZero);
        let want = (4.0 * c * c * c).powf(1.0 / 3.0);
        assert!((forward_energy(&x, &w3, &e3).unwrap() - want).abs() < 1e-14);

        let w = WeightedInterval::new(0, vec![1.0], vec![4.0], &e).unwrap();
        let x = Sequence::new(0, vec![1.0], Lb::Free, Rb::DirichletZero);
        assert_eq!(forward_energy(&x, &w, &e).unwrap(), 2.0);

        let free = Sequence::free(0, vec![1.0]);
        assert!(forward_energy(&free, &w, &e).is_err());
    }

    #[test]
    fn backward_examples() {
        let (w, e) = unit(2, 2.0, 2.0);
        let x = Sequence::new(0, vec![1.0, 1.0], Lb::NeumannCopy, Rb::Free);
        assert_eq!(backward_energy(&x, &w, &e).unwrap(), 0.0);
        let x = Sequence::new(0, vec![1.0, 1.0], Lb::DirichletZero, Rb::Free);
        assert_eq!(backward_energy(&x, &w, &e).unwrap(), 1.0);
        let (w, e) = unit(3, 2.0, 2.0);
        let x = Sequence::new(0, vec![0.0, 1.0, 3.0], Lb::DirichletZero, Rb::Free);
        assert!((backward_energy(&x, &w, &e).unwrap() - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hardy_operators() {
        let x = Sequence::free(0, vec![1.0, 2.0]);
        assert_eq!(hardy_h(&x).values(), &[1.0, 3.0]);
        assert_eq!(hardy_h_star(&x).values(), &[3.0, 2.0]);
        let y = Sequence::free(0, vec![3.0, 4.0]);
        assert_eq!(hardy_h_star(&y).values(), &[7.0, 4.0]);
        assert_eq!(inner(&hardy_h(&x), &y).unwrap(), 15.0);
        assert_eq!(inner(&x, &hardy_h_star(&y)).unwrap(), 15.0);
        let z = Sequence::free(0, vec![0.0; 3]);
        assert_eq!(hardy_h(&z).values(), &[0.0; 3]);
        assert_eq!(hardy_h_star(&z).values(), &[0.0; 3]);
    }

    #[test]
    fn rearrangement() {
        assert_eq!(decreasing_rearrange(&Sequence::free(0, vec![1.0, 3.0, 2.0])).values(), &[3.0, 3.0, 2.0]);
        assert_eq!(decreasing_rearrange(&Sequence::free(0, vec![-2.0, 1.0])).values(), &[2.0, 1.0]);
        let fixed = vec![5.0, 4.0, 4.0, 0.5, 0.0];
        assert_eq!(decreasing_rearrange(&Sequence::free(-2, fixed.clone())).values(), fixed.as_slice());
    }

    #[test]
    fn signed_powers() {
        assert_eq!(signed_pow(0.0, -0.5), 0.0);
        assert_eq!(signed_pow(-4.0, 0.5), -2.0);
        assert_eq!(abs_pow(0.0, 0.5), 0.0);
        assert_eq!(abs_pow(-8.0, 1.0 / 3.0), 2.0);
    }
}
