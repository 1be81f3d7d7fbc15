//! Exact reference values at `p = q = 2`: the optimal constant is `λ^(-1/2)`
//! where `λ` is the first nontrivial eigenvalue of a symmetric tridiagonal
//! stiffness matrix against the diagonal mass `u`.

use alloc::vec;
use alloc::vec::Vec;
use libm::{fabs, sqrt};

use crate::bounds::Case;
use crate::error::{HardyError, Result};
use crate::model::{Exponents, Sequence, WeightedInterval};

/// Generalised tridiagonal pencil `K - σ M`.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub diag: Vec<f64>,
    /// `off[i] = K[i][i+1]`.
    pub off: Vec<f64>,
    pub mass: Vec<f64>,
    /// Which eigenvalue (0-based, ascending) is the relevant one.
    pub rank: usize,
}

/// Builds the pencil for `case` from raw weights. `u` may contain zeros;
/// `v` must be positive.
pub fn pencil(case: Case, u: &[f64], v: &[f64]) -> Result<Pencil> {
    if u.len() != v.len() {
        return Err(HardyError::LengthMismatch { expected: u.len(), found: v.len() });
    }
    let l = u.len();
    if l < case.min_len() {
        return Err(HardyError::TooShort { needed: case.min_len(), have: l });
    }
    let vv = |i: usize| if i < l { v[i] } else { 0.0 };
    let p = match case {
        Case::DN => Pencil {
            diag: (0..l).map(|i| v[i] + vv(i + 1)).collect(),
            off: (0..l - 1).map(|i| -v[i + 1]).collect(),
            mass: u.to_vec(),
            rank: 0,
        },
        Case::ND => Pencil {
            diag: (0..l).map(|i| v[i] + if i > 0 { v[i - 1] } else { 0.0 }).collect(),
            off: (0..l - 1).map(|i| -v[i]).collect(),
            mass: u.to_vec(),
            rank: 0,
        },
        // x_N = 0 removes the last slot
        Case::DD => Pencil {
            diag: (0..l - 1).map(|i| v[i] + v[i + 1]).collect(),
            off: (0..l.saturating_sub(2)).map(|i| -v[i + 1]).collect(),
            mass: u[..l - 1].to_vec(),
            rank: 0,
        },
        Case::NN => Pencil {
            diag: (0..l).map(|i| (if i > 0 { v[i] } else { 0.0 }) + if i + 1 < l { v[i + 1] } else { 0.0 }).collect(),
            off: (0..l - 1).map(|i| -v[i + 1]).collect(),
            mass: u.to_vec(),
            rank: 1,
        },
    };
    Ok(p)
}

impl Pencil {
    /// Number of eigenvalues below `sigma` (Sylvester inertia of `K - σ M`).
    pub fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut d = 0.0f64;
        for i in 0..self.diag.len() {
            let a = self.diag[i] - sigma * self.mass[i];
            d = if i == 0 { a } else { a - self.off[i - 1] * self.off[i - 1] / d };
            if d == 0.0 {
                d = -f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The eigenvalue of index `rank`, bisected to full precision. Infinite
    /// when the mass does not support that many finite eigenvalues.
    pub fn eigenvalue(&self) -> f64 {
        let k = self.rank;
        let finite = self.mass.iter().filter(|&&m| m > 0.0).count();
        if finite <= k {
            return f64::INFINITY;
        }
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        while self.count_below(hi) <= k {
            hi *= 2.0;
            if !hi.is_finite() {
                return f64::INFINITY;
            }
        }
        while self.count_below(lo) > k {
            lo = -1.0;
        }
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for `lambda` by shifted inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let mut x = vec![1.0; n];
        // break symmetry so the constant vector of the Neumann pencil is not a fixed point
        for (i, t) in x.iter_mut().enumerate() {
            *t += 0.01 * i as f64;
        }
        for _ in 0..4 {
            let rhs: Vec<f64> = (0..n).map(|i| self.mass[i] * x[i]).collect();
            let y = self.solve_shifted(lambda, &rhs);
            let norm = sqrt(y.iter().map(|t| t * t).sum::<f64>());
            if !(norm > 0.0 && norm.is_finite()) {
                break;
            }
            x = y.iter().map(|t| t / norm).collect();
        }
        x
    }

    /// Thomas algorithm for `(K - σ M) y = rhs`, with zero pivots nudged.
    fn solve_shifted(&self, sigma: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let tiny = f64::EPSILON * self.diag.iter().fold(0.0f64, |m, &t| m.max(fabs(t)));
        for i in 0..n {
            let sub = if i > 0 { self.off[i - 1] } else { 0.0 };
            let mut piv = self.diag[i] - sigma * self.mass[i] - if i > 0 { sub * c[i - 1] } else { 0.0 };
            if fabs(piv) < tiny {
                piv = if piv < 0.0 { -tiny } else { tiny };
            }
            c[i] = if i + 1 < n { self.off[i] / piv } else { 0.0 };
            d[i] = (rhs[i] - if i > 0 { sub * d[i - 1] } else { 0.0 }) / piv;
        }
        let mut y = d;
        for i in (0..n.saturating_sub(1)).rev() {
            let next = y[i + 1];
            y[i] -= c[i] * next;
        }
        y
    }
}

fn require_two(e: &Exponents) -> Result<()> {
    if e.p() == 2.0 && e.q() == 2.0 {
        Ok(())
    } else {
        Err(HardyError::NotDiagonal)
    }
}

/// `A = λ^(-1/2)` from raw weights; `u` may contain zeros (no mass gives `A = 0`).
pub fn eigen_oracle_raw(case: Case, u: &[f64], v: &[f64]) -> Result<f64> {
    let lambda = pencil(case, u, v)?.eigenvalue();
    Ok(if lambda.is_infinite() { 0.0 } else { 1.0 / sqrt(lambda) })
}

/// Exact optimal constant at `p = q = 2`.
pub fn eigen_oracle(case: Case, w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    require_two(e)?;
    eigen_oracle_raw(case, w.u(), w.v())
}

/// The extremal eigenpair `(λ, x)` at `p = q = 2`, with `x` laid out like the
/// maximisers of [`crate::variational::estimate_a`] (for `DD` the pinned
/// `x_N = 0` is included).
pub fn eigen_pair(case: Case, w: &WeightedInterval, e: &Exponents) -> Result<(f64, Sequence)> {
    require_two(e)?;
    let pen = pencil(case, w.u(), w.v())?;
    let lambda = pen.eigenvalue();
    let mut x = pen.eigenvector(lambda);
    if case == Case::DD {
        x.push(0.0);
    }
    let (left, right) = super::boundaries(case);
    Ok((lambda, Sequence::new(w.first(), x, left, right)))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn unit(len: usize) -> (WeightedInterval, Exponents) {
        let e = Exponents::new(2.0, 2.0).unwrap();
        (WeightedInterval::new(0, vec![1.0; len], vec![1.0; len], &e).unwrap(), e)
    }

    #[test]
    fn small_problems_by_hand() {
        let (w, e) = unit(2);
        assert!((eigen_oracle(Case::DD, &w, &e).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((eigen_oracle(Case::NN, &w, &e).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let (w1, e1) = unit(1);
        assert!((eigen_oracle(Case::DN, &w1, &e1).unwrap() - 1.0).abs() < 1e-15);
        assert!((eigen_oracle(Case::ND, &w1, &e1).unwrap() - 1.0).abs() < 1e-15);
        let e3 = Exponents::new(3.0, 3.0).unwrap();
        assert_eq!(eigen_oracle(Case::DD, &w.with_exponents(&e3).unwrap(), &e3), Err(HardyError::NotDiagonal));
    }

    #[test]
    fn dirichlet_laplacian_spectrum() {
        // DN on n points with unit weights: K = tridiag(-1, 2, -1) with K[n-1][n-1] = 1,
        // λ_min = 4 sin²(π / (2(2n+1)))
        let n = 7;
        let (w, e) = unit(n);
        let want = 4.0 * (core::f64::consts::PI / (2.0 * (2 * n + 1) as f64)).sin().powi(2);
        let got = eigen_oracle(Case::DN, &w, &e).unwrap();
        assert!((got - 1.0 / want.sqrt()).abs() < 1e-12 * got);
        // the mirror problem has the same constant
        assert!((eigen_oracle(Case::ND, &w, &e).unwrap() - got).abs() < 1e-12 * got);
    }

    #[test]
    fn zero_mass_is_allowed() {
        assert_eq!(eigen_oracle_raw(Case::ND, &[0.0], &[1.0]).unwrap(), 0.0);
        let a = eigen_oracle_raw(Case::DN, &[1.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!((a - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvector_satisfies_pencil() {
        let e = Exponents::new(2.0, 2.0).unwrap();
        let w = WeightedInterval::new(0, vec![0.5, 2.0, 1.0, 3.0], vec![1.0, 0.3, 2.0, 0.7], &e).unwrap();
        for case in Case::ALL {
            let pen = pencil(case, w.u(), w.v()).unwrap();
            let lambda = pen.eigenvalue();
            let x = pen.eigenvector(lambda);
            let n = x.len();
            for i in 0..n {
                let mut kx = pen.diag[i] * x[i];
                if i > 0 {
                    kx += pen.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    kx += pen.off[i] * x[i + 1];
                }
                assert!((kx - lambda * pen.mass[i] * x[i]).abs() < 1e-10, "{case}");
            }
        }
    }
}
