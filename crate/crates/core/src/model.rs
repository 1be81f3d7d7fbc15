//! Interval, weight and sequence data model.
//!
//! Every public API uses the shifted indices `n ∈ [-M, N]`; array slots are an
//! internal detail reached only through [`WeightedInterval::slot`].

use alloc::vec::Vec;
use libm::pow;

use crate::error::{HardyError, Result};

/// The exponent pair `(p, q)` together with the conjugates `p*`, `q*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    p: f64,
    q: f64,
    p_star: f64,
    q_star: f64,
}

impl Exponents {
    /// Any `p, q > 1`. Lower estimates are valid for all such pairs.
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(HardyError::InvalidExponents { p, q, reason: "not finite" });
        }
        if p <= 1.0 || q <= 1.0 {
            return Err(HardyError::InvalidExponents { p, q, reason: "need p > 1 and q > 1" });
        }
        Ok(Self { p, q, p_star: p / (p - 1.0), q_star: q / (q - 1.0) })
    }

    /// Like [`Exponents::new`] but additionally enforces `p <= q`, which the
    /// upper estimates require.
    pub fn ordered(p: f64, q: f64) -> Result<Self> {
        let e = Self::new(p, q)?;
        e.require_ordered()?;
        Ok(e)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p_star(&self) -> f64 {
        self.p_star
    }

    pub fn q_star(&self) -> f64 {
        self.q_star
    }

    pub fn is_ordered(&self) -> bool {
        self.p <= self.q
    }

    pub fn is_diagonal(&self) -> bool {
        self.p == self.q
    }

    pub fn require_ordered(&self) -> Result<()> {
        if self.is_ordered() {
            Ok(())
        } else {
            Err(HardyError::InvalidExponents { p: self.p, q: self.q, reason: "upper estimates need p <= q" })
        }
    }
}

/// Positive weights `u`, `v` on the discrete interval `[-M, N]`, with the
/// dual weights `v̂ = v^(1 - p*)` cached for one value of `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedInterval {
    offset: i64,
    u: Vec<f64>,
    v: Vec<f64>,
    v_hat: Vec<f64>,
    p: f64,
}

fn check_positive(name: &'static str, offset: i64, values: &[f64]) -> Result<()> {
    for (i, &w) in values.iter().enumerate() {
        if !(w.is_finite() && w > 0.0) {
            return Err(HardyError::InvalidWeight { name, index: offset + i as i64, value: w });
        }
    }
    Ok(())
}

impl WeightedInterval {
    /// Builds the interval `[offset, offset + len - 1]` from `u` and `v`,
    /// deriving `v̂` for the exponent `p` of `e`.
    pub fn new(offset: i64, u: Vec<f64>, v: Vec<f64>, e: &Exponents) -> Result<Self> {
        if u.is_empty() {
            return Err(HardyError::Empty);
        }
        if u.len() != v.len() {
            return Err(HardyError::LengthMismatch { expected: u.len(), found: v.len() });
        }
        check_positive("u", offset, &u)?;
        check_positive("v", offset, &v)?;
        let exponent = 1.0 - e.p_star();
        let v_hat: Vec<f64> = v.iter().map(|&w| pow(w, exponent)).collect();
        check_positive("v_hat", offset, &v_hat)?;
        Ok(Self { offset, u, v, v_hat, p: e.p() })
    }

    /// Builds the interval from `u` and the dual weights `v̂` directly. The
    /// primal `v = v̂^(1 - p)` is derived. Useful when `v̂` is known in closed
    /// form and `v` would lose precision.
    pub fn from_dual(offset: i64, u: Vec<f64>, v_hat: Vec<f64>, e: &Exponents) -> Result<Self> {
        if u.is_empty() {
            return Err(HardyError::Empty);
        }
        if u.len() != v_hat.len() {
            return Err(HardyError::LengthMismatch { expected: u.len(), found: v_hat.len() });
        }
        check_positive("u", offset, &u)?;
        check_positive("v_hat", offset, &v_hat)?;
        let exponent = 1.0 - e.p();
        let v: Vec<f64> = v_hat.iter().map(|&w| pow(w, exponent)).collect();
        check_positive("v", offset, &v)?;
        Ok(Self { offset, u, v, v_hat, p: e.p() })
    }

    /// Same weights, `v̂` re-derived for another exponent pair.
    pub fn with_exponents(&self, e: &Exponents) -> Result<Self> {
        if e.p() == self.p {
            return Ok(self.clone());
        }
        Self::new(self.offset, self.u.clone(), self.v.clone(), e)
    }

    /// The mirrored instance on `[-N, M]`: `u'_n = u_{-n}`, `v'_n = v_{-n}`.
    pub fn reversed(&self) -> Self {
        let mut u = self.u.clone();
        let mut v = self.v.clone();
        let mut v_hat = self.v_hat.clone();
        u.reverse();
        v.reverse();
        v_hat.reverse();
        Self { offset: -self.last(), u, v, v_hat, p: self.p }
    }

    /// `-M`.
    pub fn first(&self) -> i64 {
        self.offset
    }

    /// `N`.
    pub fn last(&self) -> i64 {
        self.offset + self.u.len() as i64 - 1
    }

    /// Number of points `L = N + M + 1`.
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.first() && n <= self.last()
    }

    /// Array slot of index `n`.
    pub fn slot(&self, n: i64) -> Result<usize> {
        if self.contains(n) {
            Ok((n - self.offset) as usize)
        } else {
            Err(HardyError::IndexOutOfRange { index: n, lo: self.first(), hi: self.last() })
        }
    }

    /// Index of array slot `i`.
    pub fn index(&self, slot: usize) -> i64 {
        self.offset + slot as i64
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn v_hat(&self) -> &[f64] {
        &self.v_hat
    }

    pub fn u_at(&self, n: i64) -> Result<f64> {
        Ok(self.u[self.slot(n)?])
    }

    pub fn v_at(&self, n: i64) -> Result<f64> {
        Ok(self.v[self.slot(n)?])
    }

    pub fn v_hat_at(&self, n: i64) -> Result<f64> {
        Ok(self.v_hat[self.slot(n)?])
    }
}

/// Value used for the point just outside the left end, `x_{-M-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftBoundary {
    DirichletZero,
    /// `x_{-M-1} = x_{-M}`.
    NeumannCopy,
    Free,
}

/// Value used for the point just outside the right end, `x_{N+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightBoundary {
    DirichletZero,
    Free,
}

/// A real sequence on `[offset, offset + len - 1]` with boundary padding.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    offset: i64,
    values: Vec<f64>,
    left: LeftBoundary,
    right: RightBoundary,
}

impl Sequence {
    pub fn new(offset: i64, values: Vec<f64>, left: LeftBoundary, right: RightBoundary) -> Self {
        Self { offset, values, left, right }
    }

    /// Sequence with free boundaries on both sides.
    pub fn free(offset: i64, values: Vec<f64>) -> Self {
        Self::new(offset, values, LeftBoundary::Free, RightBoundary::Free)
    }

    pub fn zeros_like(w: &WeightedInterval) -> Self {
        Self::free(w.first(), alloc::vec![0.0; w.len()])
    }

    pub fn with_boundaries(mut self, left: LeftBoundary, right: RightBoundary) -> Self {
        self.left = left;
        self.right = right;
        self
    }

    pub fn first(&self) -> i64 {
        self.offset
    }

    pub fn last(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn left(&self) -> LeftBoundary {
        self.left
    }

    pub fn right(&self) -> RightBoundary {
        self.right
    }

    /// `x_n`, including the padded points `x_{-M-1}` and `x_{N+1}`.
    pub fn get(&self, n: i64) -> Result<f64> {
        if self.values.is_empty() {
            return Err(HardyError::Empty);
        }
        if n >= self.first() && n <= self.last() {
            return Ok(self.values[(n - self.offset) as usize]);
        }
        if n == self.first() - 1 {
            return match self.left {
                LeftBoundary::DirichletZero => Ok(0.0),
                LeftBoundary::NeumannCopy => Ok(self.values[0]),
                LeftBoundary::Free => Err(HardyError::UnresolvedBoundary { index: n }),
            };
        }
        if n == self.last() + 1 {
            return match self.right {
                RightBoundary::DirichletZero => Ok(0.0),
                RightBoundary::Free => Err(HardyError::UnresolvedBoundary { index: n }),
            };
        }
        Err(HardyError::IndexOutOfRange { index: n, lo: self.first() - 1, hi: self.last() + 1 })
    }

    /// Checks that the sequence lives on the same index set as `w`.
    pub fn check_on(&self, w: &WeightedInterval) -> Result<()> {
        if self.len() != w.len() {
            return Err(HardyError::LengthMismatch { expected: w.len(), found: self.len() });
        }
        if self.first() != w.first() {
            return Err(HardyError::IndexOutOfRange { index: self.first(), lo: w.first(), hi: w.first() });
        }
        Ok(())
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|x| *x *= c);
        out
    }
}
