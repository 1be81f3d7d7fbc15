//! Summation helpers.
//!
//! Long reductions use pairwise summation; running (prefix/suffix) sums use
//! Neumaier compensation so that supremum searches over partial sums stay
//! accurate at lengths around 10^6.

use alloc::vec::Vec;

const PAIRWISE_CUTOFF: usize = 1024;
const PAIRWISE_BLOCK: usize = 128;

/// Sum of a slice. Slices longer than 1024 entries are reduced pairwise.
/// The empty sum is exactly zero.
pub fn sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_CUTOFF {
        values.iter().sum()
    } else {
        pairwise(values)
    }
}

fn pairwise(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}

/// Sum of `f(i)` for `i` in `0..len`, reduced with the same policy as [`sum`].
pub fn sum_by<F: Fn(usize) -> f64>(len: usize, f: F) -> f64 {
    if len <= PAIRWISE_CUTOFF {
        (0..len).map(&f).sum()
    } else {
        pairwise_by(0, len, &f)
    }
}

fn pairwise_by<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
    if hi - lo <= PAIRWISE_BLOCK {
        return (lo..hi).map(f).sum();
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_by(lo, mid, f) + pairwise_by(mid, hi, f)
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `out[i] = values[0] + ... + values[i]`.
pub fn prefix_sums(values: &[f64]) -> Vec<f64> {
    let mut acc = Compensated::new();
    values
        .iter()
        .map(|&v| {
            acc.add(v);
            acc.value()
        })
        .collect()
}

/// `out[i] = values[i] + ... + values[len - 1]`.
pub fn suffix_sums(values: &[f64]) -> Vec<f64> {
    let mut out = alloc::vec![0.0; values.len()];
    let mut acc = Compensated::new();
    for (i, &v) in values.iter().enumerate().rev() {
        acc.add(v);
        out[i] = acc.value();
    }
    out
}
