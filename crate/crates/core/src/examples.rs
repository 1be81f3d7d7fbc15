//! Weight generators for three model families and the helpers used to check
//! them against their closed forms.
//!
//! * power-telescoping weights on `[1, N]` whose hat-weight tails are exactly
//!   `n^(-p*/q)`, so `B^ND = 1` on the infinite interval;
//! * power laws `u_n = n^(-α)`, `v_n = n^β` with an asymptotic classifier for
//!   finiteness of the `DD` constant;
//! * geometric weights `u_n = r^n`, `v_n = b r^n` for the `NN` regime.

use alloc::vec::Vec;
use libm::{ceil, exp, expm1, log, log1p, pow};

use crate::error::{HardyError, Result};
use crate::model::{Exponents, WeightedInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    Ex51,
    Ex52,
    Ex53,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExampleParams {
    Telescoping,
    PowerLaw { alpha: f64, beta: f64 },
    Geometric { r: f64, b: f64 },
}

/// One member of a family, truncated to `[1, n]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleSpec {
    pub params: ExampleParams,
    pub exponents: Exponents,
    pub n: usize,
}

impl ExampleSpec {
    pub fn id(&self) -> ExampleId {
        match self.params {
            ExampleParams::Telescoping => ExampleId::Ex51,
            ExampleParams::PowerLaw { .. } => ExampleId::Ex52,
            ExampleParams::Geometric { .. } => ExampleId::Ex53,
        }
    }

    pub fn weights(&self) -> Result<WeightedInterval> {
        match self.params {
            ExampleParams::Telescoping => gen_example51(&self.exponents, self.n),
            ExampleParams::PowerLaw { alpha, beta } => gen_example52(alpha, beta, &self.exponents, self.n),
            ExampleParams::Geometric { r, b } => gen_example53(r, b, &self.exponents, self.n),
        }
    }
}

fn need_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(HardyError::TooShort { needed: min, have: n })
    } else {
        Ok(())
    }
}

/// `n^(-a) - (n+1)^(-a)` without cancellation.
fn telescoping_term(n: f64, a: f64) -> f64 {
    -pow(n, -a) * expm1(-a * log1p(1.0 / n))
}

/// `Σ_{j=n}^{N} v̂_j = n^(-a) - (N+1)^(-a)` for the telescoping family, `a = p*/q`.
pub fn ex51_tail(n: usize, big_n: usize, e: &Exponents) -> f64 {
    let a = e.p_star() / e.q();
    let gap = (big_n + 1 - n) as f64 / n as f64;
    -pow(n as f64, -a) * expm1(-a * log1p(gap))
}

/// `u_n = 1`, `v̂_n = n^(-p*/q) - (n+1)^(-p*/q)` on `[1, N]`.
pub fn gen_example51(e: &Exponents, n: usize) -> Result<WeightedInterval> {
    need_n(n, 1)?;
    let a = e.p_star() / e.q();
    let v_hat = (1..=n).map(|k| telescoping_term(k as f64, a)).collect();
    WeightedInterval::from_dual(1, alloc::vec![1.0; n], v_hat, e)
}

/// As [`gen_example51`] but with the whole tail `Σ_{j>=N} v̂_j = N^(-p*/q)`
/// lumped into the last hat weight, so every suffix sum is exact.
pub fn gen_example51_lumped(e: &Exponents, n: usize) -> Result<WeightedInterval> {
    need_n(n, 1)?;
    let a = e.p_star() / e.q();
    let mut v_hat: Vec<f64> = (1..=n).map(|k| telescoping_term(k as f64, a)).collect();
    v_hat[n - 1] = pow(n as f64, -a);
    WeightedInterval::from_dual(1, alloc::vec![1.0; n], v_hat, e)
}

/// `u_n = n^(-α)`, `v_n = n^β` on `[1, N]`.
pub fn gen_example52(alpha: f64, beta: f64, e: &Exponents, n: usize) -> Result<WeightedInterval> {
    need_n(n, 2)?;
    check_finite("alpha", alpha)?;
    check_finite("beta", beta)?;
    let u = (1..=n).map(|k| pow(k as f64, -alpha)).collect();
    let v = (1..=n).map(|k| pow(k as f64, beta)).collect();
    WeightedInterval::new(1, u, v, e)
}

/// `u_n = r^n`, `v_n = b r^n` on `[1, N]`, `0 < r < 1`, `b > 0`.
pub fn gen_example53(r: f64, b: f64, e: &Exponents, n: usize) -> Result<WeightedInterval> {
    need_n(n, 2)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(HardyError::InvalidParameter { name: "r", value: r, reason: "need 0 < r < 1" });
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(HardyError::InvalidParameter { name: "b", value: b, reason: "need b > 0" });
    }
    let u: Vec<f64> = (1..=n).map(|k| pow(r, k as f64)).collect();
    let v = u.iter().map(|t| b * t).collect();
    WeightedInterval::new(1, u, v, e)
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(HardyError::InvalidParameter { name, value, reason: "must be finite" })
    }
}

/// Published closed form for `B^*` of the geometric family, kept verbatim so
/// it can be compared with the direct scan.
pub fn ex53_display_upper(r: f64, b: f64, e: &Exponents, n: usize) -> f64 {
    let (p, q, ps) = (e.p(), e.q(), e.p_star());
    let c = 1.0 - ps;
    let nf = n as f64;
    let num = pow(r, nf * c) - pow(r, 2.0 * c);
    let den = pow(r, -ps / q) + pow(r, nf * (-ps / q));
    pow(b, -1.0 / p) * pow(pow(r, c) - 1.0, -1.0 / ps) * pow(num / den, 1.0 / ps)
}

/// Published closed form for `B_*` of the geometric family.
pub fn ex53_display_lower(r: f64, b: f64, e: &Exponents, n: usize) -> f64 {
    let (p, ps, qs) = (e.p(), e.p_star(), e.q_star());
    let c = 1.0 - ps;
    let nf = n as f64;
    let num = pow(pow(r, nf * c) - pow(r, 2.0 * c), qs / ps);
    let den = pow(r, 1.0 - qs) + pow(r, nf * (1.0 - qs));
    pow(b, -1.0 / p) * pow(pow(r, c) - 1.0, -1.0 / ps) * pow(num / den, 1.0 / qs)
}

/// The pair objective `F(x, y)` (or `F_0` when `lower`) whose supremum over
/// `1 <= x < y <= N` is claimed to sit at `(1, N)`.
pub fn ex53_objective(r: f64, e: &Exponents, n: usize, x: usize, y: usize, lower: bool) -> f64 {
    let (q, ps, qs) = (e.q(), e.p_star(), e.q_star());
    let c = 1.0 - ps;
    let num = pow(r, y as f64 * c) - pow(r, (x + 1) as f64 * c);
    let left = r - pow(r, (x + 1) as f64);
    let right = pow(r, y as f64) - pow(r, (n + 1) as f64);
    if lower {
        pow(num, qs / ps) / (pow(left, 1.0 - qs) + pow(right, 1.0 - qs))
    } else {
        num / (pow(left, -ps / q) + pow(right, -ps / q))
    }
}

/// Finiteness threshold for the power-law family: the `DD` inequality holds
/// iff `α > 1` when `β = p - 1`, and iff `α >= 1 + (q/p)(p - 1 - β)` otherwise.
pub fn ex52_predicted_bounded(alpha: f64, beta: f64, e: &Exponents) -> bool {
    let (p, q) = (e.p(), e.q());
    if beta == p - 1.0 {
        alpha > 1.0
    } else {
        alpha >= 1.0 + (q / p) * (p - 1.0 - beta)
    }
}

/// Largest index summed exactly; beyond it sums use Euler–Maclaurin.
const EXACT_UPTO: usize = 64;
/// Spacing of the geometric grid in `ln n`.
const LOG_STEP: f64 = 0.2;
/// Truncations `N = e^t` compared by [`ex52_classify`].
const LOG_TRUNCATIONS: [f64; 3] = [100.0, 200.0, 400.0];
/// Growth of `ln B` per doubling of `ln N` must not decay faster than this
/// factor for the constant to count as divergent: polynomial growth doubles
/// the increment, logarithmic growth keeps it, and the `O(1/ln N)` approach
/// of a finite limit halves it.
const DECAY_CUTOFF: f64 = 0.75;
/// Increments below this are treated as converged outright.
const FLAT: f64 = 1e-9;

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + log1p(exp(lo - hi))
}

/// `ln((e^(cΔ) - 1)/c)` for `Δ >= 0`.
fn ln_expm1_over(c: f64, d: f64) -> f64 {
    if c == 0.0 {
        log(d)
    } else if c > 0.0 {
        c * d + log(-expm1(-c * d)) - log(c)
    } else {
        log(-expm1(c * d)) - log(-c)
    }
}

/// `ln Σ n^(-g)` over the continuous range `[e^lo, e^hi]` by Euler–Maclaurin
/// with corrections through the third derivative; the upper end is counted when
/// `closed` is set.
fn ln_em(g: f64, lo: f64, hi: f64, closed: bool) -> f64 {
    let c = 1.0 - g;
    let integral = c * lo + ln_expm1_over(c, hi - lo);
    let (f_lo, f_hi) = (-g * lo, -g * hi);
    let m = integral.max(f_lo).max(f_hi);
    let half_hi = if closed { 0.5 } else { -0.5 };
    let total = exp(integral - m) + 0.5 * exp(f_lo - m) + half_hi * exp(f_hi - m)
        + g / 12.0 * (exp(-(g + 1.0) * lo - m) - exp(-(g + 1.0) * hi - m))
        - g * (g + 1.0) * (g + 2.0) / 720.0 * (exp(-(g + 3.0) * lo - m) - exp(-(g + 3.0) * hi - m));
    m + log(total)
}

/// Grid over `[1, e^t]`: the integers up to [`EXACT_UPTO`], then a geometric
/// grid. Stored as `ln n`.
fn log_grid(t: f64) -> Vec<f64> {
    let mut s: Vec<f64> = (1..=EXACT_UPTO).map(|k| log(k as f64)).collect();
    let base = log(EXACT_UPTO as f64);
    let steps = ceil((t - base) / LOG_STEP) as usize;
    for j in 1..=steps {
        s.push((base + j as f64 * LOG_STEP).min(t));
    }
    s
}

/// Power sums `Σ n^(-g)` between grid nodes in log space.
struct PowerSums {
    g: f64,
    /// `ln Σ_{n=1}^k` for `k = 0..=EXACT_UPTO` (entry 0 is `-inf`).
    exact_prefix: Vec<f64>,
    start: f64,
}

impl PowerSums {
    fn new(g: f64) -> Self {
        let mut exact_prefix = alloc::vec![f64::NEG_INFINITY];
        let mut acc = 0.0;
        for k in 1..=EXACT_UPTO {
            acc += pow(k as f64, -g);
            exact_prefix.push(log(acc));
        }
        Self { g, exact_prefix, start: log((EXACT_UPTO + 1) as f64) }
    }

    /// `ln Σ_{n=a}^{k}` for integers `a <= k <= EXACT_UPTO`.
    fn exact(&self, a: usize, k: usize) -> f64 {
        let (hi, lo) = (self.exact_prefix[k], self.exact_prefix[a - 1]);
        if lo == f64::NEG_INFINITY {
            hi
        } else {
            hi + log(-expm1(lo - hi))
        }
    }

    /// `ln Σ` over grid nodes `i..j` (node `j` included when `closed`).
    fn between(&self, grid: &[f64], i: usize, j: usize, closed: bool) -> f64 {
        let exact = EXACT_UPTO - 1;
        if j <= exact {
            let top = if closed { j + 1 } else { j };
            return if top < i + 1 { f64::NEG_INFINITY } else { self.exact(i + 1, top) };
        }
        let tail_lo = if i <= exact { self.start } else { grid[i] };
        let tail = ln_em(self.g, tail_lo, grid[j], closed);
        if i <= exact {
            log_add(self.exact(i + 1, EXACT_UPTO), tail)
        } else {
            tail
        }
    }
}

/// `ln B^*` of the `DD` regime for the power-law family truncated at
/// `N = e^t`, with pairs restricted to the log grid.
pub fn ex52_ln_b_dd_upper(alpha: f64, beta: f64, e: &Exponents, t: f64) -> f64 {
    let grid = log_grid(t);
    let last = grid.len() - 1;
    let u = PowerSums::new(alpha);
    let v_hat = PowerSums::new(-beta * (1.0 - e.p_star()));
    let ex = if e.is_diagonal() { 1.0 - e.p() } else { -e.q() / e.p_star() };
    let left: Vec<f64> = (0..=last).map(|i| ex * v_hat.between(&grid, 0, i, true)).collect();
    let right: Vec<f64> = (0..=last).map(|j| ex * v_hat.between(&grid, j, last, true)).collect();
    let mut best = f64::NEG_INFINITY;
    for x in 0..last {
        for y in x + 1..=last {
            let mid = u.between(&grid, x, y, false);
            let score = mid - log_add(left[x], right[y]);
            if score > best {
                best = score;
            }
        }
    }
    best / e.q()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ex52Classification {
    /// Growth of `ln B^*` from `N = e^100` to `N = e^200`.
    pub growth_low: f64,
    /// Growth of `ln B^*` from `N = e^200` to `N = e^400`.
    pub growth_high: f64,
    pub divergent: bool,
    /// Verdict of the closed-form threshold.
    pub predicted_divergent: bool,
}

impl Ex52Classification {
    pub fn agrees(&self) -> bool {
        self.divergent == self.predicted_divergent
    }
}

/// Decides whether the power-law `DD` constant stays bounded as `N → ∞` from
/// `B^*` at three astronomically far truncations.
pub fn ex52_classify(alpha: f64, beta: f64, e: &Exponents) -> Ex52Classification {
    let [a, b, c] = LOG_TRUNCATIONS.map(|t| ex52_ln_b_dd_upper(alpha, beta, e, t));
    let (growth_low, growth_high) = (b - a, c - b);
    Ex52Classification {
        growth_low,
        growth_high,
        divergent: growth_high > FLAT && growth_high > DECAY_CUTOFF * growth_low,
        predicted_divergent: !ex52_predicted_bounded(alpha, beta, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{b_dd_upper, b_nd};

    fn e(p: f64, q: f64) -> Exponents {
        Exponents::new(p, q).unwrap()
    }

    #[test]
    fn telescoping_first_term() {
        let w = gen_example51(&e(2.0, 2.0), 5).unwrap();
        assert!((w.v_hat()[0] - 0.5).abs() < 1e-16);
        assert_eq!(w.u(), &[1.0; 5]);
    }

    #[test]
    fn lumped_family_has_unit_constant() {
        for (p, q) in [(2.0, 2.0), (2.0, 4.0), (1.5, 3.0)] {
            let w = gen_example51_lumped(&e(p, q), 1000).unwrap();
            let r = b_nd(&w, &e(p, q)).unwrap();
            assert!((r.b_lower - 1.0).abs() < 1e-12, "{p} {q}: {}", r.b_lower);
        }
    }

    #[test]
    fn parameter_checks() {
        let x = e(2.0, 2.0);
        assert!(gen_example53(1.0, 1.0, &x, 5).is_err());
        assert!(gen_example53(0.5, 0.0, &x, 5).is_err());
        assert!(gen_example52(1.0, 1.0, &x, 1).is_err());
        assert!(gen_example51(&x, 0).is_err());
    }

    #[test]
    fn threshold_rule() {
        let x = e(2.0, 2.0);
        assert!(!ex52_predicted_bounded(1.0, 1.0, &x));
        assert!(ex52_predicted_bounded(1.05, 1.0, &x));
        assert!(ex52_predicted_bounded(1.5, 0.5, &x));
        assert!(!ex52_predicted_bounded(1.45, 0.5, &x));
        assert!(ex52_predicted_bounded(0.0, 2.0, &x));
    }

    #[test]
    fn log_space_scan_matches_direct_scan_on_exact_range() {
        for (alpha, beta, p, q) in [(1.2, 0.5, 2.0, 2.0), (0.7, 2.0, 1.5, 3.0), (1.0, 1.0, 2.0, 2.0)] {
            let x = e(p, q);
            let w = gen_example52(alpha, beta, &x, EXACT_UPTO).unwrap();
            let direct = b_dd_upper(&w, &x).unwrap().value;
            let logged = exp(ex52_ln_b_dd_upper(alpha, beta, &x, log(EXACT_UPTO as f64)));
            assert!((direct - logged).abs() <= 1e-12 * direct, "{direct} vs {logged}");
        }
    }

    #[test]
    fn classifier_separates_the_boundary_case() {
        let x = e(2.0, 2.0);
        assert!(ex52_classify(1.0, 1.0, &x).divergent);
        assert!(!ex52_classify(1.2, 1.0, &x).divergent);
        assert!(ex52_classify(0.9, 2.0, &x).agrees());
    }

    #[test]
    fn euler_maclaurin_sums() {
        // Σ_{65}^{1000} n^-2 and Σ_{65}^{999} n^-0.5
        let exact2: f64 = (65..=1000).map(|n| 1.0 / (n as f64 * n as f64)).sum();
        let em2 = exp(ln_em(2.0, log(65.0), log(1000.0), true));
        assert!((exact2 - em2).abs() < 1e-9 * exact2);
        let exact_half: f64 = (65..1000).map(|n| 1.0 / (n as f64).sqrt()).sum();
        let em_half = exp(ln_em(0.5, log(65.0), log(1000.0), false));
        assert!((exact_half - em_half).abs() < 1e-9 * exact_half);
        let harmonic: f64 = (65..=1000).map(|n| 1.0 / n as f64).sum();
        assert!((harmonic - exp(ln_em(1.0, log(65.0), log(1000.0), true))).abs() < 1e-9 * harmonic);
    }
}
