//! Splitting constructions for the two-sided regimes.
//!
//! Cutting `[-M, N]` at `ζ` and moving a fraction `γ` of the mass at the cut to
//! the other side turns a `DD` or `NN` problem into one problem with a single
//! boundary condition on each side. The curves `B±(ζ, γ)` are the one-sided
//! constants of the two halves; their crossing bounds the two-sided constant
//! from above. The witness sequences give the matching lower bounds.

use alloc::vec::Vec;
use libm::{fabs, pow};

use crate::error::{HardyError, Result};
use crate::model::{Exponents, LeftBoundary, RightBoundary, Sequence, WeightedInterval};
use crate::operators::abs_pow;
use crate::sum::{prefix_sums, suffix_sums, sum_by};

/// A cut `(ζ, γ)` together with the left and right curve values there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPoint {
    pub zeta: i64,
    pub gamma: f64,
    /// `1 - γ`, carried separately so cuts next to `γ = 1` keep full precision.
    pub one_minus_gamma: f64,
    pub b_minus: f64,
    pub b_plus: f64,
}

impl SplitPoint {
    /// `|B- - B+| / max(B-, B+)`.
    pub fn relative_gap(&self) -> f64 {
        let scale = self.b_minus.max(self.b_plus);
        if scale == 0.0 {
            0.0
        } else {
            fabs(self.b_minus - self.b_plus) / scale
        }
    }
}

/// Weights of one half of a split. Unlike [`WeightedInterval`] entries may
/// vanish, and the `u` and `v` ranges need not coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSide {
    pub u_offset: i64,
    pub u: Vec<f64>,
    pub v_offset: i64,
    /// Dual weights `v̂`; the primal weight is `v̂^(1-p)`, infinite where `v̂ = 0`.
    pub v_hat: Vec<f64>,
}

impl SplitSide {
    /// Primal `v = v̂^(1-p)`.
    pub fn v(&self, p: f64) -> Vec<f64> {
        self.v_hat.iter().map(|&h| if h == 0.0 { f64::INFINITY } else { pow(h, 1.0 - p) }).collect()
    }

    pub fn u_at(&self, n: i64) -> f64 {
        self.u[(n - self.u_offset) as usize]
    }

    pub fn v_hat_at(&self, n: i64) -> f64 {
        self.v_hat[(n - self.v_offset) as usize]
    }
}

/// Both sides of the two splitting identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCheck {
    pub q_whole: f64,
    pub q_split: f64,
    pub p_whole: f64,
    pub p_split: f64,
}

impl SplitCheck {
    /// Largest relative discrepancy of the two identities.
    pub fn max_rel_err(&self) -> f64 {
        let rel = |a: f64, b: f64| {
            let s = fabs(a).max(fabs(b));
            if s == 0.0 {
                0.0
            } else {
                fabs(a - b) / s
            }
        };
        rel(self.q_whole, self.q_split).max(rel(self.p_whole, self.p_split))
    }
}

/// `v |d|^p` written through `v̂ = v^(1-p*)`, with `0 · ∞ = 0` when `d = 0`.
fn hat_edge(v_hat: f64, d: f64, p: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else if v_hat == 0.0 {
        f64::INFINITY
    } else {
        pow(v_hat, 1.0 - p) * abs_pow(d, p)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(HardyError::InvalidGamma(gamma))
    }
}

fn check_zeta(zeta: i64, lo: i64, hi: i64) -> Result<()> {
    if zeta < lo || zeta > hi {
        Err(HardyError::IndexOutOfRange { index: zeta, lo, hi })
    } else {
        Ok(())
    }
}

fn need_len(w: &WeightedInterval, n: usize) -> Result<()> {
    if w.len() < n {
        Err(HardyError::TooShort { needed: n, have: w.len() })
    } else {
        Ok(())
    }
}

/// Bisects `γ ∈ [0, 1]` for a zero of `left(γ) - right(γ)`, which changes
/// sign (weakly) between the endpoints. Returns the best point seen.
fn bisect_gamma<F: Fn(f64, f64) -> (f64, f64)>(zeta: i64, curves: F) -> SplitPoint {
    let point = |g: f64, gc: f64| {
        let (b_minus, b_plus) = curves(g, gc);
        SplitPoint { zeta, gamma: g, one_minus_gamma: gc, b_minus, b_plus }
    };
    let at_lo = point(0.0, 1.0);
    let at_hi = point(1.0, 0.0);
    let sign_lo = at_lo.b_minus - at_lo.b_plus;
    let mut best = if at_lo.relative_gap() <= at_hi.relative_gap() { at_lo } else { at_hi };
    if best.relative_gap() == 0.0 {
        return best;
    }
    // the bracket is tracked as both γ and 1 - γ so either end resolves to
    // the last bit
    let (mut lo, mut hi) = ((0.0f64, 1.0f64), (1.0f64, 0.0f64));
    for _ in 0..2200 {
        let mid = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
        let inside = |t: f64, a: f64, b: f64| t > a.min(b) && t < a.max(b);
        if !inside(mid.0, lo.0, hi.0) && !inside(mid.1, lo.1, hi.1) {
            break;
        }
        let pt = point(mid.0, mid.1);
        if pt.relative_gap() < best.relative_gap() {
            best = pt;
        }
        if best.relative_gap() <= 1e-14 {
            break;
        }
        let d = pt.b_minus - pt.b_plus;
        if (d > 0.0) == (sign_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Dirichlet–Dirichlet

/// Split weights for `DD` at `(ζ, γ)`.
///
/// Left: `u⁻ = u` on `[-M, ζ-1]`, `u⁻_ζ = (1-γ) u_ζ`, with `v` on `[-M, ζ]`.
/// Right: `u⁺_{ζ+1} = γ u_ζ`, `u⁺_n = u_{n-1}` on `[ζ+2, N+1]`, with `v` on
/// `[ζ+1, N]`. Any `ζ ∈ [-M, N-1]` is accepted.
pub fn dd_split_weights(w: &WeightedInterval, zeta: i64, gamma: f64) -> Result<(SplitSide, SplitSide)> {
    need_len(w, 2)?;
    check_zeta(zeta, w.first(), w.last() - 1)?;
    check_gamma(gamma)?;
    let z = w.slot(zeta)?;
    let (u, vh) = (w.u(), w.v_hat());
    let mut u_left = u[..=z].to_vec();
    u_left[z] = (1.0 - gamma) * u[z];
    let left = SplitSide { u_offset: w.first(), u: u_left, v_offset: w.first(), v_hat: vh[..=z].to_vec() };
    let mut u_right = Vec::with_capacity(u.len() - z);
    u_right.push(gamma * u[z]);
    u_right.extend_from_slice(&u[z + 1..]);
    let right = SplitSide { u_offset: zeta + 1, u: u_right, v_offset: zeta + 1, v_hat: vh[z + 1..].to_vec() };
    Ok((left, right))
}

/// Splits `x` (with `x_{-M-1} = x_N = 0`) at `ζ`: `x⁻ = x` on `[-M, ζ]` and
/// `x⁺_n = x_{n-1}` on `[ζ+1, N+1]`.
pub fn dd_split_sequences(x: &Sequence, zeta: i64) -> Result<(Sequence, Sequence)> {
    if x.len() < 2 {
        return Err(HardyError::TooShort { needed: 2, have: x.len() });
    }
    if x.left() != LeftBoundary::DirichletZero {
        return Err(HardyError::BoundaryMismatch("DD splitting needs x_{-M-1} = 0"));
    }
    if x.values()[x.len() - 1] != 0.0 {
        return Err(HardyError::BoundaryMismatch("DD splitting needs x_N = 0"));
    }
    check_zeta(zeta, x.first(), x.last() - 1)?;
    let z = (zeta - x.first()) as usize;
    let minus = Sequence::new(x.first(), x.values()[..=z].to_vec(), LeftBoundary::DirichletZero, RightBoundary::Free);
    let plus = Sequence::new(zeta + 1, x.values()[z..].to_vec(), LeftBoundary::Free, RightBoundary::DirichletZero);
    Ok((minus, plus))
}

/// Evaluates both sides of the `DD` splitting identities for `x` at `(ζ, γ)`.
pub fn dd_split_identities(w: &WeightedInterval, e: &Exponents, x: &Sequence, zeta: i64, gamma: f64) -> Result<SplitCheck> {
    x.check_on(w)?;
    let (left, right) = dd_split_weights(w, zeta, gamma)?;
    let (xm, xp) = dd_split_sequences(x, zeta)?;
    let (p, q) = (e.p(), e.q());
    let xs = x.values();
    let (u, v) = (w.u(), w.v());
    let q_whole = sum_by(xs.len(), |i| u[i] * abs_pow(xs[i], q));
    let p_whole = sum_by(xs.len(), |i| v[i] * abs_pow(xs[i] - if i > 0 { xs[i - 1] } else { 0.0 }, p));

    let a = xm.values();
    let b = xp.values();
    let q_left = sum_by(a.len(), |i| left.u[i] * abs_pow(a[i], q));
    let q_right = sum_by(b.len(), |i| right.u[i] * abs_pow(b[i], q));
    let p_left = sum_by(a.len(), |i| v[i] * abs_pow(a[i] - if i > 0 { a[i - 1] } else { 0.0 }, p));
    // right energy: n ∈ [ζ+1, N], neighbour x⁺_{n+1}
    let z = (zeta - w.first()) as usize;
    let p_right = sum_by(b.len() - 1, |i| v[z + 1 + i] * abs_pow(b[i] - b[i + 1], p));
    Ok(SplitCheck { q_whole, q_split: q_left + q_right, p_whole, p_split: p_left + p_right })
}

/// Precomputed sums for repeated `B±(ζ, γ)` evaluation.
struct DdCurves<'a> {
    u: &'a [f64],
    left: Vec<f64>,
    right: Vec<f64>,
    a: f64,
    b: f64,
}

impl<'a> DdCurves<'a> {
    fn new(w: &'a WeightedInterval, e: &Exponents) -> Self {
        Self { u: w.u(), left: prefix_sums(w.v_hat()), right: suffix_sums(w.v_hat()), a: 1.0 / e.p_star(), b: 1.0 / e.q() }
    }

    fn eval(&self, z: usize, gamma: f64, gc: f64) -> (f64, f64) {
        let u = self.u;
        let mut minus = 0.0f64;
        let mut acc = 0.0;
        let mut i = z;
        loop {
            let val = pow(self.left[i], self.a) * pow(acc + gc * u[z], self.b);
            minus = minus.max(val);
            if i == 0 {
                break;
            }
            acc += u[i - 1];
            i -= 1;
        }
        let mut plus = 0.0f64;
        let mut acc = 0.0;
        for n in z + 1..u.len() {
            let val = pow(acc + gamma * u[z], self.b) * pow(self.right[n], self.a);
            plus = plus.max(val);
            acc += u[n];
        }
        (minus, plus)
    }
}

/// `B⁻(ζ, γ)` and `B⁺(ζ, γ)` for `DD`, `ζ ∈ [-M, N]`:
///
/// `B⁻ = sup_{n ∈ [-M, ζ]} (Σ_{-M}^n v̂)^(1/p*) (Σ_n^{ζ-1} u + (1-γ) u_ζ)^(1/q)`,
/// `B⁺ = sup_{n ∈ [ζ+1, N]} (Σ_{ζ+1}^{n-1} u + γ u_ζ)^(1/q) (Σ_n^N v̂)^(1/p*)`.
///
/// An empty supremum is 0.
pub fn dd_b_curves(w: &WeightedInterval, e: &Exponents, zeta: i64, gamma: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    let z = w.slot(zeta)?;
    Ok(DdCurves::new(w, e).eval(z, gamma, 1.0 - gamma))
}

/// Crossing `B⁻(ζ̄, γ̄) = B⁺(ζ̄, γ̄)` for `DD`.
///
/// `ζ̄` is the largest cut with `B⁺(ζ̄, 1) >= B⁻(ζ̄, 1)`; by the shift identity
/// `B±(ζ, 0) = B±(ζ + 1, 1)` the difference changes sign in `γ` there.
pub fn dd_find_crossing(w: &WeightedInterval, e: &Exponents) -> Result<SplitPoint> {
    need_len(w, 2)?;
    let curves = DdCurves::new(w, e);
    let l = w.len();
    let mut zc = None;
    for z in (0..l).rev() {
        let (m, p) = curves.eval(z, 1.0, 0.0);
        if p >= m {
            zc = Some(z);
            break;
        }
    }
    let z = zc.ok_or(HardyError::NoBracket)?;
    if z + 1 >= l {
        return Err(HardyError::NoBracket);
    }
    Ok(bisect_gamma(w.index(z), |g, gc| curves.eval(z, g, gc)))
}

/// Lower-bound witness for `DD` at the pair `x < y`, collapsed at `ζ`
/// (`x <= ζ <= y`).
///
/// With `P_n = Σ_{-M}^n v̂`, `S_n = Σ_n^N v̂` and `c = S_y / P_x`, the
/// sequence is `c P_n` up to the cut, `S_y` across `[x, y-1]` and `S_{n+1}`
/// beyond, so `x_N = 0`. Its ratio is at least
/// `(Σ_x^{y-1} u)^(1/q) [P_x^(1-p) + S_y^(1-p)]^(-1/p)`.
pub fn dd_witness_at(w: &WeightedInterval, x: i64, y: i64, zeta: i64) -> Result<Sequence> {
    if !(w.contains(x) && w.contains(y) && x < y) {
        return Err(HardyError::IndexOutOfRange { index: if w.contains(x) { y } else { x }, lo: w.first(), hi: w.last() });
    }
    check_zeta(zeta, x, y)?;
    let pre = prefix_sums(w.v_hat());
    let suf = suffix_sums(w.v_hat());
    let (xs, ys, zs) = ((x - w.first()) as usize, (y - w.first()) as usize, (zeta - w.first()) as usize);
    let l = w.len();
    let c = suf[ys] / pre[xs];
    // the uncollapsed sequence lives on [-M, N+1]
    let tilde = |i: usize| -> f64 {
        if i <= xs {
            c * pre[i]
        } else if i <= ys {
            suf[ys]
        } else if i < l {
            suf[i]
        } else {
            0.0
        }
    };
    let values: Vec<f64> = (0..l).map(|i| if i <= zs { tilde(i) } else { tilde(i + 1) }).collect();
    Ok(Sequence::new(w.first(), values, LeftBoundary::DirichletZero, RightBoundary::DirichletZero))
}

/// [`dd_witness_at`] collapsed at `ζ = x`.
pub fn dd_witness(w: &WeightedInterval, x: i64, y: i64) -> Result<Sequence> {
    dd_witness_at(w, x, y, x)
}

// ---------------------------------------------------------------------------
// Neumann–Neumann

/// Split weights for `NN` at `(ζ, γ)`, `ζ ∈ [-M+1, N]`.
///
/// Left on `[-M+1, ζ]`: `u⁻_n = u_{n-1}`, `v̂⁻ = v̂` except `v̂⁻_ζ = γ v̂_ζ`.
/// Right on `[ζ, N]`: `u⁺ = u`, `v̂⁺ = v̂` except `v̂⁺_ζ = (1-γ) v̂_ζ`.
/// In primal terms `v⁻_ζ = γ^(1-p) v_ζ` and `v⁺_ζ = (1-γ)^(1-p) v_ζ`.
pub fn nn_split_weights(w: &WeightedInterval, zeta: i64, gamma: f64) -> Result<(SplitSide, SplitSide)> {
    need_len(w, 2)?;
    check_zeta(zeta, w.first() + 1, w.last())?;
    check_gamma(gamma)?;
    let z = w.slot(zeta)?;
    let (u, vh) = (w.u(), w.v_hat());
    let mut vh_left = vh[1..=z].to_vec();
    vh_left[z - 1] = gamma * vh[z];
    let left = SplitSide { u_offset: w.first() + 1, u: u[..z].to_vec(), v_offset: w.first() + 1, v_hat: vh_left };
    let mut vh_right = vh[z..].to_vec();
    vh_right[0] = (1.0 - gamma) * vh[z];
    let right = SplitSide { u_offset: zeta, u: u[z..].to_vec(), v_offset: zeta, v_hat: vh_right };
    Ok((left, right))
}

/// Splits `x` at `(ζ, γ)`: `x⁻_n = x_{n-1}` on `[-M+1, ζ]`, `x⁺ = x` on
/// `[ζ, N]`, and both get the interpolated node `(1-γ) x_{ζ-1} + γ x_ζ`
/// (at `ζ+1` on the left, at `ζ-1` on the right).
pub fn nn_split_sequences(x: &Sequence, zeta: i64, gamma: f64) -> Result<(Sequence, Sequence)> {
    if x.len() < 2 {
        return Err(HardyError::TooShort { needed: 2, have: x.len() });
    }
    check_zeta(zeta, x.first() + 1, x.last())?;
    check_gamma(gamma)?;
    let z = (zeta - x.first()) as usize;
    let xs = x.values();
    let mid = (1.0 - gamma) * xs[z - 1] + gamma * xs[z];
    let mut minus = xs[..z].to_vec();
    minus.push(mid);
    let mut plus = Vec::with_capacity(xs.len() - z + 1);
    plus.push(mid);
    plus.extend_from_slice(&xs[z..]);
    Ok((
        Sequence::new(x.first() + 1, minus, LeftBoundary::Free, RightBoundary::Free),
        Sequence::new(zeta - 1, plus, LeftBoundary::Free, RightBoundary::Free),
    ))
}

/// Evaluates both sides of the `NN` splitting identities for `x` at `(ζ, γ)`,
/// centring the `q`-sums at `m(x)`.
pub fn nn_split_identities(w: &WeightedInterval, e: &Exponents, x: &Sequence, zeta: i64, gamma: f64) -> Result<SplitCheck> {
    x.check_on(w)?;
    let m = crate::meanzero::solve_m(x, w, e)?.m;
    let (left, right) = nn_split_weights(w, zeta, gamma)?;
    let (xm, xp) = nn_split_sequences(x, zeta, gamma)?;
    let (p, q) = (e.p(), e.q());
    let xs = x.values();
    let (u, vh) = (w.u(), w.v_hat());
    let q_whole = sum_by(xs.len(), |i| u[i] * abs_pow(xs[i] - m, q));
    let p_whole = sum_by(xs.len() - 1, |i| hat_edge(vh[i + 1], xs[i + 1] - xs[i], p));

    let a = xm.values();
    let b = xp.values();
    let q_left = sum_by(left.u.len(), |i| left.u[i] * abs_pow(a[i] - m, q));
    let q_right = sum_by(right.u.len(), |i| right.u[i] * abs_pow(b[i + 1] - m, q));
    let p_left = sum_by(left.v_hat.len(), |i| hat_edge(left.v_hat[i], a[i] - a[i + 1], p));
    let p_right = sum_by(right.v_hat.len(), |i| hat_edge(right.v_hat[i], b[i + 1] - b[i], p));
    Ok(SplitCheck { q_whole, q_split: q_left + q_right, p_whole, p_split: p_left + p_right })
}

struct NnCurves<'a> {
    vh: &'a [f64],
    left: Vec<f64>,
    right: Vec<f64>,
    a: f64,
    b: f64,
}

impl<'a> NnCurves<'a> {
    fn new(w: &'a WeightedInterval, e: &Exponents) -> Self {
        Self { vh: w.v_hat(), left: prefix_sums(w.u()), right: suffix_sums(w.u()), a: 1.0 / e.q(), b: 1.0 / e.p_star() }
    }

    fn eval(&self, z: usize, gamma: f64, gc: f64) -> (f64, f64) {
        let vh = self.vh;
        let mut minus = 0.0f64;
        let mut acc = 0.0;
        for i in (0..z).rev() {
            let val = pow(self.left[i], self.a) * pow(acc + gamma * vh[z], self.b);
            minus = minus.max(val);
            acc += vh[i];
        }
        let mut plus = 0.0f64;
        let mut acc = 0.0;
        for i in z..vh.len() {
            let val = pow(acc + gc * vh[z], self.b) * pow(self.right[i], self.a);
            plus = plus.max(val);
            if i + 1 < vh.len() {
                acc += vh[i + 1];
            }
        }
        (minus, plus)
    }
}

/// `B⁻(ζ, γ)` and `B⁺(ζ, γ)` for `NN`, `ζ ∈ [-M, N]`:
///
/// `B⁻ = sup_{n ∈ [-M, ζ-1]} (Σ_{-M}^n u)^(1/q) (Σ_{n+1}^{ζ-1} v̂ + γ v̂_ζ)^(1/p*)`,
/// `B⁺ = sup_{n ∈ [ζ, N]} ((1-γ) v̂_ζ + Σ_{ζ+1}^n v̂)^(1/p*) (Σ_n^N u)^(1/q)`.
pub fn nn_b_curves(w: &WeightedInterval, e: &Exponents, zeta: i64, gamma: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    let z = w.slot(zeta)?;
    Ok(NnCurves::new(w, e).eval(z, gamma, 1.0 - gamma))
}

/// Crossing `B⁻(ζ̄, γ̄) = B⁺(ζ̄, γ̄)` for `NN`: `ζ̄` is the largest cut in
/// `[-M+1, N]` with `B⁻(ζ̄, 0) <= B⁺(ζ̄, 0)`, then `γ` is bisected.
pub fn nn_find_crossing(w: &WeightedInterval, e: &Exponents) -> Result<SplitPoint> {
    need_len(w, 2)?;
    let curves = NnCurves::new(w, e);
    let mut zc = None;
    for z in (1..w.len()).rev() {
        let (m, p) = curves.eval(z, 0.0, 1.0);
        if m <= p {
            zc = Some(z);
            break;
        }
    }
    let z = zc.ok_or(HardyError::NoBracket)?;
    Ok(bisect_gamma(w.index(z), |g, gc| curves.eval(z, g, gc)))
}

struct CCurves<'a> {
    u: &'a [f64],
    vh: &'a [f64],
    x: usize,
    y: usize,
    u_left: f64,
    u_right: f64,
    r: f64,
}

impl<'a> CCurves<'a> {
    fn new(w: &'a WeightedInterval, e: &Exponents, x: usize, y: usize) -> Self {
        let u = w.u();
        Self {
            u,
            vh: w.v_hat(),
            x,
            y,
            u_left: crate::sum::sum(&u[..=x]),
            u_right: crate::sum::sum(&u[y..]),
            r: e.q() - 1.0,
        }
    }

    /// `(C⁻(ζ, γ), C⁺(ζ, γ))` for `ζ ∈ [x+1, y]`.
    fn eval(&self, z: usize, gamma: f64, gc: f64) -> (f64, f64) {
        let (u, vh, r) = (self.u, self.vh, self.r);
        // C⁻: inner sums Σ_{(n∨x)+1}^{ζ-1} v̂ + γ v̂_ζ for n ≤ ζ-1
        let mut minus = 0.0;
        let mut acc = gamma * vh[z];
        for n in (self.x + 1..z).rev() {
            minus += u[n] * pow(acc, r);
            acc += vh[n];
        }
        minus += self.u_left * pow(acc, r);
        // C⁺: inner sums (1-γ) v̂_ζ + Σ_{ζ+1}^{y∧n} v̂ for n ≥ ζ
        let mut plus = 0.0;
        let mut acc = gc * vh[z];
        for n in z..self.y {
            plus += u[n] * pow(acc, r);
            acc += vh[n + 1];
        }
        plus += self.u_right * pow(acc, r);
        (minus, plus)
    }
}

fn check_pair(w: &WeightedInterval, x: i64, y: i64) -> Result<(usize, usize)> {
    let xs = w.slot(x)?;
    let ys = w.slot(y)?;
    if xs >= ys {
        return Err(HardyError::IndexOutOfRange { index: y, lo: x + 1, hi: w.last() });
    }
    Ok((xs, ys))
}

/// `C⁻(ζ, γ)` and `C⁺(ζ, γ)` for the pair `x < y`, `ζ ∈ [x+1, y]`.
pub fn nn_c_curves(w: &WeightedInterval, e: &Exponents, x: i64, y: i64, zeta: i64, gamma: f64) -> Result<(f64, f64)> {
    let (xs, ys) = check_pair(w, x, y)?;
    check_zeta(zeta, x + 1, y)?;
    check_gamma(gamma)?;
    Ok(CCurves::new(w, e, xs, ys).eval((zeta - w.first()) as usize, gamma, 1.0 - gamma))
}

/// Crossing `C⁻(ζ̄, γ̄) = C⁺(ζ̄, γ̄)` for the pair `x < y`: `ζ̄` is the largest
/// cut in `[x+1, y]` with `C⁻(ζ̄, 0) <= C⁺(ζ̄, 0)`, then `γ` is bisected.
/// The returned `b_minus`, `b_plus` hold the `C±` values.
pub fn nn_find_crossing_c(w: &WeightedInterval, e: &Exponents, x: i64, y: i64) -> Result<SplitPoint> {
    let (xs, ys) = check_pair(w, x, y)?;
    let curves = CCurves::new(w, e, xs, ys);
    let mut zc = None;
    for z in (xs + 1..=ys).rev() {
        let (m, p) = curves.eval(z, 0.0, 1.0);
        if m <= p {
            zc = Some(z);
            break;
        }
    }
    let z = zc.ok_or(HardyError::NoBracket)?;
    Ok(bisect_gamma(w.index(z), |g, gc| curves.eval(z, g, gc)))
}

/// Lower-bound witness for `NN` at the pair `x < y`.
///
/// Built from the `C±` crossing `(ζ̄, γ̄)`: the sequence is
/// `-(Σ_{(n∨x)+1}^{ζ̄-1} v̂ + γ̄ v̂_ζ̄)` left of the cut and
/// `(1-γ̄) v̂_ζ̄ + Σ_{ζ̄+1}^{y∧n} v̂` from the cut on. Its mean-like constant is 0
/// and its energy is `Σ_{x+1}^y v̂`.
pub fn nn_witness(w: &WeightedInterval, e: &Exponents, x: i64, y: i64) -> Result<Sequence> {
    let (xs, ys) = check_pair(w, x, y)?;
    let sp = nn_find_crossing_c(w, e, x, y)?;
    let z = (sp.zeta - w.first()) as usize;
    let g = sp.gamma;
    let vh = w.v_hat();
    let l = w.len();
    let mut values = alloc::vec![0.0; l];
    let mut acc = g * vh[z];
    for n in (0..z).rev() {
        values[n] = -acc;
        if n > xs {
            acc += vh[n];
        }
    }
    let mut acc = sp.one_minus_gamma * vh[z];
    for (n, slot) in values.iter_mut().enumerate().skip(z) {
        if n > z && n <= ys {
            acc += vh[n];
        }
        *slot = acc;
    }
    Ok(Sequence::new(w.first(), values, LeftBoundary::NeumannCopy, RightBoundary::Free))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{b_dd_lower, b_dd_upper, Argmax};
    use alloc::vec;

    fn unit(len: usize) -> (WeightedInterval, Exponents) {
        let e = Exponents::new(2.0, 2.0).unwrap();
        (WeightedInterval::new(0, vec![1.0; len], vec![1.0; len], &e).unwrap(), e)
    }

    fn sample() -> (WeightedInterval, Exponents) {
        let e = Exponents::new(1.5, 3.0).unwrap();
        let u = vec![0.7, 1.3, 0.2, 2.1, 0.9, 1.6];
        let v = vec![1.1, 0.4, 2.3, 0.8, 1.7, 0.6];
        (WeightedInterval::new(-2, u, v, &e).unwrap(), e)
    }

    #[test]
    fn dd_weights_extremes_and_mass() {
        let (w, _) = sample();
        let (l, r) = dd_split_weights(&w, 0, 0.0).unwrap();
        assert_eq!(l.u_at(0), w.u_at(0).unwrap());
        assert_eq!(r.u_at(1), 0.0);
        let (l, r) = dd_split_weights(&w, 0, 1.0).unwrap();
        assert_eq!(l.u_at(0), 0.0);
        assert_eq!(r.u_at(1), w.u_at(0).unwrap());
        let (l, r) = dd_split_weights(&w, 1, 0.37).unwrap();
        let total: f64 = w.u().iter().sum();
        let split: f64 = l.u.iter().sum::<f64>() + r.u.iter().sum::<f64>();
        assert!((total - split).abs() < 1e-14);
        assert!(dd_split_weights(&w, 3, 0.5).is_err());
        assert!(dd_split_weights(&w, 0, 1.5).is_err());
    }

    #[test]
    fn dd_identities() {
        let (w, e) = sample();
        let x = Sequence::new(-2, vec![0.4, -1.2, 2.0, 0.3, -0.8, 0.0], LeftBoundary::DirichletZero, RightBoundary::Free);
        for zeta in -2..=2 {
            let c = dd_split_identities(&w, &e, &x, zeta, 0.37).unwrap();
            assert!(c.max_rel_err() < 1e-12, "{zeta}: {c:?}");
        }
        let zero = Sequence::new(-2, vec![0.0; 6], LeftBoundary::DirichletZero, RightBoundary::Free);
        let c = dd_split_identities(&w, &e, &zero, 0, 0.5).unwrap();
        assert_eq!((c.q_whole, c.q_split, c.p_whole, c.p_split), (0.0, 0.0, 0.0, 0.0));
        let bad = Sequence::new(-2, vec![1.0; 6], LeftBoundary::DirichletZero, RightBoundary::Free);
        assert!(matches!(dd_split_sequences(&bad, 0), Err(HardyError::BoundaryMismatch(_))));
    }

    #[test]
    fn dd_shift_identity() {
        let (w, e) = sample();
        for zeta in -2..3 {
            let a = dd_b_curves(&w, &e, zeta, 0.0).unwrap();
            let b = dd_b_curves(&w, &e, zeta + 1, 1.0).unwrap();
            assert!((a.0 - b.0).abs() <= 1e-14 * a.0 && (a.1 - b.1).abs() <= 1e-14 * a.1.max(1e-300));
        }
    }

    #[test]
    fn dd_symmetric_crossing() {
        let (w, e) = unit(4);
        let sp = dd_find_crossing(&w, &e).unwrap();
        assert_eq!(sp.zeta, 1);
        assert!((sp.gamma - 0.5).abs() < 1e-12, "{sp:?}");
        assert!(sp.relative_gap() <= 1e-10);
    }

    #[test]
    fn dd_crossing_bounded_by_upper() {
        let (w, e) = sample();
        let sp = dd_find_crossing(&w, &e).unwrap();
        assert!(sp.relative_gap() <= 1e-10);
        assert!(sp.b_minus <= b_dd_upper(&w, &e).unwrap().value * (1.0 + 1e-12));
        let (w2, e2) = unit(2);
        let sp = dd_find_crossing(&w2, &e2).unwrap();
        assert!(sp.relative_gap() <= 1e-10 && sp.zeta == 0);
    }

    #[test]
    fn dd_witness_two_points() {
        let (w, e) = unit(2);
        let x = dd_witness(&w, 0, 1).unwrap();
        assert_eq!(x.values()[1], 0.0);
        assert_eq!(x.get(-1).unwrap(), 0.0);
        let num = crate::operators::lq_norm(&x, &w, &e, 0.0).unwrap();
        let den = crate::operators::backward_energy(&x, &w, &e).unwrap();
        assert!((num / den - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dd_witness_collapse_point_is_irrelevant() {
        let (w, e) = sample();
        let best = b_dd_lower(&w, &e).unwrap();
        let Argmax::Pair(x, y) = best.argmax else { panic!() };
        for zeta in x..=y {
            let s = dd_witness_at(&w, x, y, zeta).unwrap();
            let num = crate::operators::lq_norm(&s, &w, &e, 0.0).unwrap();
            let den = crate::operators::backward_energy(&s, &w, &e).unwrap();
            assert!(num / den >= best.value * (1.0 - 1e-12));
        }
    }

    #[test]
    fn nn_weights_hat_space() {
        let (w, _) = sample();
        let (l, r) = nn_split_weights(&w, 0, 0.0).unwrap();
        assert_eq!(l.v_hat_at(0), 0.0);
        assert_eq!(r.v_hat_at(0), w.v_hat_at(0).unwrap());
        assert_eq!(l.u_at(-1), w.u_at(-2).unwrap());
        let (l, r) = nn_split_weights(&w, 1, 0.3).unwrap();
        assert!((l.v_hat_at(1) + r.v_hat_at(1) - w.v_hat_at(1).unwrap()).abs() < 1e-15);
        assert!(nn_split_weights(&w, -2, 0.5).is_err());
        assert_eq!(l.v(1.5)[0], w.v()[1]);
    }

    #[test]
    fn nn_identities() {
        let (w, e) = sample();
        let x = Sequence::new(-2, vec![0.4, -1.2, 2.0, 0.3, -0.8, 1.1], LeftBoundary::NeumannCopy, RightBoundary::Free);
        for zeta in -1..=3 {
            for g in [0.0, 0.37, 1.0] {
                let c = nn_split_identities(&w, &e, &x, zeta, g).unwrap();
                assert!(c.max_rel_err() < 1e-12, "{zeta} {g}: {c:?}");
            }
        }
        let flat = Sequence::free(-2, vec![3.0; 6]);
        let c = nn_split_identities(&w, &e, &flat, 1, 0.4).unwrap();
        assert_eq!((c.p_whole, c.p_split), (0.0, 0.0));
    }

    #[test]
    fn nn_curves_glue_and_cross() {
        let (w, e) = sample();
        for zeta in -2..3 {
            let a = nn_b_curves(&w, &e, zeta, 1.0).unwrap();
            let b = nn_b_curves(&w, &e, zeta + 1, 0.0).unwrap();
            assert!((a.0 - b.0).abs() <= 1e-14 * a.0.max(1e-300) && (a.1 - b.1).abs() <= 1e-14 * a.1.max(1e-300));
        }
        let (w, e) = unit(4);
        let sp = nn_find_crossing(&w, &e).unwrap();
        assert!(sp.relative_gap() <= 1e-10);
    }

    #[test]
    fn c_crossing_symmetric() {
        let (w, e) = unit(4);
        let sp = nn_find_crossing_c(&w, &e, 0, 3).unwrap();
        assert_eq!(sp.zeta, 2);
        assert!((sp.gamma - 0.5).abs() < 1e-12, "{sp:?}");
        let (w, e) = sample();
        for zeta in 0..2 {
            let a = nn_c_curves(&w, &e, -1, 2, zeta, 1.0).unwrap();
            let b = nn_c_curves(&w, &e, -1, 2, zeta + 1, 0.0).unwrap();
            assert!((a.0 - b.0).abs() <= 1e-14 * a.0 && (a.1 - b.1).abs() <= 1e-14 * a.1.max(1e-300));
        }
    }

    #[test]
    fn nn_witness_two_points() {
        let (w, e) = unit(2);
        let x = nn_witness(&w, &e, 0, 1).unwrap();
        assert_eq!(x.values(), &[-0.5, 0.5]);
        let m = crate::meanzero::solve_m(&x, &w, &e).unwrap().m;
        assert_eq!(m, 0.0);
        let num = crate::operators::lq_norm(&x, &w, &e, m).unwrap();
        let den = crate::operators::backward_energy(&x, &w, &e).unwrap();
        assert!((num / den - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn nn_witness_energy_and_mean() {
        let (w, e) = sample();
        let x = nn_witness(&w, &e, -1, 2).unwrap();
        let f0 = crate::meanzero::f_eval(&x, &w, &e, 0.0).unwrap();
        assert!(f0.abs() < 1e-12);
        let energy = crate::operators::backward_energy(&x, &w, &e).unwrap().powf(e.p());
        let want: f64 = w.v_hat()[2..=4].iter().sum();
        assert!((energy - want).abs() < 1e-13 * want);
    }
}
