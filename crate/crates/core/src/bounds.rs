//! The constants `B_*` and `B^*` of the basic estimate `B_* <= A <= k_{q,p} B^*`
//! for the four boundary regimes, and the single-supremum constant `B` of the
//! two-sided Dirichlet problem.
//!
//! The one-sided constants are `O(L)` prefix/suffix scans. The two-sided ones
//! scan every pair `x < y` (`O(L²)`); ties keep the lexicographically
//! smallest index or pair.

use core::fmt;
use core::str::FromStr;

use libm::pow;

use crate::error::{HardyError, Result};
use crate::model::{Exponents, WeightedInterval};
use crate::special::k_qp;
use crate::sum::{prefix_sums, suffix_sums};

/// Boundary regime. The first letter refers to the left end, the second to
/// the right end (`N` reflecting, `D` absorbing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    ND,
    DN,
    DD,
    NN,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::ND, Case::DN, Case::DD, Case::NN];

    pub fn as_str(&self) -> &'static str {
        match self {
            Case::ND => "ND",
            Case::DN => "DN",
            Case::DD => "DD",
            Case::NN => "NN",
        }
    }

    /// Smallest interval length on which the regime has a nontrivial ratio.
    pub fn min_len(&self) -> usize {
        match self {
            Case::ND | Case::DN => 1,
            Case::DD | Case::NN => 2,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Case {
    type Err = HardyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nd" | "ND" => Ok(Case::ND),
            "dn" | "DN" => Ok(Case::DN),
            "dd" | "DD" => Ok(Case::DD),
            "nn" | "NN" => Ok(Case::NN),
            _ => Err(HardyError::InvalidParameter { name: "case", value: f64::NAN, reason: "expected nd, dn, dd or nn" }),
        }
    }
}

/// Where a supremum is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Argmax {
    Index(i64),
    Pair(i64, i64),
}

/// A supremum value with its attaining index or pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Supremum {
    pub value: f64,
    pub argmax: Argmax,
}

/// All constants of the basic estimate for one regime.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub case: Case,
    pub p: f64,
    pub q: f64,
    /// `B_*`.
    pub b_lower: f64,
    /// `B^*`; `None` when `p > q`, where only the lower estimate holds.
    pub b_upper: Option<f64>,
    /// `k_{q,p}`; `None` when `p > q`.
    pub k_factor: Option<f64>,
    /// Single-supremum constant `B`, Dirichlet–Dirichlet only.
    pub opic_b: Option<f64>,
    pub argmax_lower: Argmax,
    pub argmax_upper: Option<Argmax>,
    pub argmax_opic: Option<Argmax>,
}

impl BoundsReport {
    /// `k_{q,p} B^*`, the upper end of the basic estimate.
    pub fn upper_estimate(&self) -> Option<f64> {
        Some(self.k_factor? * self.b_upper?)
    }
}

fn need_len(w: &WeightedInterval, n: usize) -> Result<()> {
    if w.len() < n {
        Err(HardyError::TooShort { needed: n, have: w.len() })
    } else {
        Ok(())
    }
}

/// `sup_n (Σ_{-M}^{n} u)^(1/q) (Σ_{n}^{N} v̂)^(1/p*)`.
pub fn nd_sup(w: &WeightedInterval, e: &Exponents) -> Supremum {
    let left = prefix_sums(w.u());
    let right = suffix_sums(w.v_hat());
    one_sided(w, &left, &right, 1.0 / e.q(), 1.0 / e.p_star())
}

/// `sup_n (Σ_{-M}^{n} v̂)^(1/p*) (Σ_{n}^{N} u)^(1/q)`.
pub fn dn_sup(w: &WeightedInterval, e: &Exponents) -> Supremum {
    let left = prefix_sums(w.v_hat());
    let right = suffix_sums(w.u());
    one_sided(w, &left, &right, 1.0 / e.p_star(), 1.0 / e.q())
}

fn one_sided(w: &WeightedInterval, left: &[f64], right: &[f64], a: f64, b: f64) -> Supremum {
    let mut best = f64::NEG_INFINITY;
    let mut arg = 0;
    for i in 0..left.len() {
        let val = pow(left[i], a) * pow(right[i], b);
        if val > best {
            best = val;
            arg = i;
        }
    }
    Supremum { value: best, argmax: Argmax::Index(w.index(arg)) }
}

fn report_one_sided(case: Case, e: &Exponents, s: Supremum) -> BoundsReport {
    let ordered = e.is_ordered();
    BoundsReport {
        case,
        p: e.p(),
        q: e.q(),
        b_lower: s.value,
        b_upper: ordered.then_some(s.value),
        k_factor: k_qp(e).ok().map(|k| k.value),
        opic_b: None,
        argmax_lower: s.argmax,
        argmax_upper: ordered.then_some(s.argmax),
        argmax_opic: None,
    }
}

/// Constants for the `ND` regime (`B_* = B^*`).
pub fn b_nd(w: &WeightedInterval, e: &Exponents) -> Result<BoundsReport> {
    need_len(w, 1)?;
    Ok(report_one_sided(Case::ND, e, nd_sup(w, e)))
}

/// Constants for the `DN` regime (`B_* = B^*`).
pub fn b_dn(w: &WeightedInterval, e: &Exponents) -> Result<BoundsReport> {
    need_len(w, 1)?;
    Ok(report_one_sided(Case::DN, e, dn_sup(w, e)))
}

/// Shared pair scan. For each `x` the middle sum over `[x + lo_shift, y + hi_shift]`
/// is accumulated while `y` advances, and the per-pair score
/// `mid^mid_exp / (a_x + b_y)` is maximised; `root` is applied once at the end.
struct PairScan<'a> {
    mid: &'a [f64],
    /// middle sum at `(x, y)` is `Σ mid[x + mid_from .. y + mid_to]` (slots)
    mid_from: usize,
    mid_to_incl: bool,
    mid_exp: f64,
    a: &'a [f64],
    b: &'a [f64],
    root: f64,
}

impl PairScan<'_> {
    fn run(&self, w: &WeightedInterval) -> Supremum {
        let l = self.a.len();
        let mut best = f64::NEG_INFINITY;
        let mut arg = (0, 1);
        for x in 0..l - 1 {
            let mut mid = 0.0;
            let mut next = x + self.mid_from;
            for y in x + 1..l {
                let end = if self.mid_to_incl { y + 1 } else { y };
                while next < end {
                    mid += self.mid[next];
                    next += 1;
                }
                let score = pow(mid, self.mid_exp) / (self.a[x] + self.b[y]);
                if score > best {
                    best = score;
                    arg = (x, y);
                }
            }
        }
        Supremum { value: pow(best, self.root), argmax: Argmax::Pair(w.index(arg.0), w.index(arg.1)) }
    }
}

fn powered(values: &[f64], exponent: f64) -> alloc::vec::Vec<f64> {
    values.iter().map(|&s| pow(s, exponent)).collect()
}

/// Dirichlet exponent for the `B^*` bracket; equal to `1 - p` bit for bit on
/// the diagonal so that `B_* = B^*` holds exactly there.
fn dd_upper_exponent(e: &Exponents) -> f64 {
    if e.is_diagonal() {
        1.0 - e.p()
    } else {
        -e.q() / e.p_star()
    }
}

fn nn_upper_exponent(e: &Exponents) -> f64 {
    if e.is_diagonal() {
        1.0 - e.q_star()
    } else {
        -e.p_star() / e.q()
    }
}

/// `B_*` for `DD`:
/// `sup_{x<y} (Σ_x^{y-1} u)^(1/q) [(Σ_{-M}^x v̂)^(1-p) + (Σ_y^N v̂)^(1-p)]^(-1/p)`.
pub fn b_dd_lower(w: &WeightedInterval, e: &Exponents) -> Result<Supremum> {
    need_len(w, 2)?;
    let p = e.p();
    let a = powered(&prefix_sums(w.v_hat()), 1.0 - p);
    let b = powered(&suffix_sums(w.v_hat()), 1.0 - p);
    let mid_exp = if e.is_diagonal() { 1.0 } else { p / e.q() };
    Ok(PairScan { mid: w.u(), mid_from: 0, mid_to_incl: false, mid_exp, a: &a, b: &b, root: 1.0 / p }.run(w))
}

/// `B^*` for `DD`:
/// `sup_{x<y} (Σ_x^{y-1} u)^(1/q) [(Σ_{-M}^x v̂)^(-q/p*) + (Σ_y^N v̂)^(-q/p*)]^(-1/q)`.
pub fn b_dd_upper(w: &WeightedInterval, e: &Exponents) -> Result<Supremum> {
    need_len(w, 2)?;
    let ex = dd_upper_exponent(e);
    let a = powered(&prefix_sums(w.v_hat()), ex);
    let b = powered(&suffix_sums(w.v_hat()), ex);
    Ok(PairScan { mid: w.u(), mid_from: 0, mid_to_incl: false, mid_exp: 1.0, a: &a, b: &b, root: 1.0 / e.q() }.run(w))
}

/// `B_*` for `NN`:
/// `sup_{x<y} (Σ_{x+1}^y v̂)^(1/p*) [(Σ_{-M}^x u)^(1-q*) + (Σ_y^N u)^(1-q*)]^(-1/q*)`.
pub fn b_nn_lower(w: &WeightedInterval, e: &Exponents) -> Result<Supremum> {
    need_len(w, 2)?;
    let qs = e.q_star();
    let a = powered(&prefix_sums(w.u()), 1.0 - qs);
    let b = powered(&suffix_sums(w.u()), 1.0 - qs);
    let mid_exp = if e.is_diagonal() { 1.0 } else { qs / e.p_star() };
    Ok(PairScan { mid: w.v_hat(), mid_from: 1, mid_to_incl: true, mid_exp, a: &a, b: &b, root: 1.0 / qs }.run(w))
}

/// `B^*` for `NN`:
/// `sup_{x<y} (Σ_{x+1}^y v̂)^(1/p*) [(Σ_{-M}^x u)^(-p*/q) + (Σ_y^N u)^(-p*/q)]^(-1/p*)`.
pub fn b_nn_upper(w: &WeightedInterval, e: &Exponents) -> Result<Supremum> {
    need_len(w, 2)?;
    let ex = nn_upper_exponent(e);
    let a = powered(&prefix_sums(w.u()), ex);
    let b = powered(&suffix_sums(w.u()), ex);
    // on the diagonal p* = q*, so the root matches the lower constant's
    let root = if e.is_diagonal() { 1.0 / e.q_star() } else { 1.0 / e.p_star() };
    Ok(PairScan { mid: w.v_hat(), mid_from: 1, mid_to_incl: true, mid_exp: 1.0, a: &a, b: &b, root }.run(w))
}

/// `B = sup_{x<y} (Σ_x^{y-1} u)^(1/q) min[(Σ_{-M}^x v̂)^(1/p*), (Σ_y^N v̂)^(1/p*)]`.
pub fn b_opic(w: &WeightedInterval, e: &Exponents) -> Result<Supremum> {
    need_len(w, 2)?;
    let left = prefix_sums(w.v_hat());
    let right = suffix_sums(w.v_hat());
    let u = w.u();
    let l = w.len();
    let ex = e.p_star() / e.q();
    let mut best = f64::NEG_INFINITY;
    let mut arg = (0, 1);
    for x in 0..l - 1 {
        let mut mid = 0.0;
        for y in x + 1..l {
            mid += u[y - 1];
            let score = pow(mid, ex) * left[x].min(right[y]);
            if score > best {
                best = score;
                arg = (x, y);
            }
        }
    }
    Ok(Supremum { value: pow(best, 1.0 / e.p_star()), argmax: Argmax::Pair(w.index(arg.0), w.index(arg.1)) })
}

/// Every constant of the basic estimate for `case`. Upper constants are
/// omitted when `p > q`.
pub fn report(case: Case, w: &WeightedInterval, e: &Exponents) -> Result<BoundsReport> {
    match case {
        Case::ND => b_nd(w, e),
        Case::DN => b_dn(w, e),
        Case::DD | Case::NN => {
            let (lower, upper) = if case == Case::DD {
                (b_dd_lower(w, e)?, if e.is_ordered() { Some(b_dd_upper(w, e)?) } else { None })
            } else {
                (b_nn_lower(w, e)?, if e.is_ordered() { Some(b_nn_upper(w, e)?) } else { None })
            };
            let opic = if case == Case::DD { Some(b_opic(w, e)?) } else { None };
            Ok(BoundsReport {
                case,
                p: e.p(),
                q: e.q(),
                b_lower: lower.value,
                b_upper: upper.map(|s| s.value),
                k_factor: k_qp(e).ok().map(|k| k.value),
                opic_b: opic.map(|s| s.value),
                argmax_lower: lower.argmax,
                argmax_upper: upper.map(|s| s.argmax),
                argmax_opic: opic.map(|s| s.argmax),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn inst(offset: i64, u: Vec<f64>, v: Vec<f64>, p: f64, q: f64) -> (WeightedInterval, Exponents) {
        let e = Exponents::new(p, q).unwrap();
        (WeightedInterval::new(offset, u, v, &e).unwrap(), e)
    }

    #[test]
    fn nd_single_point() {
        let (w, e) = inst(0, vec![1.0], vec![1.0], 2.0, 2.0);
        let r = b_nd(&w, &e).unwrap();
        assert_eq!(r.b_lower, 1.0);
        assert_eq!(r.b_upper, Some(1.0));
        assert_eq!(r.argmax_lower, Argmax::Index(0));
        let r = b_dn(&w, &e).unwrap();
        assert_eq!(r.b_lower, 1.0);
    }

    #[test]
    fn nd_two_points_tie_goes_left() {
        let (w, e) = inst(0, vec![1.0, 1.0], vec![1.0, 1.0], 2.0, 2.0);
        let r = b_nd(&w, &e).unwrap();
        assert!((r.b_lower - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(r.argmax_lower, Argmax::Index(0));
    }

    #[test]
    fn dn_exhaustive() {
        let (w, e) = inst(0, vec![2.0, 1.0], vec![1.0, 2.0], 2.0, 2.0);
        // v̂ = 1/v at p = 2
        let brute = [1.0f64 * 3.0, 1.5 * 1.0].iter().map(|t| t.sqrt()).fold(0.0, f64::max);
        assert!((b_dn(&w, &e).unwrap().b_lower - brute).abs() < 1e-15);
    }

    #[test]
    fn dd_and_nn_two_points() {
        let (w, e) = inst(0, vec![1.0, 1.0], vec![1.0, 1.0], 2.0, 2.0);
        let h = 0.5f64.sqrt();
        for s in [b_dd_lower(&w, &e), b_dd_upper(&w, &e), b_nn_lower(&w, &e), b_nn_upper(&w, &e)] {
            let s = s.unwrap();
            assert!((s.value - h).abs() < 1e-15);
            assert_eq!(s.argmax, Argmax::Pair(0, 1));
        }
        let o = b_opic(&w, &e).unwrap();
        assert_eq!(o.value, 1.0);
        assert_eq!(o.argmax, Argmax::Pair(0, 1));
    }

    #[test]
    fn short_intervals_rejected() {
        let (w, e) = inst(0, vec![1.0], vec![1.0], 2.0, 2.0);
        assert!(matches!(b_dd_lower(&w, &e), Err(HardyError::TooShort { needed: 2, have: 1 })));
        assert!(b_nn_upper(&w, &e).is_err());
        assert!(b_opic(&w, &e).is_err());
    }

    #[test]
    fn diagonal_equality_is_exact() {
        let u = vec![0.3, 1.7, 2.2, 0.9, 1.1, 0.4];
        let v = vec![1.2, 0.5, 0.8, 2.5, 0.7, 1.9];
        for p in [1.3, 2.0, 3.7] {
            let (w, e) = inst(-2, u.clone(), v.clone(), p, p);
            assert_eq!(b_dd_lower(&w, &e).unwrap(), b_dd_upper(&w, &e).unwrap());
            assert_eq!(b_nn_lower(&w, &e).unwrap(), b_nn_upper(&w, &e).unwrap());
        }
    }

    #[test]
    fn strict_chain_on_fixed_instance() {
        let u = vec![0.3, 1.7, 2.2, 0.9, 1.1, 0.4];
        let v = vec![1.2, 0.5, 0.8, 2.5, 0.7, 1.9];
        let (w, e) = inst(0, u, v, 1.5, 3.0);
        let c = pow(2.0, 1.0 / 1.5 - 1.0 / 3.0);
        for (lo, hi) in [
            (b_dd_lower(&w, &e).unwrap().value, b_dd_upper(&w, &e).unwrap().value),
            (b_nn_lower(&w, &e).unwrap().value, b_nn_upper(&w, &e).unwrap().value),
        ] {
            assert!(lo <= hi && hi <= c * lo * (1.0 + 1e-12));
        }
    }

    #[test]
    fn report_drops_upper_when_unordered() {
        let (w, e) = inst(0, vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 1.0], 3.0, 2.0);
        for case in Case::ALL {
            let r = report(case, &w, &e).unwrap();
            assert!(r.b_upper.is_none() && r.k_factor.is_none());
        }
        let e = Exponents::new(2.0, 2.0).unwrap();
        let r = report(Case::DD, &w.with_exponents(&e).unwrap(), &e).unwrap();
        assert!(r.opic_b.is_some() && r.upper_estimate().is_some());
    }

    #[test]
    fn case_parsing() {
        for c in Case::ALL {
            assert_eq!(c.as_str().parse::<Case>().unwrap(), c);
            assert_eq!(c.as_str().to_lowercase().parse::<Case>().unwrap(), c);
        }
        assert!("xy".parse::<Case>().is_err());
    }
}
