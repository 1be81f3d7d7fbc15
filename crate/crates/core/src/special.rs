//! Log-gamma, the Beta function, the factor `k_{q,p}` and two scalar
//! minimisation facts used by the splitting constructions.

use core::f64::consts::PI;
use libm::{exp, log, log1p, pow, sin};

use crate::error::{HardyError, Result};
use crate::model::Exponents;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Stirling remainder `lnΓ(x) - [(x - 1/2) ln x - x + ln √(2π)]` for `x >= 10`.
fn stirling_del(x: f64) -> f64 {
    let z = 1.0 / (x * x);
    (1.0 / 12.0
        + z * (-1.0 / 360.0 + z * (1.0 / 1260.0 + z * (-1.0 / 1680.0 + z * (1.0 / 1188.0 + z * (-691.0 / 360360.0))))))
        / x
}

/// `ln Γ(x)` for `x > 0`; NaN otherwise.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        return log(PI / sin(PI * x)) - ln_gamma(1.0 - x);
    }
    if x >= 10.0 {
        return (x - 0.5) * log(x) - x + HALF_LN_2PI + stirling_del(x);
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    HALF_LN_2PI + (z + 0.5) * log(t) - t + log(a)
}

/// `ln B(a, b)` for `a, b > 0`.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(HardyError::InvalidParameter { name: "a", value: a, reason: "Beta needs a positive argument" });
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(HardyError::InvalidParameter { name: "b", value: b, reason: "Beta needs a positive argument" });
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let s = lo + hi;
    if lo >= 10.0 {
        // both large: combine the Stirling forms before exponentiating
        let v = HALF_LN_2PI + (lo - 0.5) * log(lo / s) + (hi - 0.5) * log(hi / s) - 0.5 * log(s)
            + stirling_del(lo)
            + stirling_del(hi)
            - stirling_del(s);
        return Ok(v);
    }
    if hi >= 10.0 {
        // lnΓ(hi) - lnΓ(lo + hi) without cancellation
        let d = -(hi - 0.5) * log1p(lo / hi) - lo * log(s) + lo + stirling_del(hi) - stirling_del(s);
        return Ok(ln_gamma(lo) + d);
    }
    Ok(ln_gamma(lo) + ln_gamma(hi) - ln_gamma(s))
}

/// Euler's Beta function `B(a, b) = ∫_0^1 t^(a-1) (1-t)^(b-1) dt`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok(exp(ln_beta(a, b)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `p = q` (or numerically indistinguishable).
    Diagonal,
    /// `q > p`.
    Strict,
}

/// The comparison factor `k_{q,p}` in `B_* <= A <= k_{q,p} B^*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorKqp {
    pub value: f64,
    pub p: f64,
    pub q: f64,
    pub regime: Regime,
}

/// Below this gap `q - p` the Beta form is replaced by its diagonal limit.
pub const DIAGONAL_GAP: f64 = 1e-8;

/// `k_{q,p}`. Needs `1 < p <= q`.
pub fn k_qp(e: &Exponents) -> Result<FactorKqp> {
    e.require_ordered()?;
    let (p, q) = (e.p(), e.q());
    let gap = q - p;
    if gap < DIAGONAL_GAP {
        let ps = e.p_star();
        let value = pow(p, 1.0 / p) * pow(ps, 1.0 / ps);
        return Ok(FactorKqp { value, p, q, regime: Regime::Diagonal });
    }
    let lb = ln_beta(p / gap, p * (q - 1.0) / gap)?;
    let ln_k = (1.0 / p - 1.0 / q) * (log(gap) - log(p) - lb);
    Ok(FactorKqp { value: exp(ln_k), p, q, regime: Regime::Strict })
}

/// The older factor `(1 + q/p*)^(1/q) (1 + p*/q)^(1/p*)`.
pub fn k_tilde(e: &Exponents) -> f64 {
    let (q, ps) = (e.q(), e.p_star());
    pow(1.0 + q / ps, 1.0 / q) * pow(1.0 + ps / q, 1.0 / ps)
}

/// `2 (2^q - 1)^(1/q)`, the upper factor of the two-sided Dirichlet estimate
/// in terms of the single-supremum constant.
pub fn opic_factor(q: f64) -> f64 {
    2.0 * pow(pow(2.0, q) - 1.0, 1.0 / q)
}

/// Minimiser of `F(γ) = γ^(1-p) a^p + (1-γ)^(1-p) b^p` on `[0, 1]`.
///
/// Returns `(γ*, F(γ*)) = (a / (a + b), (a + b)^p)`. A zero `a` or `b` puts
/// the minimiser at the matching endpoint, read as the limit.
pub fn min_split_gamma(a: f64, b: f64, p: f64) -> Result<(f64, f64)> {
    if !(p > 1.0) {
        return Err(HardyError::InvalidParameter { name: "p", value: p, reason: "need p > 1" });
    }
    if !(a >= 0.0 && a.is_finite()) {
        return Err(HardyError::InvalidParameter { name: "a", value: a, reason: "need a >= 0" });
    }
    if !(b >= 0.0 && b.is_finite()) {
        return Err(HardyError::InvalidParameter { name: "b", value: b, reason: "need b >= 0" });
    }
    let s = a + b;
    if s == 0.0 {
        return Err(HardyError::InvalidParameter { name: "a + b", value: s, reason: "need a + b > 0" });
    }
    Ok((a / s, pow(s, p)))
}

/// Minimiser of `F(x) = α x^q + β (1-x)^q` on `[0, 1]`.
///
/// Returns `(x0, F(x0))` with `x0 = β^(q*-1) / (α^(q*-1) + β^(q*-1))` and
/// `F(x0) = (α^(1-q*) + β^(1-q*))^(1-q)`.
pub fn min_split_power(alpha: f64, beta: f64, q: f64) -> Result<(f64, f64)> {
    if !(q > 1.0) {
        return Err(HardyError::InvalidParameter { name: "q", value: q, reason: "need q > 1" });
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(HardyError::InvalidParameter { name: "alpha", value: alpha, reason: "need alpha > 0" });
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(HardyError::InvalidParameter { name: "beta", value: beta, reason: "need beta > 0" });
    }
    let qs = q / (q - 1.0);
    let (ea, eb) = (pow(alpha, qs - 1.0), pow(beta, qs - 1.0));
    let x0 = eb / (ea + eb);
    let min = pow(pow(alpha, 1.0 - qs) + pow(beta, 1.0 - qs), 1.0 - q);
    Ok((x0, min))
}
