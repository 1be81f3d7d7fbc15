//! Certified lower bounds on the optimal constant `A` by maximising the
//! defining ratio, plus exact references at `p = q = 2`.
//!
//! The maximiser is a nonlinear inverse power iteration: from the current
//! sequence `f` it forms `h = u sgn(f)|f|^(q-1)` (centred at `m(f)` for `NN`),
//! solves the `p`-Laplace problem `argmin_g (1/p) E(g) - ⟨h, g⟩` exactly (the
//! operator is a first-order difference, so the solve is a pair of prefix
//! sums) and normalises. The ratio never decreases along the iteration and
//! every iterate is feasible, so the best ratio seen is a valid lower bound.

use alloc::vec::Vec;
use libm::{fabs, pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, Argmax, Case};
use crate::error::{HardyError, Result};
use crate::meanzero::solve_slices;
use crate::model::{Exponents, LeftBoundary, RightBoundary, Sequence, WeightedInterval};
use crate::operators::{abs_pow, signed_pow};
use crate::splitting::{dd_witness, nn_witness};
use crate::sum::{prefix_sums, suffix_sums, sum_by};

pub mod eigen;

pub use eigen::{eigen_oracle, eigen_oracle_raw, eigen_pair};

/// Boundary conventions of `case`.
pub fn boundaries(case: Case) -> (LeftBoundary, RightBoundary) {
    match case {
        Case::ND => (LeftBoundary::Free, RightBoundary::DirichletZero),
        Case::DN => (LeftBoundary::DirichletZero, RightBoundary::Free),
        Case::DD => (LeftBoundary::DirichletZero, RightBoundary::DirichletZero),
        Case::NN => (LeftBoundary::NeumannCopy, RightBoundary::Free),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateConfig {
    /// Random seeds in addition to the two structured ones.
    pub restarts: usize,
    /// Iteration cap per seed.
    pub max_iters: usize,
    /// Stop a seed once the relative gain of one step falls below this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self { restarts: 4, max_iters: 20_000, tol: 1e-15, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    /// Ratio at `maximizer`, recomputed from it; a lower bound on `A`.
    pub a_hat: f64,
    pub maximizer: Sequence,
    /// Number of seeds that were run.
    pub restarts: usize,
    /// True when the winning seed stopped on the tolerance rather than the cap.
    pub converged: bool,
    pub iterations: usize,
    /// `λ^(-1/2)` from the eigen oracle, present when `p = q = 2`.
    pub oracle_value: Option<f64>,
}

/// Full-length working copy of `x` for `case`: `DD` accepts the `L - 1` free
/// slots or all `L` values with `x_N = 0`.
fn full_values(case: Case, x: &Sequence, w: &WeightedInterval) -> Result<Vec<f64>> {
    if x.first() != w.first() {
        return Err(HardyError::IndexOutOfRange { index: x.first(), lo: w.first(), hi: w.first() });
    }
    let l = w.len();
    match (case, x.len()) {
        (Case::DD, n) if n + 1 == l => {
            let mut v = x.values().to_vec();
            v.push(0.0);
            Ok(v)
        }
        (Case::DD, n) if n == l => {
            if x.values()[l - 1] != 0.0 {
                return Err(HardyError::BoundaryMismatch("DD needs x_N = 0"));
            }
            Ok(x.values().to_vec())
        }
        (_, n) if n == l => Ok(x.values().to_vec()),
        (_, n) => Err(HardyError::LengthMismatch { expected: l, found: n }),
    }
}

/// Numerator shift and the two `p`/`q` power sums of the ratio.
fn parts(case: Case, g: &[f64], w: &WeightedInterval, e: &Exponents) -> Result<(f64, f64, f64)> {
    let (u, v) = (w.u(), w.v());
    let (p, q) = (e.p(), e.q());
    let l = g.len();
    let shift = if case == Case::NN { solve_slices(g, u, q)?.m } else { 0.0 };
    let num = sum_by(l, |i| u[i] * abs_pow(g[i] - shift, q));
    let den = match case {
        Case::ND => sum_by(l, |i| v[i] * abs_pow(g[i] - if i + 1 < l { g[i + 1] } else { 0.0 }, p)),
        Case::DN | Case::DD => sum_by(l, |i| v[i] * abs_pow(g[i] - if i > 0 { g[i - 1] } else { 0.0 }, p)),
        Case::NN => sum_by(l - 1, |i| v[i + 1] * abs_pow(g[i + 1] - g[i], p)),
    };
    Ok((shift, num, den))
}

fn ratio_values(case: Case, g: &[f64], w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    let (_, num, den) = parts(case, g, w, e)?;
    if !(den > 0.0) {
        return Err(HardyError::ZeroEnergy);
    }
    Ok(pow(num, 1.0 / e.q()) / pow(den, 1.0 / e.p()))
}

/// The defining ratio of `A` for `case`, with the case's boundary conditions
/// imposed on `x` (its declared ones are ignored).
pub fn ratio(case: Case, x: &Sequence, w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    if w.len() < case.min_len() {
        return Err(HardyError::TooShort { needed: case.min_len(), have: w.len() });
    }
    let g = full_values(case, x, w)?;
    ratio_values(case, &g, w, e)
}

/// One inverse-power step: returns the unnormalised update.
fn step(case: Case, f: &[f64], w: &WeightedInterval, e: &Exponents) -> Result<Vec<f64>> {
    let (u, vh) = (w.u(), w.v_hat());
    let l = f.len();
    let (q, ps) = (e.q(), e.p_star());
    let shift = if case == Case::NN { solve_slices(f, u, q)?.m } else { 0.0 };
    let mut h: Vec<f64> = (0..l).map(|i| u[i] * signed_pow(f[i] - shift, q - 1.0)).collect();
    let flux = |phi: &[f64], c: f64| -> Vec<f64> { (0..l).map(|i| vh[i] * signed_pow(phi[i] - c, ps - 1.0)).collect() };
    let g = match case {
        Case::ND => suffix_sums(&flux(&prefix_sums(&h), 0.0)),
        Case::DN => prefix_sums(&flux(&suffix_sums(&h), 0.0)),
        Case::DD => {
            h[l - 1] = 0.0;
            let phi = suffix_sums(&h);
            // multiplier enforcing Σ d = x_N = 0
            let c = solve_slices(&phi, vh, ps)?.m;
            let mut g = prefix_sums(&flux(&phi, c));
            g[l - 1] = 0.0;
            g
        }
        Case::NN => {
            let mut d = flux(&suffix_sums(&h), 0.0);
            d[0] = 0.0;
            prefix_sums(&d)
        }
    };
    Ok(g)
}

fn normalise(g: &mut [f64]) -> bool {
    let m = g.iter().fold(0.0f64, |a, &t| a.max(fabs(t)));
    if !(m > 0.0 && m.is_finite()) {
        return false;
    }
    g.iter_mut().for_each(|t| *t /= m);
    true
}

/// Outcome of one seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedRun {
    pub ratio: f64,
    pub values: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Runs the iteration from `seed` and returns the best iterate.
pub fn estimate_from_seed(case: Case, seed: &Sequence, w: &WeightedInterval, e: &Exponents, cfg: &EstimateConfig) -> Result<SeedRun> {
    let mut f = full_values(case, seed, w)?;
    if !normalise(&mut f) {
        return Err(HardyError::ZeroEnergy);
    }
    let mut best = ratio_values(case, &f, w, e)?;
    let mut best_f = f.clone();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        iterations += 1;
        let mut g = step(case, &f, w, e)?;
        if !normalise(&mut g) {
            converged = true;
            break;
        }
        let r = match ratio_values(case, &g, w, e) {
            Ok(r) => r,
            Err(_) => {
                converged = true;
                break;
            }
        };
        let gain = r - best;
        if r > best {
            best = r;
            best_f.clone_from(&g);
        }
        f = g;
        if gain <= cfg.tol * best {
            converged = true;
            break;
        }
    }
    Ok(SeedRun { ratio: best, values: best_f, converged, iterations })
}

/// The structured seeds: the witness at the `B_*` maximiser and the canonical
/// one-sided profile.
fn structured_seeds(case: Case, w: &WeightedInterval, e: &Exponents) -> Vec<Vec<f64>> {
    let l = w.len();
    let pre = prefix_sums(w.v_hat());
    let suf = suffix_sums(w.v_hat());
    let mut seeds = Vec::new();
    match case {
        Case::ND => {
            if let Argmax::Index(n0) = bounds::nd_sup(w, e).argmax {
                let s = (n0 - w.first()) as usize;
                seeds.push((0..l).map(|i| suf[i.max(s)]).collect());
            }
            seeds.push(suf.clone());
        }
        Case::DN => {
            if let Argmax::Index(n0) = bounds::dn_sup(w, e).argmax {
                let s = (n0 - w.first()) as usize;
                seeds.push((0..l).map(|i| pre[i.min(s)]).collect());
            }
            seeds.push(pre.clone());
        }
        Case::DD => {
            if let Ok(Argmax::Pair(x, y)) = bounds::b_dd_lower(w, e).map(|s| s.argmax) {
                if let Ok(s) = dd_witness(w, x, y) {
                    seeds.push(s.into_values());
                }
            }
            seeds.push((0..l).map(|i| if i + 1 < l { pre[i].min(suf[i + 1]) } else { 0.0 }).collect());
        }
        Case::NN => {
            if let Ok(Argmax::Pair(x, y)) = bounds::b_nn_lower(w, e).map(|s| s.argmax) {
                if let Ok(s) = nn_witness(w, e, x, y) {
                    seeds.push(s.into_values());
                }
            }
            seeds.push((0..l).map(|i| pre[i] - pre[0]).collect());
        }
    }
    seeds
}

fn random_seed(case: Case, l: usize, cfg: &EstimateConfig, k: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k as u64);
    let mut v: Vec<f64> = (0..l).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if case == Case::DD {
        v[l - 1] = 0.0;
    }
    v
}

/// Maximises the ratio of `case` over all admissible sequences from the
/// structured seeds and `cfg.restarts` random ones. Deterministic in `cfg`.
pub fn estimate_a(case: Case, w: &WeightedInterval, e: &Exponents, cfg: &EstimateConfig) -> Result<EstimateResult> {
    if w.len() < case.min_len() {
        return Err(HardyError::TooShort { needed: case.min_len(), have: w.len() });
    }
    let l = w.len();
    let mut seeds = structured_seeds(case, w, e);
    for k in 0..cfg.restarts {
        seeds.push(random_seed(case, l, cfg, k));
    }
    let (left, right) = boundaries(case);
    let mut best: Option<SeedRun> = None;
    let mut ran = 0;
    for s in seeds {
        let seq = Sequence::new(w.first(), s, left, right);
        let Ok(run) = estimate_from_seed(case, &seq, w, e, cfg) else { continue };
        ran += 1;
        if best.as_ref().is_none_or(|b| run.ratio > b.ratio) {
            best = Some(run);
        }
    }
    let best = best.ok_or(HardyError::AllSeedsDegenerate)?;
    let maximizer = Sequence::new(w.first(), best.values, left, right);
    let a_hat = ratio(case, &maximizer, w, e)?;
    let oracle_value = if e.p() == 2.0 && e.q() == 2.0 { eigen_oracle(case, w, e).ok() } else { None };
    Ok(EstimateResult { a_hat, maximizer, restarts: ran, converged: best.converged, iterations: best.iterations, oracle_value })
}

/// Max-norm residual of the Euler–Lagrange equation
/// `-λ u_n sgn(x_n)|x_n|^(p-1) = v_{n+1} sgn(x'_{n+1})|x'_{n+1}|^(p-1) - v_n sgn(x'_n)|x'_n|^(p-1)`
/// over the free indices of `case` (forward differences for `ND`, `x` centred
/// at `m(x)` for `NN`). Needs `p = q`.
pub fn characteristic_residual(case: Case, x: &Sequence, lambda: f64, w: &WeightedInterval, e: &Exponents) -> Result<f64> {
    if !e.is_diagonal() {
        return Err(HardyError::InvalidExponents { p: e.p(), q: e.q(), reason: "the eigenvalue equation needs p = q" });
    }
    let mut g = full_values(case, x, w)?;
    let (u, v) = (w.u(), w.v());
    let p = e.p();
    let l = g.len();
    if case == Case::NN {
        let m = solve_slices(&g, u, p)?.m;
        g.iter_mut().for_each(|t| *t -= m);
    }
    let s = |t: f64| signed_pow(t, p - 1.0);
    // backward flux v_n s(x_n - x_{n-1}) with the case's boundary values
    let back = |n: usize| -> f64 {
        match case {
            Case::NN if n == 0 => 0.0,
            _ if n == l => 0.0,
            _ => v[n] * s(g[n] - if n > 0 { g[n - 1] } else { 0.0 }),
        }
    };
    let mut worst = 0.0f64;
    let free = if case == Case::DD { l - 1 } else { l };
    for n in 0..free {
        let r = match case {
            Case::ND => {
                let fwd = |k: usize| v[k] * s(g[k] - if k + 1 < l { g[k + 1] } else { 0.0 });
                lambda * u[n] * s(g[n]) - fwd(n) + if n > 0 { fwd(n - 1) } else { 0.0 }
            }
            _ => lambda * u[n] * s(g[n]) + back(n + 1) - back(n),
        };
        worst = worst.max(fabs(r));
    }
    Ok(worst)
}
