//! JSON reports. Key names are fixed; optional keys are omitted when absent.

use hardy_core::bounds::Argmax;
use hardy_core::BoundsReport;
use serde::Serialize;

/// Relative slack in the sandwich check.
pub const SANDWICH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub case: String,
    pub p: f64,
    pub q: f64,
    pub b_lower: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opic_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_gap: Option<f64>,
    pub sandwich_ok: bool,
    pub argmax: ArgmaxReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_increment: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedForm>,
    pub params: Params,
    pub timings: Timings,
}

/// Attaining indices: one entry for a single supremum, two for a pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ArgmaxReport {
    pub lower: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opic: Option<Vec<i64>>,
}

fn indices(a: Argmax) -> Vec<i64> {
    match a {
        Argmax::Index(i) => vec![i],
        Argmax::Pair(i, j) => vec![i, j],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub verdict: &'static str,
    pub predicted: &'static str,
    pub agrees: bool,
    pub growth_low: f64,
    pub growth_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedForm {
    pub upper: f64,
    pub lower: f64,
    pub upper_matches: bool,
    pub lower_matches: bool,
    pub tol: f64,
}

/// Everything needed to rerun the command.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Params {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

/// Wall-clock milliseconds. The only non-deterministic part of a report.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub bounds_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate_ms: Option<f64>,
}

impl Report {
    pub fn from_bounds(b: &BoundsReport, params: Params, bounds_ms: f64) -> Self {
        let mut report = Self {
            case: b.case.as_str().to_string(),
            p: b.p,
            q: b.q,
            b_lower: b.b_lower,
            b_upper: b.b_upper,
            k_factor: b.k_factor,
            opic_b: b.opic_b,
            a_hat: None,
            oracle_value: None,
            oracle_gap: None,
            sandwich_ok: false,
            argmax: ArgmaxReport {
                lower: indices(b.argmax_lower),
                upper: b.argmax_upper.map(indices),
                opic: b.argmax_opic.map(indices),
            },
            tail_increment: None,
            classification: None,
            closed_form: None,
            params,
            timings: Timings { bounds_ms, estimate_ms: None },
        };
        report.sandwich_ok = report.check_sandwich();
        report
    }

    /// `bLower <= aHat <= kFactor * bUpper` up to [`SANDWICH_TOL`]. Without
    /// an estimate the outer pair is checked instead.
    pub fn check_sandwich(&self) -> bool {
        let upper = match (self.k_factor, self.b_upper) {
            (Some(k), Some(b)) => Some(k * b * (1.0 + SANDWICH_TOL)),
            _ => None,
        };
        match self.a_hat {
            Some(a) => {
                self.b_lower <= a + SANDWICH_TOL * a.abs().max(1.0) && upper.is_none_or(|u| a <= u)
            }
            None => upper.is_none_or(|u| self.b_lower <= u),
        }
    }
}
