//! Windowed local correlation and the global relevance ratio over aligned
//! pairs, plus the end-to-end pipeline and exogenous-variable ranking.
//!
//! Local relevance slides an odd-width window over the de-warped pair and
//! records the Pearson coefficient per center; windows without variance on
//! either side carry no directional information and are marked undefined
//! rather than forced to a number. Global relevance is the ratio of the RMS
//! (or mean) of the defined local coefficients to the full-series
//! correlation; the denominator is clamped in magnitude near zero and the
//! clamp is flagged, since the ratio is unbounded as the full correlation
//! vanishes.

use serde::{Deserialize, Serialize};

use crate::align::{align, apply_warp, AlignedPair, TrimmedTail, WarpPath};
use crate::distance::DistanceParams;
use crate::error::{invalid, FarmError, Result};
use crate::series::TimeSeries;

/// How the defined local coefficients are aggregated in the numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalForm {
    /// Root-mean-square of the defined local coefficients.
    RmsRatio,
    /// Plain mean of the defined local coefficients.
    MeanRatio,
}

impl GlobalForm {
    pub fn as_str(self) -> &'static str {
        match self {
            GlobalForm::RmsRatio => "rms_ratio",
            GlobalForm::MeanRatio => "mean_ratio",
        }
    }
}

impl std::str::FromStr for GlobalForm {
    type Err = FarmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rms" | "rms_ratio" => Ok(GlobalForm::RmsRatio),
            "mean" | "mean_ratio" => Ok(GlobalForm::MeanRatio),
            other => Err(invalid(format!(
                "unknown global form {other:?} (expected rms or mean)"
            ))),
        }
    }
}

pub const WINDOW_DEFAULT: usize = 5;
pub const DENOM_EPSILON_DEFAULT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelevanceParams {
    /// Window width in samples; odd and at least 3.
    pub window: usize,
    pub global_form: GlobalForm,
    /// Magnitude floor for the full-correlation denominator.
    pub denom_epsilon: f64,
}

impl RelevanceParams {
    pub fn new(window: usize, global_form: GlobalForm, denom_epsilon: f64) -> Result<Self> {
        if window < 3 || window.is_multiple_of(2) {
            return Err(invalid(format!(
                "window must be odd and >= 3, got {window}"
            )));
        }
        if !denom_epsilon.is_finite() || denom_epsilon <= 0.0 {
            return Err(invalid(format!(
                "denom_epsilon must be a positive finite number, got {denom_epsilon}"
            )));
        }
        Ok(Self {
            window,
            global_form,
            denom_epsilon,
        })
    }
}

impl Default for RelevanceParams {
    fn default() -> Self {
        Self {
            window: WINDOW_DEFAULT,
            global_form: GlobalForm::RmsRatio,
            denom_epsilon: DENOM_EPSILON_DEFAULT,
        }
    }
}

/// One local window result: the 0-based center index and the Pearson
/// coefficient, or `None` for a zero-variance window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalCoefficient {
    pub center: usize,
    pub value: Option<f64>,
}

/// Pearson product-moment correlation; `None` when either side is constant.
/// The result is clamped into [-1, 1] against floating-point spill.
pub(crate) fn pearson(u: &[f64], v: &[f64]) -> Option<f64> {
    debug_assert_eq!(u.len(), v.len());
    let first_u = u[0];
    let first_v = v[0];
    if u.iter().all(|&x| x == first_u) || v.iter().all(|&x| x == first_v) {
        return None;
    }
    let n = u.len() as f64;
    let mean_u = u.iter().sum::<f64>() / n;
    let mean_v = v.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_u = 0.0;
    let mut var_v = 0.0;
    for (&a, &b) in u.iter().zip(v) {
        let da = a - mean_u;
        let db = b - mean_v;
        cov += da * db;
        var_u += da * da;
        var_v += db * db;
    }
    Some((cov / (var_u * var_v).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson correlation of two equal-length slices, `None` when either side
/// is constant. Exposed for raw-versus-dewarped comparisons.
pub fn raw_correlation(u: &[f64], v: &[f64]) -> Option<f64> {
    if u.len() != v.len() || u.is_empty() {
        return None;
    }
    pearson(u, v)
}

/// Sliding-window Pearson coefficients over an aligned pair.
///
/// Centers run from (window-1)/2 to len-1-(window-1)/2 (0-based); there are
/// no partial windows at the edges.
pub fn local_relevance(
    pair: &AlignedPair,
    params: &RelevanceParams,
) -> Result<Vec<LocalCoefficient>> {
    let len = pair.len();
    let w = params.window;
    if len < w {
        return Err(invalid(format!(
            "aligned length {len} is shorter than the window {w}"
        )));
    }
    let half = (w - 1) / 2;
    let rv = pair.ref_aligned.values();
    let qv = pair.qry_aligned.values();
    let mut out = Vec::with_capacity(len - w + 1);
    for center in half..len - half {
        let lo = center - half;
        let hi = center + half + 1;
        out.push(LocalCoefficient {
            center,
            value: pearson(&rv[lo..hi], &qv[lo..hi]),
        });
    }
    Ok(out)
}

/// Aggregated global relevance value plus denominator metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalRelevance {
    pub value: f64,
    pub full_correlation: f64,
    pub denominator_clamped: bool,
}

/// Aggregate local coefficients against a full-series correlation.
///
/// The denominator is `sign(cor) * max(|cor|, denom_epsilon)`; an exact
/// zero correlation counts as positive. Undefined windows are excluded from
/// the numerator; with none defined this is an undefined-result error.
pub fn global_from_parts(
    local: &[LocalCoefficient],
    full_correlation: f64,
    params: &RelevanceParams,
) -> Result<GlobalRelevance> {
    let defined: Vec<f64> = local.iter().filter_map(|c| c.value).collect();
    if defined.is_empty() {
        return Err(FarmError::UndefinedResult(
            "no defined local coefficients to aggregate".into(),
        ));
    }
    let n = defined.len() as f64;
    let numerator = match params.global_form {
        GlobalForm::RmsRatio => (defined.iter().map(|v| v * v).sum::<f64>() / n).sqrt(),
        GlobalForm::MeanRatio => defined.iter().sum::<f64>() / n,
    };
    let denominator_clamped = full_correlation.abs() < params.denom_epsilon;
    let sign = if full_correlation < 0.0 { -1.0 } else { 1.0 };
    let denom = sign * full_correlation.abs().max(params.denom_epsilon);
    Ok(GlobalRelevance {
        value: numerator / denom,
        full_correlation,
        denominator_clamped,
    })
}

/// Global relevance of an aligned pair from its local coefficient series.
pub fn global_relevance(
    local: &[LocalCoefficient],
    pair: &AlignedPair,
    params: &RelevanceParams,
) -> Result<GlobalRelevance> {
    let full = pearson(pair.ref_aligned.values(), pair.qry_aligned.values()).ok_or_else(|| {
        FarmError::UndefinedResult("full-series correlation is undefined (constant series)".into())
    })?;
    global_from_parts(local, full, params)
}

/// Full pipeline result: local series, global value, and the alignment
/// metadata it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelevanceReport {
    pub local: Vec<LocalCoefficient>,
    pub global_value: f64,
    pub full_correlation: f64,
    pub degenerate_windows: usize,
    pub denominator_clamped: bool,
    pub window: usize,
    pub global_form: GlobalForm,
    pub path: WarpPath,
    pub aligned_len: usize,
    pub trimmed_tail: TrimmedTail,
}

/// End-to-end relevance of a query series against a reference: deltas,
/// forward alignment, insertion-only de-warp, then local and global
/// quantification.
pub fn farm_relevance(
    ref_series: &TimeSeries,
    qry_series: &TimeSeries,
    dparams: &DistanceParams,
    rparams: &RelevanceParams,
) -> Result<RelevanceReport> {
    if ref_series.len() < qry_series.len() {
        return Err(invalid(format!(
            "reference ({}) must be at least as long as the query ({})",
            ref_series.len(),
            qry_series.len()
        )));
    }
    if qry_series.len() < rparams.window + 1 {
        return Err(invalid(format!(
            "query length {} is too short for window {}",
            qry_series.len(),
            rparams.window
        )));
    }
    let path = align(&ref_series.to_deltas(), &qry_series.to_deltas(), dparams)?;
    let pair = apply_warp(ref_series, qry_series, &path)?;
    let local = local_relevance(&pair, rparams)?;
    let global = global_relevance(&local, &pair, rparams)?;
    let degenerate_windows = local.iter().filter(|c| c.value.is_none()).count();
    Ok(RelevanceReport {
        local,
        global_value: global.value,
        full_correlation: global.full_correlation,
        degenerate_windows,
        denominator_clamped: global.denominator_clamped,
        window: rparams.window,
        global_form: rparams.global_form,
        aligned_len: pair.len(),
        trimmed_tail: pair.trimmed_tail,
        path,
    })
}

/// One ranked candidate, keeping the full report for masking use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedCandidate {
    pub name: String,
    pub report: RelevanceReport,
}

/// Candidate that could not be evaluated, with the error message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCandidate {
    pub name: String,
    pub error: String,
}

/// Ranking of exogenous candidates against a target series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub entries: Vec<RankedCandidate>,
    pub skipped: Vec<SkippedCandidate>,
}

/// Evaluate every candidate against the target and sort by global value,
/// descending; ties break on the candidate name so the order is
/// deterministic. Candidates that fail to evaluate are recorded and
/// skipped. An empty candidate list yields an empty ranking.
pub fn rank_exogenous(
    target: &TimeSeries,
    candidates: &[TimeSeries],
    dparams: &DistanceParams,
    rparams: &RelevanceParams,
) -> Ranking {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for (i, candidate) in candidates.iter().enumerate() {
        let name = candidate
            .name()
            .map(str::to_owned)
            .unwrap_or_else(|| format!("candidate_{i}"));
        match farm_relevance(target, candidate, dparams, rparams) {
            Ok(report) => entries.push(RankedCandidate { name, report }),
            Err(e) => skipped.push(SkippedCandidate {
                name,
                error: e.to_string(),
            }),
        }
    }
    entries.sort_by(|a, b| {
        b.report
            .global_value
            .total_cmp(&a.report.global_value)
            .then_with(|| a.name.cmp(&b.name))
    });
    Ranking { entries, skipped }
}
