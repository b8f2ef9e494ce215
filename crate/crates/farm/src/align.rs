//! Greedy forward warp-path construction over delta series, and
//! insertion-only warp application producing index-aligned series.
//!
//! The aligner walks both delta series once. From the current match (y, x)
//! it evaluates at most three candidates — (y+1, x+1), (y+2, x+1) and
//! (y+1, x+2) — and takes the one with the smallest feature distance, ties
//! resolved in that order. The query may never overtake the reference
//! (x <= y throughout), so the path stays in the lower-left triangle of the
//! match matrix and the total work is linear in the combined length.

use serde::{Deserialize, Serialize};

use crate::distance::{distance_raw, DistanceParams};
use crate::error::{invalid, Result};
use crate::series::{DeltaSeries, TimeSeries};

/// Monotone sequence of (reference, query) delta-index matches, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarpPath {
    pub ref_len: usize,
    pub qry_len: usize,
    pub steps: Vec<(usize, usize)>,
    /// Number of feature-distance evaluations spent building the path.
    pub evaluations: usize,
}

impl WarpPath {
    /// Check every structural invariant: starts at (1,1), step deltas are
    /// in {(1,1), (2,1), (1,2)}, indices stay in range, the query never
    /// leads past the reference, and the path ends at a series end.
    pub fn validate(&self) -> Result<()> {
        if self.steps.is_empty() {
            return Err(invalid("warp path has no steps"));
        }
        if self.steps[0] != (1, 1) {
            return Err(invalid(format!(
                "warp path must start at (1, 1), got {:?}",
                self.steps[0]
            )));
        }
        let mut prev = (0usize, 0usize);
        for &(r, q) in &self.steps {
            let dr = r.wrapping_sub(prev.0);
            let dq = q.wrapping_sub(prev.1);
            if !matches!((dr, dq), (1, 1) | (2, 1) | (1, 2)) {
                return Err(invalid(format!(
                    "illegal step delta ({dr}, {dq}) into ({r}, {q})"
                )));
            }
            if r > self.ref_len || q > self.qry_len {
                return Err(invalid(format!(
                    "step ({r}, {q}) exceeds delta lengths ({}, {})",
                    self.ref_len, self.qry_len
                )));
            }
            if q > r {
                return Err(invalid(format!(
                    "query index {q} leads past reference index {r}"
                )));
            }
            prev = (r, q);
        }
        let (r, q) = prev;
        if r + 1 < self.ref_len && q + 1 < self.qry_len {
            return Err(invalid(format!(
                "path ends at ({r}, {q}) before either series end ({}, {})",
                self.ref_len, self.qry_len
            )));
        }
        if self.evaluations > 3 * (self.ref_len + self.qry_len) {
            return Err(invalid(format!(
                "evaluation count {} exceeds the linear-work bound 3({} + {})",
                self.evaluations, self.ref_len, self.qry_len
            )));
        }
        Ok(())
    }

    pub fn last_step(&self) -> (usize, usize) {
        *self.steps.last().expect("validated paths are nonempty")
    }
}

/// Build the forward warp path between two delta series.
///
/// The reference must be at least as long as the query. Each loop turn
/// evaluates the admissible candidate set and advances; the loop stops when
/// either delta series is exhausted.
pub fn align(
    ref_deltas: &DeltaSeries,
    qry_deltas: &DeltaSeries,
    params: &DistanceParams,
) -> Result<WarpPath> {
    let rd = ref_deltas.deltas();
    let qd = qry_deltas.deltas();
    let n = rd.len();
    let m = qd.len();
    if n == 0 || m == 0 {
        return Err(invalid("delta series must be nonempty"));
    }
    if m > n {
        return Err(invalid(format!(
            "query has more features ({m}) than reference ({n})"
        )));
    }

    let mut steps = Vec::with_capacity(n.max(m) + 1);
    steps.push((1usize, 1usize));
    let (mut y, mut x) = (1usize, 1usize);
    let mut evaluations = 0usize;

    while y < n && x < m {
        // Diagonal candidate is always admissible here; rd[y] is the
        // 1-based delta y+1.
        let mut best = (y + 1, x + 1);
        let (mut best_d, _, _) = distance_raw(rd[y], qd[x], params.exp_scale);
        evaluations += 1;

        if y + 2 <= n {
            let (d, _, _) = distance_raw(rd[y + 1], qd[x], params.exp_scale);
            evaluations += 1;
            if d < best_d {
                best = (y + 2, x + 1);
                best_d = d;
            }
        }
        // The query skip must keep the query at or behind the reference.
        if x + 2 <= m && x + 2 <= y + 1 {
            let (d, _, _) = distance_raw(rd[y], qd[x + 1], params.exp_scale);
            evaluations += 1;
            if d < best_d {
                best = (y + 1, x + 2);
            }
        }

        steps.push(best);
        y = best.0;
        x = best.1;
    }

    Ok(WarpPath {
        ref_len: n,
        qry_len: m,
        steps,
        evaluations,
    })
}

/// Unmatched trailing samples excluded from an aligned pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TrimmedTail {
    pub ref_samples: usize,
    pub qry_samples: usize,
}

impl TrimmedTail {
    pub fn is_empty(&self) -> bool {
        self.ref_samples == 0 && self.qry_samples == 0
    }
}

/// Two equal-length series after insertion-only warp application, plus
/// per-sample provenance masks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedPair {
    pub ref_aligned: TimeSeries,
    pub qry_aligned: TimeSeries,
    /// True where the aligned sample was interpolated rather than copied.
    pub inserted_ref: Vec<bool>,
    pub inserted_qry: Vec<bool>,
    pub trimmed_tail: TrimmedTail,
}

impl AlignedPair {
    pub fn len(&self) -> usize {
        self.ref_aligned.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Drop interpolated samples, recovering the matched prefixes of the
    /// original series.
    pub fn strip_inserted(&self) -> (Vec<f64>, Vec<f64>) {
        let keep = |values: &[f64], mask: &[bool]| {
            values
                .iter()
                .zip(mask)
                .filter(|(_, &ins)| !ins)
                .map(|(&v, _)| v)
                .collect()
        };
        (
            keep(self.ref_aligned.values(), &self.inserted_ref),
            keep(self.qry_aligned.values(), &self.inserted_qry),
        )
    }
}

/// Apply a validated forward warp path to the original sample series.
///
/// Diagonal steps copy one sample from each side. A reference skip (2, 1)
/// copies two reference samples and pairs them with the query's next sample
/// plus one interpolated midpoint; a query skip (1, 2) mirrors that. Samples
/// beyond the path's final step are excluded and reported in `trimmed_tail`.
pub fn apply_warp(
    ref_series: &TimeSeries,
    qry_series: &TimeSeries,
    path: &WarpPath,
) -> Result<AlignedPair> {
    if path.ref_len != ref_series.len() - 1 || path.qry_len != qry_series.len() - 1 {
        return Err(invalid(format!(
            "path is over delta lengths ({}, {}) but series have ({}, {})",
            path.ref_len,
            path.qry_len,
            ref_series.len() - 1,
            qry_series.len() - 1
        )));
    }
    path.validate()?;
    apply_steps(ref_series, qry_series, &path.steps)
}

/// Warp application for any monotone step list with deltas in
/// {(1,1), (2,1), (1,2)} — also usable for baseline paths that do not obey
/// the leading-query constraint. Step indices are 1-based delta indices.
pub fn apply_steps(
    ref_series: &TimeSeries,
    qry_series: &TimeSeries,
    steps: &[(usize, usize)],
) -> Result<AlignedPair> {
    let rv = ref_series.values();
    let qv = qry_series.values();
    if steps.is_empty() || steps[0] != (1, 1) {
        return Err(invalid("step list must start at (1, 1)"));
    }

    let mut ref_aligned = vec![rv[0]];
    let mut qry_aligned = vec![qv[0]];
    let mut inserted_ref = vec![false];
    let mut inserted_qry = vec![false];

    let mut prev = (0usize, 0usize);
    for &(r, q) in steps {
        if r >= rv.len() || q >= qv.len() {
            return Err(invalid(format!(
                "step ({r}, {q}) exceeds delta lengths ({}, {})",
                rv.len() - 1,
                qv.len() - 1
            )));
        }
        match (r.wrapping_sub(prev.0), q.wrapping_sub(prev.1)) {
            (1, 1) => {
                ref_aligned.push(rv[r]);
                inserted_ref.push(false);
                qry_aligned.push(qv[q]);
                inserted_qry.push(false);
            }
            (2, 1) => {
                ref_aligned.push(rv[r - 1]);
                ref_aligned.push(rv[r]);
                inserted_ref.push(false);
                inserted_ref.push(false);
                qry_aligned.push((qv[q - 1] + qv[q]) / 2.0);
                qry_aligned.push(qv[q]);
                inserted_qry.push(true);
                inserted_qry.push(false);
            }
            (1, 2) => {
                ref_aligned.push((rv[r - 1] + rv[r]) / 2.0);
                ref_aligned.push(rv[r]);
                inserted_ref.push(true);
                inserted_ref.push(false);
                qry_aligned.push(qv[q - 1]);
                qry_aligned.push(qv[q]);
                inserted_qry.push(false);
                inserted_qry.push(false);
            }
            (dr, dq) => {
                return Err(invalid(format!(
                    "illegal step delta ({dr}, {dq}) into ({r}, {q})"
                )));
            }
        }
        prev = (r, q);
    }

    let trimmed_tail = TrimmedTail {
        ref_samples: rv.len() - (prev.0 + 1),
        qry_samples: qv.len() - (prev.1 + 1),
    };

    let mut ref_aligned = TimeSeries::new(ref_aligned)?;
    if let Some(n) = ref_series.name() {
        ref_aligned = ref_aligned.with_name(n);
    }
    let mut qry_aligned = TimeSeries::new(qry_aligned)?;
    if let Some(n) = qry_series.name() {
        qry_aligned = qry_aligned.with_name(n);
    }

    Ok(AlignedPair {
        ref_aligned,
        qry_aligned,
        inserted_ref,
        inserted_qry,
        trimmed_tail,
    })
}

/// Plot-ready form of a warp path: the step list plus the extent of the
/// x = y diagonal reference line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixTrace {
    pub points: Vec<(usize, usize)>,
    pub diagonal_max: usize,
}

pub fn path_to_matrix_trace(path: &WarpPath) -> MatrixTrace {
    MatrixTrace {
        points: path.steps.clone(),
        diagonal_max: path.ref_len.max(path.qry_len),
    }
}
