//! Divergence metrics between warp paths and against ground-truth warp
//! correspondences.

use serde::{Deserialize, Serialize};

use crate::align::WarpPath;
use crate::error::{invalid, Result};
use crate::synth::WarpTruth;

use super::BaselinePath;

/// Per-query-index deviations plus their sum and mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathDeviation {
    pub per_step: Vec<f64>,
    pub total: f64,
    pub mean: f64,
}

impl PathDeviation {
    fn from_steps(per_step: Vec<f64>) -> Self {
        let total: f64 = per_step.iter().sum();
        let mean = if per_step.is_empty() {
            0.0
        } else {
            total / per_step.len() as f64
        };
        Self {
            per_step,
            total,
            mean,
        }
    }
}

/// Mutual divergence of two paths over the same pair: for every query index
/// both paths visit, the absolute difference of the matched reference
/// indices (averaged per query index when a path visits it repeatedly).
pub fn path_divergence(a: &[(usize, usize)], b: &[(usize, usize)]) -> PathDeviation {
    let collect = |steps: &[(usize, usize)]| {
        let mut by_qry: Vec<(usize, f64, usize)> = Vec::new();
        for &(r, q) in steps {
            match by_qry.iter_mut().find(|(qq, _, _)| *qq == q) {
                Some((_, sum, count)) => {
                    *sum += r as f64;
                    *count += 1;
                }
                None => by_qry.push((q, r as f64, 1)),
            }
        }
        by_qry
            .into_iter()
            .map(|(q, sum, count)| (q, sum / count as f64))
            .collect::<Vec<_>>()
    };
    let map_a = collect(a);
    let map_b = collect(b);
    let mut per_step = Vec::new();
    for &(q, ra) in &map_a {
        if let Some(&(_, rb)) = map_b.iter().find(|(qq, _)| *qq == q) {
            per_step.push((ra - rb).abs());
        }
    }
    PathDeviation::from_steps(per_step)
}

/// Deviation of a delta-space path from a ground-truth warp: query delta q
/// spans warped samples [map(q), map(q+1)], so any matched reference delta
/// inside [map(q), map(q+1) - 1] deviates by zero and others by their
/// distance to that interval.
pub fn truth_deviation_deltas(
    steps: &[(usize, usize)],
    truth: &WarpTruth,
) -> Result<PathDeviation> {
    let mut per_step = Vec::with_capacity(steps.len());
    for &(r, q) in steps {
        if q + 1 > truth.map.len() {
            return Err(invalid(format!(
                "path query index {q} exceeds the truth map over {} source samples",
                truth.map.len()
            )));
        }
        let lo = truth.map[q - 1];
        let hi = truth.map[q].saturating_sub(1).max(lo);
        let dev = if r < lo {
            (lo - r) as f64
        } else if r > hi {
            (r - hi) as f64
        } else {
            0.0
        };
        per_step.push(dev);
    }
    Ok(PathDeviation::from_steps(per_step))
}

/// Deviation of a sample-space path (DTW-style) from a ground-truth warp:
/// per step (i, j), the distance |i - map(j)|.
pub fn truth_deviation_samples(
    steps: &[(usize, usize)],
    truth: &WarpTruth,
) -> Result<PathDeviation> {
    let mut per_step = Vec::with_capacity(steps.len());
    for &(i, j) in steps {
        if j > truth.map.len() {
            return Err(invalid(format!(
                "path query index {j} exceeds the truth map over {} source samples",
                truth.map.len()
            )));
        }
        per_step.push((i as f64 - truth.map[j - 1] as f64).abs());
    }
    Ok(PathDeviation::from_steps(per_step))
}

/// Side-by-side divergence of a forward path and a baseline path over the
/// same pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathComparison {
    pub mutual: PathDeviation,
    pub farm_vs_truth: Option<PathDeviation>,
    pub baseline_vs_truth: Option<PathDeviation>,
}

/// Compare a forward warp path with a baseline path in the same feature
/// space, optionally scoring both against a ground-truth correspondence.
pub fn compare_paths(
    farm: &WarpPath,
    baseline: &BaselinePath,
    truth: Option<&WarpTruth>,
) -> Result<PathComparison> {
    if farm.ref_len != baseline.ref_len || farm.qry_len != baseline.qry_len {
        return Err(invalid(format!(
            "paths cover different pairs: ({}, {}) vs ({}, {})",
            farm.ref_len, farm.qry_len, baseline.ref_len, baseline.qry_len
        )));
    }
    let mutual = path_divergence(&farm.steps, &baseline.steps);
    let (farm_vs_truth, baseline_vs_truth) = match truth {
        Some(t) => (
            Some(truth_deviation_deltas(&farm.steps, t)?),
            Some(truth_deviation_deltas(&baseline.steps, t)?),
        ),
        None => (None, None),
    };
    Ok(PathComparison {
        mutual,
        farm_vs_truth,
        baseline_vs_truth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn warp_path(steps: Vec<(usize, usize)>, ref_len: usize, qry_len: usize) -> WarpPath {
        WarpPath {
            ref_len,
            qry_len,
            steps,
            evaluations: 0,
        }
    }

    fn baseline(steps: Vec<(usize, usize)>, ref_len: usize, qry_len: usize) -> BaselinePath {
        BaselinePath {
            ref_len,
            qry_len,
            steps,
        }
    }

    #[test]
    fn identical_paths_zero_divergence() {
        let steps = vec![(1, 1), (2, 2), (3, 3)];
        let farm = warp_path(steps.clone(), 3, 3);
        let base = baseline(steps, 3, 3);
        let cmp = compare_paths(&farm, &base, None).unwrap();
        assert_eq!(cmp.mutual.total, 0.0);
        assert_eq!(cmp.mutual.mean, 0.0);
    }

    #[test]
    fn diagonal_vs_skip_accumulates_offset() {
        let farm = warp_path(vec![(1, 1), (2, 2), (3, 3)], 4, 3);
        let base = baseline(vec![(1, 1), (3, 2), (4, 3)], 4, 3);
        let cmp = compare_paths(&farm, &base, None).unwrap();
        // q=1: |1-1|, q=2: |2-3|, q=3: |3-4| -> total 2
        assert_eq!(cmp.mutual.total, 2.0);
    }

    #[test]
    fn mismatched_pairs_rejected() {
        let farm = warp_path(vec![(1, 1)], 3, 3);
        let base = baseline(vec![(1, 1)], 4, 3);
        assert!(compare_paths(&farm, &base, None).is_err());
    }

    #[test]
    fn truth_deviation_interval_semantics() {
        // Source of 4 samples warped to 6: one insertion of 2 after sample 2.
        let truth = WarpTruth {
            source_len: 4,
            warped_len: 6,
            map: vec![1, 2, 5, 6],
        };
        // Query delta 2 spans warped samples [2, 5]: ref deltas 2..4 are all
        // zero-deviation matches.
        let dev = truth_deviation_deltas(&[(1, 1), (3, 2), (5, 3)], &truth).unwrap();
        assert_eq!(dev.per_step, vec![0.0, 0.0, 0.0]);
        // Ref delta 5 against query delta 1 (interval [1, 1]) deviates by 4.
        let dev = truth_deviation_deltas(&[(5, 1)], &truth).unwrap();
        assert_eq!(dev.per_step, vec![4.0]);
    }

    #[test]
    fn truth_deviation_sample_space() {
        let truth = WarpTruth {
            source_len: 3,
            warped_len: 5,
            map: vec![1, 3, 5],
        };
        let dev = truth_deviation_samples(&[(1, 1), (2, 2), (5, 3)], &truth).unwrap();
        assert_eq!(dev.per_step, vec![0.0, 1.0, 0.0]);
        assert!(truth_deviation_samples(&[(1, 4)], &truth).is_err());
    }
}
