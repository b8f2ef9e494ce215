//! Classic dynamic time warping with path backtracking, plus the
//! derivative variant.

use crate::error::{invalid, Result};

use super::BaselinePath;

/// Accumulated cost and the backtracked warping path.
#[derive(Debug, Clone, PartialEq)]
pub struct CostPath {
    pub cost: f64,
    pub path: BaselinePath,
}

/// DTW over absolute value differences.
///
/// Cell (i, j) accumulates its own distance plus the least of the three
/// admissible predecessors (i-1, j-1), (i-1, j), (i, j-1); backtracking
/// breaks ties diagonal-first. Path indices are 1-based sample indices.
pub fn dtw(ref_vals: &[f64], qry_vals: &[f64]) -> Result<CostPath> {
    dtw_over(ref_vals, qry_vals)
}

/// DTW over three-point derivative estimates instead of raw values, making
/// the cost offset-invariant. Needs at least 3 samples per series.
pub fn ddtw(ref_vals: &[f64], qry_vals: &[f64]) -> Result<CostPath> {
    if ref_vals.len() < 3 || qry_vals.len() < 3 {
        return Err(invalid(format!(
            "derivative features need at least 3 samples, got ({}, {})",
            ref_vals.len(),
            qry_vals.len()
        )));
    }
    dtw_over(
        &derivative_estimate(ref_vals),
        &derivative_estimate(qry_vals),
    )
}

/// Derivative feature per sample: the average of the one-step slope and the
/// centered two-step slope. The first and last values copy the nearest
/// interior estimate.
pub fn derivative_estimate(values: &[f64]) -> Vec<f64> {
    debug_assert!(values.len() >= 3);
    let mut out = Vec::with_capacity(values.len());
    out.push(0.0); // placeholder, overwritten below
    for i in 1..values.len() - 1 {
        out.push(((values[i] - values[i - 1]) + (values[i + 1] - values[i - 1]) / 2.0) / 2.0);
    }
    out[0] = out[1];
    out.push(out[values.len() - 2]);
    out
}

fn dtw_over(ref_f: &[f64], qry_f: &[f64]) -> Result<CostPath> {
    let n = ref_f.len();
    let m = qry_f.len();
    if n == 0 || m == 0 {
        return Err(invalid("dtw needs nonempty inputs"));
    }

    // Accumulated cost matrix, row-major over (ref, qry).
    let mut acc = vec![f64::INFINITY; n * m];
    let idx = |i: usize, j: usize| i * m + j;
    for i in 0..n {
        for j in 0..m {
            let d = (ref_f[i] - qry_f[j]).abs();
            let best_prev = if i == 0 && j == 0 {
                0.0
            } else {
                let mut best = f64::INFINITY;
                if i > 0 && j > 0 {
                    best = acc[idx(i - 1, j - 1)];
                }
                if i > 0 {
                    best = best.min(acc[idx(i - 1, j)]);
                }
                if j > 0 {
                    best = best.min(acc[idx(i, j - 1)]);
                }
                best
            };
            acc[idx(i, j)] = d + best_prev;
        }
    }

    // Backtrack, diagonal preferred on ties.
    let mut steps = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n - 1, m - 1);
    steps.push((i + 1, j + 1));
    while i > 0 || j > 0 {
        let (ni, nj) = if i > 0 && j > 0 {
            let diag = acc[idx(i - 1, j - 1)];
            let up = acc[idx(i - 1, j)];
            let left = acc[idx(i, j - 1)];
            if diag <= up && diag <= left {
                (i - 1, j - 1)
            } else if up <= left {
                (i - 1, j)
            } else {
                (i, j - 1)
            }
        } else if i > 0 {
            (i - 1, j)
        } else {
            (i, j - 1)
        };
        i = ni;
        j = nj;
        steps.push((i + 1, j + 1));
    }
    steps.reverse();

    Ok(CostPath {
        cost: acc[idx(n - 1, m - 1)],
        path: BaselinePath {
            ref_len: n,
            qry_len: m,
            steps,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_series_cost_zero_diagonal() {
        let x = [1.0, 3.0, 2.0, 5.0];
        let r = dtw(&x, &x).unwrap();
        assert_eq!(r.cost, 0.0);
        assert_eq!(r.path.steps, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn constant_offset_pair() {
        let r = dtw(&[0.0, 0.0], &[5.0, 5.0]).unwrap();
        assert_eq!(r.cost, 10.0);
    }

    #[test]
    fn rejects_empty() {
        assert!(dtw(&[], &[1.0]).is_err());
        assert!(dtw(&[1.0], &[]).is_err());
    }

    #[test]
    fn single_sample_pair() {
        let r = dtw(&[2.0], &[7.5]).unwrap();
        assert_eq!(r.cost, 5.5);
        assert_eq!(r.path.steps, vec![(1, 1)]);
    }

    #[test]
    fn ddtw_identity_and_offset_invariance() {
        let ramp: Vec<f64> = (0..8).map(|i| 0.5 * i as f64).collect();
        let shifted: Vec<f64> = ramp.iter().map(|v| v + 10.0).collect();
        assert_eq!(ddtw(&ramp, &ramp).unwrap().cost, 0.0);
        assert_eq!(ddtw(&ramp, &shifted).unwrap().cost, 0.0);
    }

    #[test]
    fn ddtw_rejects_short() {
        assert!(ddtw(&[0.0, 1.0], &[0.0, 1.0, 2.0]).is_err());
    }

    #[test]
    fn derivative_edges_copy_interior() {
        let d = derivative_estimate(&[0.0, 1.0, 3.0, 4.0]);
        assert_eq!(d.len(), 4);
        assert_eq!(d[0], d[1]);
        assert_eq!(d[3], d[2]);
        // interior: ((1-0) + (3-0)/2)/2 = 1.25
        assert!((d[1] - 1.25).abs() < 1e-15);
    }

    #[test]
    fn paths_are_monotone() {
        let r = dtw(&[0.0, 2.0, 1.0, 3.0, 0.5], &[1.0, 0.0, 2.5]).unwrap();
        assert!(r.path.is_monotone());
        assert_eq!(*r.path.steps.first().unwrap(), (1, 1));
        assert_eq!(*r.path.steps.last().unwrap(), (5, 3));
    }
}
