//! AMSS-style aligner: cosine similarity of delta vectors, accumulated over
//! a search space whose moves always advance both indices (one of them
//! possibly by two).
//!
//! This is a comparison baseline reconstructed from the description of the
//! approach, not a faithful reimplementation of the original publication:
//! accumulation is not normalized, unreachable cells stay at negative
//! infinity, and when the far corner lies outside the depth-2 move cone the
//! best reachable cell on the last row or column is used instead.

use crate::error::{invalid, Result};

use super::BaselinePath;

/// Accumulated similarity and the backtracked path (delta-space indices).
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityPath {
    pub similarity: f64,
    pub path: BaselinePath,
}

/// Cosine similarity of the vectors (1, a) and (1, b), clamped to [0, 1]:
/// angle gaps of pi/2 or more score zero.
pub fn vector_cosine_similarity(a: f64, b: f64) -> f64 {
    let cos = (1.0 + a * b) / ((1.0 + a * a) * (1.0 + b * b)).sqrt();
    cos.clamp(0.0, 1.0)
}

const NEG: f64 = f64::NEG_INFINITY;

/// Align two series on their delta vectors, maximizing accumulated clamped
/// cosine similarity over predecessors {(i-1,j-1), (i-2,j-1), (i-1,j-2)}.
/// Needs at least 2 samples per series.
pub fn amss_align(ref_vals: &[f64], qry_vals: &[f64]) -> Result<SimilarityPath> {
    if ref_vals.len() < 2 || qry_vals.len() < 2 {
        return Err(invalid(format!(
            "amss needs at least 2 samples per series, got ({}, {})",
            ref_vals.len(),
            qry_vals.len()
        )));
    }
    let rd: Vec<f64> = ref_vals.windows(2).map(|w| w[1] - w[0]).collect();
    let qd: Vec<f64> = qry_vals.windows(2).map(|w| w[1] - w[0]).collect();
    let n = rd.len();
    let m = qd.len();

    let idx = |i: usize, j: usize| (i - 1) * m + (j - 1);
    let mut acc = vec![NEG; n * m];
    acc[idx(1, 1)] = vector_cosine_similarity(rd[0], qd[0]);
    for i in 1..=n {
        for j in 1..=m {
            if i == 1 && j == 1 {
                continue;
            }
            let mut best = NEG;
            for (pi, pj) in [
                (i.wrapping_sub(1), j.wrapping_sub(1)),
                (i.wrapping_sub(2), j.wrapping_sub(1)),
                (i.wrapping_sub(1), j.wrapping_sub(2)),
            ] {
                if (1..=n).contains(&pi) && (1..=m).contains(&pj) && acc[idx(pi, pj)] > best {
                    best = acc[idx(pi, pj)];
                }
            }
            if best > NEG {
                acc[idx(i, j)] = best + vector_cosine_similarity(rd[i - 1], qd[j - 1]);
            }
        }
    }

    // Best reachable end cell on the last row or column.
    let mut end = (n, m);
    let mut best = NEG;
    for j in 1..=m {
        if acc[idx(n, j)] > best {
            best = acc[idx(n, j)];
            end = (n, j);
        }
    }
    for i in 1..=n {
        if acc[idx(i, m)] > best {
            best = acc[idx(i, m)];
            end = (i, m);
        }
    }
    debug_assert!(best > NEG, "cell (1,1) is always reachable");

    // Backtrack by the best predecessor, diagonal preferred on ties.
    let mut steps = vec![end];
    let (mut i, mut j) = end;
    while (i, j) != (1, 1) {
        let mut next = None;
        let mut next_acc = NEG;
        for (pi, pj) in [
            (i.wrapping_sub(1), j.wrapping_sub(1)),
            (i.wrapping_sub(2), j.wrapping_sub(1)),
            (i.wrapping_sub(1), j.wrapping_sub(2)),
        ] {
            if (1..=n).contains(&pi) && (1..=m).contains(&pj) && acc[idx(pi, pj)] > next_acc {
                next_acc = acc[idx(pi, pj)];
                next = Some((pi, pj));
            }
        }
        match next {
            Some(cell) => {
                steps.push(cell);
                i = cell.0;
                j = cell.1;
            }
            None => break,
        }
    }
    steps.reverse();

    Ok(SimilarityPath {
        similarity: best,
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
    fn identical_series_full_diagonal() {
        let x = [0.0, 1.0, 3.0, 2.0, 4.0];
        let r = amss_align(&x, &x).unwrap();
        // Four delta matches, each contributing similarity 1.
        assert!((r.similarity - 4.0).abs() < 1e-12);
        assert_eq!(r.path.steps, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn perpendicular_vectors_score_zero() {
        // Deltas 1 and -1 give vectors at +45/-45 degrees: a pi/2 gap.
        assert_eq!(vector_cosine_similarity(1.0, -1.0), 0.0);
        // Wider gaps clamp to zero as well.
        assert_eq!(vector_cosine_similarity(2.0, -2.0), 0.0);
        assert!((vector_cosine_similarity(1.0, 1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn similarity_contributions_stay_in_unit_range() {
        for a in [-3.0, -0.5, 0.0, 0.2, 4.0] {
            for b in [-2.0, -0.1, 0.0, 1.0, 5.0] {
                let s = vector_cosine_similarity(a, b);
                assert!((0.0..=1.0).contains(&s));
            }
        }
    }

    #[test]
    fn rejects_short_inputs() {
        assert!(amss_align(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn paths_are_monotone() {
        let r = [0.0, 1.0, 2.5, 2.0, 3.0, 4.5, 4.0];
        let q = [0.0, 1.5, 2.0, 2.8, 4.0, 3.5];
        let out = amss_align(&r, &q).unwrap();
        assert!(out.path.is_monotone());
        assert_eq!(*out.path.steps.first().unwrap(), (1, 1));
    }
}
