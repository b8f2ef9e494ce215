//! Reference aligners for comparison: classic DTW over raw values, DDTW
//! over a three-point derivative estimate, and an AMSS-style
//! cosine-similarity aligner over delta vectors.
//!
//! These take plain slices rather than [`crate::series::TimeSeries`] so the
//! short-series preconditions (DTW accepts a single sample) stay reachable.
//! DTW and DDTW paths are in sample space; the AMSS-style path, like the
//! forward aligner's, is in delta space.

mod amss;
mod compare;
mod dtw;

pub use amss::{amss_align, vector_cosine_similarity, SimilarityPath};
pub use compare::{
    compare_paths, path_divergence, truth_deviation_deltas, truth_deviation_samples,
    PathComparison, PathDeviation,
};
pub use dtw::{ddtw, derivative_estimate, dtw, CostPath};

use serde::{Deserialize, Serialize};

/// Backtracked baseline path: 1-based index pairs plus the feature-space
/// lengths they index into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselinePath {
    pub ref_len: usize,
    pub qry_len: usize,
    pub steps: Vec<(usize, usize)>,
}

impl BaselinePath {
    /// Both coordinates never decrease along the path.
    pub fn is_monotone(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1)
    }
}
