//! Time-series relevance toolkit built around a forward-aligned relevance
//! metric (FARM): a dual-branch angular feature distance, a greedy forward
//! warp aligner that runs in linear time, insertion-only warp application,
//! and windowed local/global relevance quantification — plus DTW, DDTW and
//! an AMSS-style aligner as comparison baselines, a synthetic signal
//! corpus, and CSV/JSON artifact I/O.
//!
//! The pipeline compares a *reference* (target) series against a *query*
//! (exogenous candidate) whose features may lead the reference in time:
//!
//! 1. both series become delta series ([`TimeSeries::to_deltas`]);
//! 2. [`align()`] walks the pair once, picking at each position the
//!    lowest-distance move among one diagonal and two skip candidates;
//! 3. [`apply_warp`] inserts interpolated samples along the path so matched
//!    features share indices, never dropping data;
//! 4. [`farm_relevance`] correlates the de-warped pair in sliding windows
//!    and aggregates the window coefficients into a global value.
//!
//! ```
//! use farm::{align, farm_relevance, DistanceParams, RelevanceParams, TimeSeries};
//!
//! let target = TimeSeries::new(vec![0.0, 0.4, 1.1, 2.0, 2.2, 3.0, 3.1, 4.0])?;
//! let lead = TimeSeries::new(vec![0.0, 0.5, 1.2, 2.1, 2.3, 3.2, 3.2, 4.1])?;
//! let report = farm_relevance(
//!     &target,
//!     &lead,
//!     &DistanceParams::default(),
//!     &RelevanceParams::default(),
//! )?;
//! assert!(report.global_value > 0.9);
//! # Ok::<(), farm::FarmError>(())
//! ```
//!
//! Every runnable capability has a dedicated example under `examples/`;
//! the `farm` binary exposes the same operations as subcommands.

pub mod align;
pub mod baselines;
pub mod cli;
pub mod distance;
pub mod error;
pub mod io;
pub mod relevance;
pub mod series;
pub mod synth;

pub use align::{
    align, apply_steps, apply_warp, path_to_matrix_trace, AlignedPair, MatrixTrace, TrimmedTail,
    WarpPath,
};
pub use distance::{
    farm_distance, farm_distance_detailed, transfer_crossover_scan, vector_angle, CrossoverReport,
    DistanceBranch, DistanceParams, FeatureAngle, FeatureDistance,
};
pub use error::{FarmError, Result};
pub use relevance::{
    farm_relevance, global_relevance, local_relevance, rank_exogenous, GlobalForm,
    LocalCoefficient, RankedCandidate, Ranking, RelevanceParams, RelevanceReport,
};
pub use series::{DeltaSeries, TimeSeries};
pub use synth::{
    apply_warp_spec, gen_base_signal, gen_sec4_pair, gen_white_noise, random_warp_spec, WarpSpec,
    WarpTruth,
};
