//! Time-series container and delta-series construction.
//!
//! A [`TimeSeries`] holds finite samples taken at a constant interval; the
//! interval itself is fixed at one unit and not stored, since every
//! downstream measure works on the change between consecutive samples. A
//! [`DeltaSeries`] is that change sequence and is the feature representation
//! all distances and alignments operate on.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Ordered real-valued samples at a constant sampling interval.
///
/// Invariants, enforced at construction:
/// - at least two samples (so at least one delta exists)
/// - every sample is finite
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    name: Option<String>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(invalid(format!(
                "time series needs at least 2 samples, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!(
                "time series sample {i} is not finite ({})",
                values[i]
            )));
        }
        Ok(Self { values, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: the constructor rejects series shorter than 2.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Consecutive differences `values[i+1] - values[i]`.
    pub fn to_deltas(&self) -> DeltaSeries {
        let deltas = self.values.windows(2).map(|w| w[1] - w[0]).collect();
        DeltaSeries {
            deltas,
            source_length: self.values.len(),
        }
    }
}

/// Consecutive differences of a [`TimeSeries`]; length is one less than the
/// source series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaSeries {
    deltas: Vec<f64>,
    source_length: usize,
}

impl DeltaSeries {
    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn source_length(&self) -> usize {
        self.source_length
    }

    /// Cumulative sum starting from `first`, reproducing the source samples.
    pub fn reconstruct(&self, first: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.source_length);
        out.push(first);
        let mut acc = first;
        for d in &self.deltas {
            acc += d;
            out.push(acc);
        }
        out
    }
}
