//! Dual-branch feature distance between two deltas.
//!
//! Each delta is viewed as the vector (1, delta); its direction is
//! `atan(delta)`. Deltas whose signs match are compared on the angular
//! scale with a sine distance, which shrinks for equally-large changes and
//! grows for small ones. Opposite-sign (or zero) deltas fall through to an
//! exponential penalty on the raw delta gap, scaled so that it dominates
//! the sine branch and same-direction matches stay preferred.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Default multiplier on the exponential-branch exponent.
pub const EXP_SCALE_DEFAULT: f64 = 5.0;

/// Saturation sentinel returned when the exponential branch overflows.
pub const SATURATED_DISTANCE: f64 = f64::MAX;

// exp(x) overflows f64 just above 709.78; exp_m1(709) is still finite.
const EXP_OVERFLOW_LIMIT: f64 = 709.0;

/// Parameters of the feature distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceParams {
    /// Dimensionless multiplier on the exponential-branch exponent.
    pub exp_scale: f64,
}

impl DistanceParams {
    pub fn new(exp_scale: f64) -> Result<Self> {
        if !exp_scale.is_finite() || exp_scale <= 0.0 {
            return Err(invalid(format!(
                "exp_scale must be a positive finite number, got {exp_scale}"
            )));
        }
        Ok(Self { exp_scale })
    }
}

impl Default for DistanceParams {
    fn default() -> Self {
        Self {
            exp_scale: EXP_SCALE_DEFAULT,
        }
    }
}

/// Direction of a delta vector, strictly inside (-pi/2, pi/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureAngle(f64);

impl FeatureAngle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

/// `atan(delta)` of a finite delta.
pub fn vector_angle(delta: f64) -> Result<FeatureAngle> {
    if !delta.is_finite() {
        return Err(invalid(format!("delta must be finite, got {delta}")));
    }
    Ok(FeatureAngle(delta.atan()))
}

/// Which branch produced a distance value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceBranch {
    /// Same-sign deltas: sine of the angular gap.
    Angular,
    /// Opposite-sign or zero deltas: exponential penalty.
    Exponential,
}

/// Distance value plus branch and saturation metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureDistance {
    pub value: f64,
    pub branch: DistanceBranch,
    /// True when the exponential branch overflowed and the value was
    /// saturated to [`SATURATED_DISTANCE`].
    pub saturated: bool,
}

fn same_sign_nonzero(a: f64, b: f64) -> bool {
    (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0)
}

/// Branch selection and evaluation without input validation; callers
/// guarantee finite deltas (delta series enforce this at construction).
pub(crate) fn distance_raw(
    delta_ref: f64,
    delta_qry: f64,
    exp_scale: f64,
) -> (f64, DistanceBranch, bool) {
    debug_assert!(delta_ref.is_finite() && delta_qry.is_finite());
    if same_sign_nonzero(delta_ref, delta_qry) {
        let gap = (delta_ref.atan() - delta_qry.atan()).abs();
        (gap.sin(), DistanceBranch::Angular, false)
    } else {
        let x = exp_scale * (delta_ref - delta_qry).abs();
        if x >= EXP_OVERFLOW_LIMIT {
            (SATURATED_DISTANCE, DistanceBranch::Exponential, true)
        } else {
            (x.exp_m1(), DistanceBranch::Exponential, false)
        }
    }
}

/// Feature distance between one reference delta and one query delta.
///
/// Same-sign nonzero deltas score `sin(|atan(ref) - atan(qry)|)`; any other
/// combination scores `exp(exp_scale * |ref - qry|) - 1`. The result is
/// nonnegative and zero exactly when the deltas are equal.
pub fn farm_distance(delta_ref: f64, delta_qry: f64, params: &DistanceParams) -> Result<f64> {
    farm_distance_detailed(delta_ref, delta_qry, params).map(|d| d.value)
}

/// Like [`farm_distance`] but also reports the branch taken and whether the
/// exponential branch saturated.
pub fn farm_distance_detailed(
    delta_ref: f64,
    delta_qry: f64,
    params: &DistanceParams,
) -> Result<FeatureDistance> {
    if !delta_ref.is_finite() || !delta_qry.is_finite() {
        return Err(invalid(format!(
            "deltas must be finite, got ({delta_ref}, {delta_qry})"
        )));
    }
    let (value, branch, saturated) = distance_raw(delta_ref, delta_qry, params.exp_scale);
    Ok(FeatureDistance {
        value,
        branch,
        saturated,
    })
}

/// One point of the margin curve: the smallest exponential-minus-sine margin
/// observed in an angular-gap bucket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverSample {
    pub angular_gap: f64,
    pub exp_minus_sine: f64,
}

/// Result of the transfer-function ordering scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub exp_scale: f64,
    pub grid_step: f64,
    /// Angular gaps of opposite-sign pairs whose exponential distance fell
    /// strictly below the sine of the gap.
    pub failing_gaps: Vec<f64>,
    pub max_failing_gap: Option<f64>,
    /// True when the grid contains 0, where both branches evaluate to 0 on
    /// the (0, 0) pair: a boundary tie, not an ordering failure.
    pub zero_gap_tie: bool,
    /// Minimum margin per gap bucket, for plotting.
    pub margin_curve: Vec<CrossoverSample>,
}

const GRID_RANGE: f64 = 10.0;
const MARGIN_BUCKETS: usize = 512;

/// Scan a delta grid over [-10, 10] and check, for every opposite-sign
/// pair, that the exponential-branch distance is not below the sine of the
/// pair's angular gap. The pair count is quadratic in the grid size, so
/// `grid_step` is capped below at 1e-4.
pub fn transfer_crossover_scan(params: &DistanceParams, grid_step: f64) -> Result<CrossoverReport> {
    if !grid_step.is_finite() || grid_step <= 0.0 {
        return Err(invalid(format!(
            "grid_step must be a positive finite number, got {grid_step}"
        )));
    }
    if grid_step < 1e-4 {
        return Err(invalid("grid_step below 1e-4 would scan too many pairs"));
    }

    let n = (2.0 * GRID_RANGE / grid_step).round() as usize;
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    let mut zero_gap_tie = false;
    for i in 0..=n {
        let mut v = (i as f64).mul_add(grid_step, -GRID_RANGE);
        if v.abs() < grid_step * 1e-9 {
            v = 0.0;
        }
        if v > 0.0 {
            positives.push((v, v.atan()));
        } else if v < 0.0 {
            negatives.push((v, v.atan()));
        } else {
            zero_gap_tie = true;
        }
    }

    let mut failing_gaps = Vec::new();
    let mut min_margin = vec![f64::INFINITY; MARGIN_BUCKETS];
    let bucket_width = std::f64::consts::PI / MARGIN_BUCKETS as f64;
    for &(p, pa) in &positives {
        for &(nv, na) in &negatives {
            let gap = pa - na;
            let sine = gap.sin();
            let (exp_d, _, _) = distance_raw(p, nv, params.exp_scale);
            let margin = exp_d - sine;
            let bucket = ((gap / bucket_width) as usize).min(MARGIN_BUCKETS - 1);
            if margin < min_margin[bucket] {
                min_margin[bucket] = margin;
            }
            if exp_d < sine {
                failing_gaps.push(gap);
            }
        }
    }

    let max_failing_gap = failing_gaps
        .iter()
        .copied()
        .fold(None, |acc: Option<f64>, g| {
            Some(acc.map_or(g, |a| a.max(g)))
        });
    let margin_curve = min_margin
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_finite())
        .map(|(i, &m)| CrossoverSample {
            angular_gap: (i as f64 + 0.5) * bucket_width,
            exp_minus_sine: m,
        })
        .collect();

    Ok(CrossoverReport {
        exp_scale: params.exp_scale,
        grid_step,
        failing_gaps,
        max_failing_gap,
        zero_gap_tie,
        margin_curve,
    })
}

/// Empirical triangle-inequality sampling over unrestricted delta triples.
/// The composed distance mixes the two branches, so this records the
/// violation rate rather than asserting one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub samples: usize,
    pub violations: usize,
    pub violation_rate: f64,
    pub worst_margin: f64,
}

pub fn triangle_violation_scan(
    params: &DistanceParams,
    samples: usize,
    seed: u64,
    range: f64,
) -> Result<TriangleReport> {
    use rand::prelude::*;
    if !range.is_finite() || range <= 0.0 {
        return Err(invalid("range must be positive"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = rng.gen_range(-range..range);
        let b = rng.gen_range(-range..range);
        let c = rng.gen_range(-range..range);
        let (d_ac, _, _) = distance_raw(a, c, params.exp_scale);
        let (d_ab, _, _) = distance_raw(a, b, params.exp_scale);
        let (d_bc, _, _) = distance_raw(b, c, params.exp_scale);
        let margin = d_ac - (d_ab + d_bc);
        if margin > 1e-12 {
            violations += 1;
            if margin > worst {
                worst = margin;
            }
        }
    }
    Ok(TriangleReport {
        samples,
        violations,
        violation_rate: violations as f64 / samples.max(1) as f64,
        worst_margin: worst,
    })
}
