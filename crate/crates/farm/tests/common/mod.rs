//! Shared corpus helpers for the integration suites. Each suite uses a
//! subset, so the unused lint is silenced crate-locally.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use farm::TimeSeries;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random series of `len` samples with deltas drawn uniformly from
/// [-spread, spread].
pub fn random_series(len: usize, spread: f64, rng: &mut ChaCha8Rng) -> TimeSeries {
    let mut values = Vec::with_capacity(len);
    values.push(rng.gen_range(-1.0..1.0));
    for _ in 1..len {
        let last = *values.last().unwrap();
        values.push(last + rng.gen_range(-spread..spread));
    }
    TimeSeries::new(values).unwrap()
}

/// Random series whose every delta is bounded away from zero, so no window
/// of any width is constant.
pub fn jittery_series(len: usize, rng: &mut ChaCha8Rng) -> TimeSeries {
    let mut values = Vec::with_capacity(len);
    values.push(rng.gen_range(-1.0..1.0));
    for _ in 1..len {
        let magnitude = rng.gen_range(0.05..1.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let last = *values.last().unwrap();
        values.push(last + sign * magnitude);
    }
    TimeSeries::new(values).unwrap()
}

/// Gaussian white noise via Box-Muller.
pub fn noise_series(len: usize, sigma: f64, rng: &mut ChaCha8Rng) -> TimeSeries {
    let values = (0..len)
        .map(|_| {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            sigma * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        })
        .collect();
    TimeSeries::new(values).unwrap()
}
