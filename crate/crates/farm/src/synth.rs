//! Synthetic signal corpus: seeded piecewise-linear base signals, a
//! hand-built reference/query pair with named local features, and
//! insertion-based ground-truth warping for oracle scoring.
//!
//! All generators are pure functions of their arguments; repeated calls
//! return bit-identical output.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::series::TimeSeries;

/// Local shape distortions applied on top of a source series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistortKind {
    /// Insert one repeat of the sample (offset by `magnitude`) right after it.
    Plateau,
    /// Subtract `magnitude` from the sample.
    Valley,
    /// Add `magnitude` to the sample.
    Overshoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Distortion {
    pub kind: DistortKind,
    /// 1-based sample position in the source series.
    pub position: usize,
    pub magnitude: f64,
}

/// Stretch insertion: `count` interpolated samples between source samples
/// `position` and `position + 1` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Insertion {
    pub position: usize,
    pub count: usize,
}

/// Declarative warp recipe driving [`apply_warp_spec`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WarpSpec {
    pub insertions: Vec<Insertion>,
    pub distortions: Vec<Distortion>,
}

impl WarpSpec {
    /// Positions must be strictly increasing per list and within the source
    /// bounds; insertion counts must be positive.
    pub fn validate(&self, source_len: usize) -> Result<()> {
        let mut prev = 0usize;
        for ins in &self.insertions {
            if ins.count == 0 {
                return Err(invalid("insertion count must be positive"));
            }
            if ins.position <= prev && prev != 0 {
                return Err(invalid("insertion positions must be strictly increasing"));
            }
            if ins.position < 1 || ins.position >= source_len {
                return Err(invalid(format!(
                    "insertion position {} out of range 1..{}",
                    ins.position,
                    source_len - 1
                )));
            }
            prev = ins.position;
        }
        prev = 0;
        for d in &self.distortions {
            if d.position <= prev && prev != 0 {
                return Err(invalid("distortion positions must be strictly increasing"));
            }
            if d.position < 1 || d.position > source_len {
                return Err(invalid(format!(
                    "distortion position {} out of range 1..={source_len}",
                    d.position
                )));
            }
            prev = d.position;
        }
        Ok(())
    }
}

/// Ground-truth correspondence between a source series and its warped copy:
/// `map[j]` is the 1-based warped index holding source sample `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarpTruth {
    pub source_len: usize,
    pub warped_len: usize,
    pub map: Vec<usize>,
}

/// Warp a series per `spec`: source samples are kept in order, stretch
/// insertions add interpolated samples (with a small seeded jitter so they
/// are not exactly collinear), and distortions adjust or repeat single
/// samples. Nothing is ever removed.
pub fn apply_warp_spec(
    series: &TimeSeries,
    spec: &WarpSpec,
    seed: u64,
) -> Result<(TimeSeries, WarpTruth)> {
    spec.validate(series.len())?;
    let src = series.values();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Per-sample lookup tables (positions are 1-based).
    let mut insert_after = vec![0usize; src.len() + 1];
    for ins in &spec.insertions {
        insert_after[ins.position] = ins.count;
    }
    let mut plateau_after: Vec<Option<f64>> = vec![None; src.len() + 1];
    let mut value_shift = vec![0.0f64; src.len() + 1];
    for d in &spec.distortions {
        match d.kind {
            DistortKind::Plateau => plateau_after[d.position] = Some(d.magnitude),
            DistortKind::Valley => value_shift[d.position] -= d.magnitude,
            DistortKind::Overshoot => value_shift[d.position] += d.magnitude,
        }
    }

    let mut out = Vec::with_capacity(src.len());
    let mut map = Vec::with_capacity(src.len());
    for (i, &v) in src.iter().enumerate() {
        let pos = i + 1;
        let shifted = v + value_shift[pos];
        out.push(shifted);
        map.push(out.len());
        if let Some(mag) = plateau_after[pos] {
            out.push(shifted + mag);
        }
        let count = insert_after[pos];
        if count > 0 {
            let next = src[i + 1];
            let span = next - v;
            for c in 1..=count {
                let frac = c as f64 / (count + 1) as f64;
                let jitter = 0.1 * span * rng.gen_range(-1.0..1.0);
                out.push(v + frac * span + jitter);
            }
        }
    }

    let warped_len = out.len();
    Ok((
        TimeSeries::new(out)?,
        WarpTruth {
            source_len: src.len(),
            warped_len,
            map,
        },
    ))
}

/// Seeded random warp recipe used by the warped-family corpus: a few stretch
/// insertions plus up to two local distortions.
pub fn random_warp_spec(source_len: usize, seed: u64) -> Result<WarpSpec> {
    if source_len < 8 {
        return Err(invalid(
            "warp spec generation needs a source of length >= 8",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_ins = rng.gen_range(2..=4usize);
    let mut positions: Vec<usize> = (1..source_len).collect();
    positions.shuffle(&mut rng);
    let mut chosen: Vec<usize> = positions.into_iter().take(n_ins).collect();
    chosen.sort_unstable();
    chosen.dedup();
    let insertions = chosen
        .into_iter()
        .map(|position| Insertion {
            position,
            count: rng.gen_range(1..=2),
        })
        .collect();

    let n_dist = rng.gen_range(0..=2usize);
    let mut dpos: Vec<usize> = (2..source_len).collect();
    dpos.shuffle(&mut rng);
    let mut dchosen: Vec<usize> = dpos.into_iter().take(n_dist).collect();
    dchosen.sort_unstable();
    dchosen.dedup();
    let kinds = [
        DistortKind::Valley,
        DistortKind::Overshoot,
        DistortKind::Plateau,
    ];
    let distortions = dchosen
        .into_iter()
        .map(|position| Distortion {
            kind: kinds[rng.gen_range(0..kinds.len())],
            position,
            magnitude: rng.gen_range(0.5..1.5),
        })
        .collect();

    Ok(WarpSpec {
        insertions,
        distortions,
    })
}

#[derive(Clone, Copy)]
enum SegmentKind {
    Rise,
    Fall,
    Flat,
}

/// Deterministic piecewise-linear signal with at least one rising, one
/// falling and one flat segment. Needs `length >= 8`.
pub fn gen_base_signal(length: usize, seed: u64) -> Result<TimeSeries> {
    if length < 8 {
        return Err(invalid(format!(
            "base signal needs length >= 8, got {length}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_deltas = length - 1;
    let n_segments = 3 + rng.gen_range(0..=(n_deltas / 8).min(3));

    // Random composition of n_deltas into n_segments parts, each >= 1.
    let mut cuts: Vec<usize> = (1..n_deltas).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(n_segments - 1).collect();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(n_segments);
    let mut prev = 0;
    for c in cuts {
        sizes.push(c - prev);
        prev = c;
    }
    sizes.push(n_deltas - prev);

    // First three segments carry a shuffled {rise, fall, flat}; extras random.
    let mut kinds = vec![SegmentKind::Rise, SegmentKind::Fall, SegmentKind::Flat];
    kinds.shuffle(&mut rng);
    for _ in 3..n_segments {
        let k = match rng.gen_range(0..3) {
            0 => SegmentKind::Rise,
            1 => SegmentKind::Fall,
            _ => SegmentKind::Flat,
        };
        kinds.push(k);
    }

    let mut values = Vec::with_capacity(length);
    values.push(rng.gen_range(-1.0..1.0));
    for (kind, size) in kinds.into_iter().zip(sizes) {
        let slope = match kind {
            SegmentKind::Rise => rng.gen_range(0.4..1.6),
            SegmentKind::Fall => rng.gen_range(-1.6..-0.4),
            SegmentKind::Flat => 0.0,
        };
        for _ in 0..size {
            let last = *values.last().expect("seeded with start value");
            values.push(last + slope);
        }
    }
    Ok(TimeSeries::new(values)?.with_name(format!("base_len{length}_seed{seed}")))
}

/// White noise, for relevance-ranking experiments and CLI demos.
pub fn gen_white_noise(length: usize, seed: u64) -> Result<TimeSeries> {
    if length < 2 {
        return Err(invalid("noise series needs length >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..length)
        .map(|_| {
            // Box-Muller from two uniforms keeps us off distribution crates.
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        })
        .collect();
    Ok(TimeSeries::new(values)?.with_name(format!("noise_len{length}_seed{seed}")))
}

/// Fixed reference/query pair with the named local features: the reference
/// has valleys at samples 4 and 9 and an overshoot spike at sample 10
/// (1-based), the query has a plateau at samples 6-7, and the query's shared
/// rise-fall shape leads the reference's.
pub fn gen_sec4_pair() -> (TimeSeries, TimeSeries) {
    let reference = TimeSeries::new(vec![
        0.0, 0.5, 1.5, 0.7, 2.5, 3.5, 4.5, 5.0, 3.8, 5.6, 4.0, 3.0, 2.0, 1.0,
    ])
    .expect("static data")
    .with_name("sec4_ref");
    let query = TimeSeries::new(vec![
        0.0, 1.0, 2.0, 3.0, 4.2, 5.0, 5.0, 4.2, 3.2, 2.2, 1.4, 0.8, 0.4, 0.1,
    ])
    .expect("static data")
    .with_name("sec4_qry");
    (reference, query)
}
