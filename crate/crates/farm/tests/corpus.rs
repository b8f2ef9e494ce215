//! Corpus-level behavior over seeded ground-truth-warped families: alignment
//! improves correlation, and relevance ranking tracks candidate fidelity.

mod common;

use rand::prelude::*;

use farm::relevance::raw_correlation;
use farm::*;

fn delta_std(series: &TimeSeries) -> f64 {
    let d = series.to_deltas();
    let mean = d.deltas().iter().sum::<f64>() / d.len() as f64;
    (d.deltas().iter().map(|x| (x - mean).powi(2)).sum::<f64>() / d.len() as f64).sqrt()
}

/// For insertion-warped pairs, de-warping should not often lose to the raw
/// truncated comparison. Greedy alignment does not guarantee improvement on
/// every instance; the bar is corpus-level.
#[test]
fn alignment_improves_correlation_on_warped_corpus() {
    let dp = DistanceParams::default();
    let mut improved = 0;
    let total = 200;
    for seed in 0..total as u64 {
        let source = gen_base_signal(48, 9000 + seed).unwrap();
        let mut spec = random_warp_spec(48, 9500 + seed).unwrap();
        spec.distortions.clear(); // pure time warp, nonempty insertions
        assert!(!spec.insertions.is_empty());
        let (warped, _truth) = apply_warp_spec(&source, &spec, 9900 + seed).unwrap();

        let path = align(&warped.to_deltas(), &source.to_deltas(), &dp).unwrap();
        let pair = apply_warp(&warped, &source, &path).unwrap();
        let aligned = raw_correlation(pair.ref_aligned.values(), pair.qry_aligned.values());
        let m = warped.len().min(source.len());
        let raw = raw_correlation(&warped.values()[..m], &source.values()[..m]);
        if let (Some(a), Some(r)) = (aligned, raw) {
            if a >= r {
                improved += 1;
            }
        }
    }
    assert!(
        improved * 10 >= total * 9,
        "correlation improved in only {improved}/{total} warped pairs"
    );
}

/// Candidates are the warp source plus increasing amounts of one shared
/// noise realization; the ranking should follow the noise level.
#[test]
fn ranking_follows_noise_level() {
    let dp = DistanceParams::default();
    let rp = RelevanceParams::default();
    let len = 96usize;
    let sigmas = [0.2, 0.8, 3.0];
    let mut ordered = 0;
    let total = 100;
    for seed in 0..total as u64 {
        let mut r = common::rng(40_000 + seed);
        let source = gen_base_signal(len, 7000 + seed).unwrap();
        let spec = random_warp_spec(len, 7500 + seed).unwrap();
        let (warped, _) = apply_warp_spec(&source, &spec, 7900 + seed).unwrap();
        let scale = delta_std(&source);
        let eps: Vec<f64> = (0..len)
            .map(|_| {
                let u1: f64 = r.gen_range(f64::EPSILON..1.0);
                let u2: f64 = r.gen_range(0.0..1.0);
                (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
            })
            .collect();

        let candidates: Vec<TimeSeries> = sigmas
            .iter()
            .enumerate()
            .map(|(i, sigma)| {
                let values: Vec<f64> = source
                    .values()
                    .iter()
                    .zip(&eps)
                    .map(|(v, e)| v + sigma * scale * e)
                    .collect();
                TimeSeries::new(values)
                    .unwrap()
                    .with_name(format!("noise_level_{i}"))
            })
            .collect();

        let ranking = rank_exogenous(&warped, &candidates, &dp, &rp);
        assert_eq!(ranking.entries.len(), 3);
        let names: Vec<&str> = ranking.entries.iter().map(|e| e.name.as_str()).collect();
        if names == ["noise_level_0", "noise_level_1", "noise_level_2"] {
            ordered += 1;
        }
    }
    assert!(
        ordered * 10 >= total * 9,
        "ranking followed the noise level in only {ordered}/{total} trials"
    );
}

/// Recorded measurement, not a gate: how far the forward and AMSS-style
/// paths stray from the known correspondence on ground-truth-warped pairs.
#[test]
fn truth_deviation_comparison_recorded() {
    use farm::baselines::{amss_align, compare_paths};

    let dp = DistanceParams::default();
    let mut farm_total = 0.0;
    let mut amss_total = 0.0;
    let mut farm_better = 0usize;
    let total = 100;
    for seed in 0..total as u64 {
        let source = gen_base_signal(32, 60_000 + seed).unwrap();
        let spec = random_warp_spec(32, 60_500 + seed).unwrap();
        let (warped, truth) = apply_warp_spec(&source, &spec, 60_900 + seed).unwrap();
        let farm_path = align(&warped.to_deltas(), &source.to_deltas(), &dp).unwrap();
        let amss = amss_align(warped.values(), source.values()).unwrap();
        let cmp = compare_paths(&farm_path, &amss.path, Some(&truth)).unwrap();
        let f = cmp.farm_vs_truth.unwrap().mean;
        let a = cmp.baseline_vs_truth.unwrap().mean;
        farm_total += f;
        amss_total += a;
        if f <= a {
            farm_better += 1;
        }
    }
    println!(
        "truth deviation over {total} warped pairs: forward mean {:.4}, AMSS-style mean {:.4}, forward <= AMSS-style in {farm_better}/{total}",
        farm_total / total as f64,
        amss_total / total as f64
    );
}

/// De-warping never drops samples, so feature content is preserved even
/// when the warp carries local distortions.
#[test]
fn warped_family_roundtrip_with_distortions() {
    let dp = DistanceParams::default();
    for seed in 0..50u64 {
        let source = gen_base_signal(32, 100 + seed).unwrap();
        let spec = random_warp_spec(32, 200 + seed).unwrap();
        let (warped, truth) = apply_warp_spec(&source, &spec, 300 + seed).unwrap();
        assert_eq!(truth.warped_len, warped.len());
        assert_eq!(truth.source_len, source.len());
        assert!(truth.map.windows(2).all(|w| w[1] > w[0]));

        let path = align(&warped.to_deltas(), &source.to_deltas(), &dp).unwrap();
        path.validate().unwrap();
        let pair = apply_warp(&warped, &source, &path).unwrap();
        let (ref_kept, qry_kept) = pair.strip_inserted();
        let (last_r, last_q) = path.last_step();
        assert_eq!(&ref_kept[..], &warped.values()[..last_r + 1]);
        assert_eq!(&qry_kept[..], &source.values()[..last_q + 1]);
    }
}
