//! Ranking exogenous candidates against a target series. The target is a
//! time-warped copy of a source signal; candidates are the source at three
//! noise levels plus pure noise. Candidates that cannot be evaluated are
//! recorded and skipped rather than failing the ranking.
//!
//! Run with: cargo run --release --example rank_variables

use farm::{
    apply_warp_spec, gen_base_signal, gen_white_noise, random_warp_spec, rank_exogenous,
    DistanceParams, RelevanceParams, TimeSeries,
};

fn main() {
    let len = 96;
    let source = gen_base_signal(len, 42).unwrap();
    let spec = random_warp_spec(len, 43).unwrap();
    let (target, _truth) = apply_warp_spec(&source, &spec, 44).unwrap();
    println!(
        "Target: warped copy of a base signal ({} -> {} samples, {} insertions)",
        source.len(),
        target.len(),
        spec.insertions.iter().map(|i| i.count).sum::<usize>()
    );

    let noise = gen_white_noise(len, 45).unwrap();
    let delta_scale = {
        let d = source.to_deltas();
        d.deltas().iter().map(|x| x.abs()).sum::<f64>() / d.len() as f64
    };
    let mut candidates = vec![
        TimeSeries::new(source.values().to_vec())
            .unwrap()
            .with_name("source"),
        gen_white_noise(len, 46).unwrap().with_name("white_noise"),
        gen_base_signal(30, 47)
            .unwrap()
            .with_name("unrelated_short"),
    ];
    for (i, sigma) in [0.3, 1.5].iter().enumerate() {
        let values: Vec<f64> = source
            .values()
            .iter()
            .zip(noise.values())
            .map(|(v, e)| v + sigma * delta_scale * e)
            .collect();
        candidates.push(
            TimeSeries::new(values)
                .unwrap()
                .with_name(format!("source_noise_{}", i + 1)),
        );
    }

    let ranking = rank_exogenous(
        &target,
        &candidates,
        &DistanceParams::default(),
        &RelevanceParams::default(),
    );

    println!("\nRanking (global value, descending):");
    println!("  rank | candidate       | global   | full corr");
    for (i, entry) in ranking.entries.iter().enumerate() {
        println!(
            "  {:>4} | {:<15} | {:>8.4} | {:>8.4}",
            i + 1,
            entry.name,
            entry.report.global_value,
            entry.report.full_correlation
        );
    }
    for skip in &ranking.skipped {
        println!("  skipped {}: {}", skip.name, skip.error);
    }
    println!(
        "\nNote: the global value is a ratio against the full-series \
         correlation, so weakly correlated candidates can take extreme \
         values with either sign when that denominator is near zero."
    );
}
