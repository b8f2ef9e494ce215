//! The forward aligner next to the classic baselines on the same pair:
//! DTW over raw values, DDTW over derivative estimates, and the
//! AMSS-style cosine aligner. Shows where the paths agree, where they
//! split, and how far each strays from a known ground-truth warp.
//!
//! Run with: cargo run --release --example baseline_comparison

use farm::baselines::{amss_align, compare_paths, ddtw, dtw, truth_deviation_samples};
use farm::{align, apply_warp_spec, gen_base_signal, random_warp_spec, DistanceParams};

fn main() {
    // A ground-truth-warped pair: the reference is the source with known
    // insertions, so the correct correspondence is known exactly.
    let source = gen_base_signal(32, 7).unwrap();
    let spec = random_warp_spec(32, 8).unwrap();
    let (warped, truth) = apply_warp_spec(&source, &spec, 9).unwrap();
    println!(
        "Pair: source {} samples, warped reference {} samples",
        source.len(),
        warped.len()
    );

    let farm_path = align(
        &warped.to_deltas(),
        &source.to_deltas(),
        &DistanceParams::default(),
    )
    .unwrap();
    let amss = amss_align(warped.values(), source.values()).unwrap();
    let dtw_out = dtw(warped.values(), source.values()).unwrap();
    let ddtw_out = ddtw(warped.values(), source.values()).unwrap();

    println!("\nPath lengths and final accumulations:");
    println!(
        "  forward    : {:>3} steps, {} distance evaluations",
        farm_path.steps.len(),
        farm_path.evaluations
    );
    println!(
        "  AMSS-style : {:>3} steps, accumulated similarity {:.3}",
        amss.path.steps.len(),
        amss.similarity
    );
    println!(
        "  DTW        : {:>3} steps, cost {:.3}",
        dtw_out.path.steps.len(),
        dtw_out.cost
    );
    println!(
        "  DDTW       : {:>3} steps, cost {:.3}",
        ddtw_out.path.steps.len(),
        ddtw_out.cost
    );

    let cmp = compare_paths(&farm_path, &amss.path, Some(&truth)).unwrap();
    println!("\nDivergence (delta space):");
    println!(
        "  forward vs AMSS-style : total {:.1}, mean {:.3}",
        cmp.mutual.total, cmp.mutual.mean
    );
    if let (Some(f), Some(a)) = (&cmp.farm_vs_truth, &cmp.baseline_vs_truth) {
        println!("  forward vs truth      : mean deviation {:.3}", f.mean);
        println!("  AMSS-style vs truth   : mean deviation {:.3}", a.mean);
    }
    let dtw_dev = truth_deviation_samples(&dtw_out.path.steps, &truth).unwrap();
    println!(
        "  DTW vs truth (samples): mean deviation {:.3}",
        dtw_dev.mean
    );
}
