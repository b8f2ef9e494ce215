//! Insertion-only warp application: following the path, interpolated
//! samples are inserted into whichever series fell behind, so matched
//! features end up index-aligned and no original sample is ever dropped.
//!
//! Run with: cargo run --release --example dewarp_insertions

use farm::{align, apply_warp, DistanceParams, TimeSeries};

fn main() {
    // The query rises in two steps where the reference takes three.
    let reference = TimeSeries::new(vec![0.0, 1.0, 2.0, 3.0, 3.5, 3.0, 2.0]).unwrap();
    let query = TimeSeries::new(vec![0.0, 1.5, 3.0, 3.5, 3.0, 2.0]).unwrap();

    let path = align(
        &reference.to_deltas(),
        &query.to_deltas(),
        &DistanceParams::default(),
    )
    .unwrap();
    println!("Path: {:?}", path.steps);

    let pair = apply_warp(&reference, &query, &path).unwrap();
    println!("\nAligned pair ({} samples):", pair.len());
    println!("  pos | reference | query     | inserted");
    for i in 0..pair.len() {
        let mark = match (pair.inserted_ref[i], pair.inserted_qry[i]) {
            (true, _) => "ref",
            (_, true) => "qry",
            _ => "",
        };
        println!(
            "  {:>3} | {:>9.3} | {:>9.3} | {mark}",
            i + 1,
            pair.ref_aligned.values()[i],
            pair.qry_aligned.values()[i]
        );
    }

    let (ref_kept, qry_kept) = pair.strip_inserted();
    println!(
        "\nStripping insertions recovers the originals: ref {}, qry {}",
        ref_kept == reference.values(),
        qry_kept == query.values()
    );
    println!(
        "Trimmed tail: {} reference, {} query samples",
        pair.trimmed_tail.ref_samples, pair.trimmed_tail.qry_samples
    );
}
