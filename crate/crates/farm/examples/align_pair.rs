//! Greedy forward alignment of a reference/query pair whose shared shape is
//! offset in time and disturbed by local features (valleys, an overshoot,
//! a plateau). The path stays in the lower-left triangle because the query
//! is the leading series.
//!
//! Run with: cargo run --release --example align_pair

use farm::{align, path_to_matrix_trace, DistanceParams};

fn main() {
    let (reference, query) = farm::gen_sec4_pair();
    println!("Reference: {:?}", reference.values());
    println!("Query:     {:?}", query.values());

    let path = align(
        &reference.to_deltas(),
        &query.to_deltas(),
        &DistanceParams::default(),
    )
    .unwrap();

    println!(
        "\nWarp path over {} x {} deltas:",
        path.ref_len, path.qry_len
    );
    for (i, (r, q)) in path.steps.iter().enumerate() {
        let kind = if i == 0 {
            "start"
        } else {
            let (pr, pq) = path.steps[i - 1];
            match (r - pr, q - pq) {
                (1, 1) => "diagonal",
                (2, 1) => "ref skip",
                _ => "qry skip",
            }
        };
        println!("  ({r:>2}, {q:>2})  {kind}");
    }
    println!(
        "\nDistance evaluations: {} (bound 3(N+M) = {})",
        path.evaluations,
        3 * (path.ref_len + path.qry_len)
    );

    let trace = path_to_matrix_trace(&path);
    let below_diagonal = trace.points.iter().all(|&(r, q)| q <= r);
    println!("Trace within the lower-left triangle: {below_diagonal}");
}
