//! Feature distance between deltas: the angular branch for same-direction
//! changes, the exponential branch for opposite ones, and the grid scan
//! showing the exponential branch stays above the sine of the angular gap.
//!
//! Run with: cargo run --release --example distance_transfer

use farm::{farm_distance_detailed, transfer_crossover_scan, DistanceParams};

fn main() {
    let params = DistanceParams::default();

    println!("Feature distance (exp_scale = {})", params.exp_scale);
    println!("================================");
    let pairs = [
        (1.0, 1.0),
        (1.0, 0.5),
        (0.2, 0.1),
        (0.0, 0.0),
        (0.2, -0.2),
        (1.0, -1.0),
        (0.0, 0.5),
    ];
    for (a, b) in pairs {
        let d = farm_distance_detailed(a, b, &params).unwrap();
        println!("  d({a:>5}, {b:>5}) = {:<12.6} [{:?}]", d.value, d.branch);
    }

    // The same pairs under the literal exponent (no steepening).
    let flat = DistanceParams::new(1.0).unwrap();
    let d5 = farm_distance_detailed(0.2, -0.2, &params).unwrap();
    let d1 = farm_distance_detailed(0.2, -0.2, &flat).unwrap();
    println!("\nOpposite-change pair (0.2, -0.2):");
    println!("  exp_scale 5 -> {:.6}", d5.value);
    println!("  exp_scale 1 -> {:.6}", d1.value);

    println!("\nTransfer-function ordering scan, delta grid [-10, 10]:");
    for exp_scale in [5.0, 1.0, 0.01] {
        let p = DistanceParams::new(exp_scale).unwrap();
        let report = transfer_crossover_scan(&p, 0.05).unwrap();
        match report.max_failing_gap {
            None => println!(
                "  exp_scale {exp_scale:>5}: exponential branch dominates at every angular gap"
            ),
            Some(gap) => println!(
                "  exp_scale {exp_scale:>5}: {} gaps where the sine wins, widest {gap:.4} rad",
                report.failing_gaps.len()
            ),
        }
    }
}
