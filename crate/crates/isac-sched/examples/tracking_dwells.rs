//! Dwell intervals needed to track N_t targets per cell: the optimized
//! pattern against the orthogonal (time-division) baseline.
//!
//! Run with: cargo run --release --example tracking_dwells

use isac_sched::experiments::runner::run_dwell_experiment;
use isac_sched::experiments::ExperimentConfig;

fn main() {
    let cfg = ExperimentConfig {
        n_realizations: 2000, // demo-sized run
        ..Default::default()
    };
    let results = run_dwell_experiment(&cfg).unwrap();

    for slice in &results.slices {
        println!("N_l = {} look directions per cell:", slice.n_beams);
        println!(
            "  {:>4} {:>12} {:>8} {:>12} {:>12}",
            "N_t", "mean D_t*", "p99", "range", "orthogonal"
        );
        for s in &slice.per_n_tracked {
            println!(
                "  {:>4} {:>12.3} {:>8.1} {:>12} {:>12}",
                s.n_tracked,
                s.mean,
                s.p99,
                format!("[{}, {}]", s.min, s.max),
                2 * s.n_tracked
            );
        }
        println!();
    }
    println!("with enough look directions the optimized pattern needs roughly one");
    println!("dwell per target, half of what the orthogonal baseline spends.");
}
