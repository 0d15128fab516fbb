//! Compares the proposed scan pattern against the in-phase and random
//! baselines: distribution of per-probe detection probability and radar
//! SINR, and the reliability of meeting each target.
//!
//! Run with: cargo run --release --example detection_cdf

use isac_sched::experiments::runner::{run_cdf_experiment, PatternLabel};
use isac_sched::experiments::ExperimentConfig;
use isac_sched::units::{db_to_linear, linear_to_db};

fn main() {
    let cfg = ExperimentConfig {
        n_realizations: 2000, // demo-sized run
        ..Default::default()
    };
    let results = run_cdf_experiment(&cfg).unwrap();

    for slice in &results.slices {
        println!(
            "N_l = {:>2}: proposed patterns use D_t* = {} and D_s* = {} dwells",
            slice.n_beams, slice.d_tracking, slice.d_search
        );
        println!(
            "  {:<9} {:>14} {:>14} {:>16} {:>14}",
            "pattern", "SINR p1%", "rel @ 10 dB", "detection p1%", "rel @ 0.9"
        );
        for (p, label) in PatternLabel::ALL.iter().enumerate() {
            let sinr = &slice.tracking_sinr[p];
            let pdet = &slice.search_pdet[p];
            println!(
                "  {:<9} {:>11.2} dB {:>14.4} {:>16.4} {:>14.4}",
                label.file_tag(),
                linear_to_db(sinr.quantile(0.01).max(1e-12)),
                sinr.reliability(db_to_linear(cfg.sinr_target_db)),
                pdet.quantile(0.01),
                pdet.reliability(cfg.detection_target),
            );
        }
        println!();
    }
    println!("the proposed pattern meets both targets on every probe by construction;");
    println!("the baselines leak inter-cell interference into a tail of bad probes.");
}
