//! Throughput / search-rate trade-off: after tracking takes its share of
//! the frame, the rest splits between communication and search.
//!
//! Run with: cargo run --release --example throughput_tradeoff

use isac_sched::experiments::runner::run_tradeoff_experiment;
use isac_sched::experiments::ExperimentConfig;

fn main() {
    let cfg = ExperimentConfig {
        n_realizations: 2000, // demo-sized run
        ..Default::default()
    };
    let results = run_tradeoff_experiment(&cfg).unwrap();

    println!(
        "tracking at {} Hz over {} beams; search over {} beams\n",
        cfg.tracking_update_rate_hz, cfg.tradeoff_tracking_beams, cfg.tradeoff_search_beams
    );
    for line in &results.throughput_lines {
        println!(
            "N_t = {}: mean T_t = {:.4} s, D_s* = {}, mean sum SE = {:.2} bit/s/Hz",
            line.n_tracked, line.mean_t_tracking, line.d_search, line.mean_sum_se
        );
        let slope = -cfg.bandwidth_hz * line.mean_sum_se * line.d_search as f64 * cfg.dwell_time_s
            / cfg.frame_s;
        println!("  throughput falls {:.1} Mb/s per scan/frame of search", -slope / 1e6);
        println!("  {:>16} {:>18}", "R_s scans/frame", "throughput Mb/s");
        for &(r_s, s) in line.points.iter().step_by(5) {
            println!("  {r_s:>16.3} {:>18.1}", s / 1e6);
        }
        println!();
    }

    println!("tracking duration vs update rate (seconds):");
    print!("{:>12}", "R_t Hz");
    for curve in &results.duration_curves {
        print!(
            "{:>16}",
            format!(
                "{} N_t={}",
                if curve.proposed { "prop." } else { "orth." },
                curve.n_tracked
            )
        );
    }
    println!();
    let n_rates = results.duration_curves[0].points.len();
    for i in 0..n_rates {
        print!("{:>12.0}", results.duration_curves[0].points[i].0);
        for curve in &results.duration_curves {
            print!("{:>16.4}", curve.points[i].1);
        }
        println!();
    }
}
