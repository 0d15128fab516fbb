//! Optimizes a full-codebook search scan pattern and shows why the dwell
//! count exceeds the codebook size for small codebooks: the two beams that
//! stare along the baseline never find an active partner and each take a
//! silent-partner dwell.
//!
//! Run with: cargo run --release --example scan_pattern_optimization

use isac_sched::codebook::{BeamId, SILENT_BEAM};
use isac_sched::experiments::{ExperimentConfig, PairTables};
use isac_sched::radar::{calibrate_radar_power, CalibrationMode};
use isac_sched::scheduler::{optimize_scan_pattern, verify_pattern, PatternKind};

fn main() {
    let cfg = ExperimentConfig::default();
    let n_beams = 12;
    let layout = cfg.layout().unwrap();
    let codebooks = cfg.codebooks(n_beams).unwrap();
    let scene = cfg.scene(&layout, &codebooks);
    let base = cfg.radar_params().unwrap();
    let p_r = calibrate_radar_power(
        CalibrationMode::Detection,
        cfg.detection_target,
        &base,
        &scene,
        &codebooks,
        cfg.calibration_margin_db,
    )
    .unwrap();
    let params = base.with_power(p_r);
    let tables = PairTables::build(&params, &scene, &layout, &codebooks);

    let beams: Vec<BeamId> = (1..=n_beams).collect();
    let cost = |u: BeamId, v: BeamId| tables.search_cost(u, v, cfg.detection_target);
    let pattern = optimize_scan_pattern(PatternKind::Search, &beams, &beams, cost, None).unwrap();
    verify_pattern(&pattern, [&beams, &beams], Some(&cost)).unwrap();

    println!(
        "search over {n_beams} beams per cell -> D_s = {} dwells\n",
        pattern.n_dwells()
    );
    println!("{:>5} {:>12} {:>12}", "dwell", "BS 1 look", "BS 2 look");
    for (d, &[u, v]) in pattern.dwells.iter().enumerate() {
        let fmt = |b: BeamId| {
            if b == SILENT_BEAM {
                "silent".to_string()
            } else {
                format!("{:6.1} deg", codebooks[0].look_dir(b).to_degrees())
            }
        };
        println!("{:>5} {:>12} {:>12}", d + 1, fmt(u), fmt(v));
    }

    let infeasible: usize = (1..=n_beams)
        .flat_map(|u| (1..=n_beams).map(move |v| (u, v)))
        .filter(|&(u, v)| cost(u, v) > 0.0)
        .count();
    println!(
        "\n{} of {} active beam pairs violate the detection requirement;",
        infeasible,
        n_beams * n_beams
    );
    println!("the optimizer found a matching that avoids all of them.");
}
