//! Calibrates the radar transmit power against the SINR and detection
//! requirements for the default two-cell scene.
//!
//! Run with: cargo run --release --example calibrate_power

use isac_sched::experiments::ExperimentConfig;
use isac_sched::radar::{
    calibrate_radar_power, detection_probability, invert_detection_probability, CalibrationMode,
};
use isac_sched::units::{db_to_linear, linear_to_db, watts_to_dbm};

fn main() {
    let cfg = ExperimentConfig::default();
    let layout = cfg.layout().unwrap();
    let codebooks = cfg.codebooks(cfg.n_beams).unwrap();
    let scene = cfg.scene(&layout, &codebooks);
    let base = cfg.radar_params().unwrap();

    println!(
        "two cells, radius {} m, separation {} m, {} beams per codebook",
        cfg.cell_radius_m, cfg.bs_separation_m, cfg.n_beams
    );
    println!(
        "N_p = {}, P_fa = {:.0e} -> detection threshold tau = {:.4}\n",
        cfg.n_pulses, cfg.false_alarm_target, base.threshold
    );

    for margin_db in [0.0, cfg.calibration_margin_db] {
        let p_sinr = calibrate_radar_power(
            CalibrationMode::Sinr,
            db_to_linear(cfg.sinr_target_db),
            &base,
            &scene,
            &codebooks,
            margin_db,
        )
        .unwrap();
        let p_det = calibrate_radar_power(
            CalibrationMode::Detection,
            cfg.detection_target,
            &base,
            &scene,
            &codebooks,
            margin_db,
        )
        .unwrap();
        println!("margin {margin_db} dB:");
        println!(
            "  sinr mode      (Gamma >= {} dB)  -> p_r = {:6.2} dBm",
            cfg.sinr_target_db,
            watts_to_dbm(p_sinr)
        );
        println!(
            "  detection mode (P_d >= {})      -> p_r = {:6.2} dBm",
            cfg.detection_target,
            watts_to_dbm(p_det)
        );
    }

    let gamma = invert_detection_probability(cfg.detection_target, base.n_pulses, base.threshold)
        .unwrap();
    println!(
        "\nP_d = {} needs Gamma = {:.3} ({:.2} dB); forward check: P_d({:.3}) = {:.6}",
        cfg.detection_target,
        gamma,
        linear_to_db(gamma),
        gamma,
        detection_probability(gamma, base.n_pulses, base.threshold)
    );
}
