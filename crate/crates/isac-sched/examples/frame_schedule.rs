//! Assembles one MAC frame: tracking first, then communication, then search
//! in the remaining time.
//!
//! Run with: cargo run --release --example frame_schedule

use isac_sched::experiments::runner::{draw_tracked_subset, realization_rng};
use isac_sched::experiments::ExperimentConfig;
use isac_sched::geometry::drop_ues;
use isac_sched::radar::{calibrate_radar_power, CalibrationMode};
use isac_sched::scheduler::{schedule_frame, SchedulingContext, TaskRequirements};
use isac_sched::units::{db_to_linear, watts_to_dbm};

fn main() {
    let cfg = ExperimentConfig {
        n_beams: 24,
        n_tracked: 6,
        ..Default::default()
    };
    let layout = cfg.layout().unwrap();
    let codebooks = cfg.codebooks(cfg.n_beams).unwrap();
    let scene = cfg.scene(&layout, &codebooks);
    let base = cfg.radar_params().unwrap();

    // one frame carries both radar tasks, so use the stricter calibration
    let p_sinr = calibrate_radar_power(
        CalibrationMode::Sinr,
        db_to_linear(cfg.sinr_target_db),
        &base,
        &scene,
        &codebooks,
        cfg.calibration_margin_db,
    )
    .unwrap();
    let p_det = calibrate_radar_power(
        CalibrationMode::Detection,
        cfg.detection_target,
        &base,
        &scene,
        &codebooks,
        cfg.calibration_margin_db,
    )
    .unwrap();
    let radar = base.with_power(p_sinr.max(p_det));
    let comm = cfg.comm_params().unwrap();

    let mut rng = realization_rng(cfg.seed, "example/frame", 0);
    let tracked_1 = draw_tracked_subset(cfg.n_beams, cfg.n_tracked, &mut rng);
    let tracked_2 = draw_tracked_subset(cfg.n_beams, cfg.n_tracked, &mut rng);
    let drop = drop_ues(&layout, cfg.ues_per_cell, cfg.ue_min_range_m, &mut rng).unwrap();

    let req = TaskRequirements {
        n_tracked: cfg.n_tracked,
        tracking_update_rate_hz: cfg.tracking_update_rate_hz,
        sinr_target: db_to_linear(cfg.sinr_target_db),
        throughput_target_bps: cfg.throughput_target_bps,
        detection_target: cfg.detection_target,
        false_alarm_target: cfg.false_alarm_target,
    };
    let ctx = SchedulingContext {
        scene: &scene,
        layout: &layout,
        codebooks: &codebooks,
        radar: &radar,
        comm: &comm,
    };
    let frame = schedule_frame(&req, &ctx, [&tracked_1, &tracked_2], &drop).unwrap();

    println!("p_r = {:.2} dBm", watts_to_dbm(radar.p_r_w));
    println!("tracked beams BS 1: {tracked_1:?}");
    println!("tracked beams BS 2: {tracked_2:?}\n");
    println!(
        "tracking: {:2} targets/cell at {} Hz -> D_t* = {:2}, T_t = {:.4} s",
        cfg.n_tracked,
        cfg.tracking_update_rate_hz,
        frame.tracking_pattern.n_dwells(),
        frame.t_tracking_s
    );
    println!(
        "comm:     target {:6.1} Mb/s -> T_c = {:.4} s ({})",
        req.throughput_target_bps / 1e6,
        frame.t_comm_s,
        if frame.comm_scheduled { "scheduled" } else { "NOT scheduled" }
    );
    println!(
        "search:   D_s* = {:2} -> T_s = {:.4} s, R_s = {:.3} full scans/frame",
        frame.search_pattern.n_dwells(),
        frame.t_search_s,
        frame.search_rate
    );
    println!(
        "\nbudget check: {:.4} + {:.4} + {:.4} = {:.4} s of a {:.1} s frame",
        frame.t_tracking_s,
        frame.t_comm_s,
        frame.t_search_s,
        frame.t_tracking_s + frame.t_comm_s + frame.t_search_s,
        comm.frame_s
    );
}
