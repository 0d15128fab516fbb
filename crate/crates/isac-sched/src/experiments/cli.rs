//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on configuration errors, 2 when the
//! requested schedule is infeasible.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::radar::{calibrate_radar_power, CalibrationMode};
use crate::scheduler::{schedule_frame, SchedulingContext, TaskRequirements};
use crate::units::{db_to_linear, linear_to_db, watts_to_dbm};

use super::config::ExperimentConfig;
use super::output::{write_cdf, write_dwell, write_tradeoff, RunMeta};
use super::runner::{
    self, realization_rng, run_cdf_experiment, run_dwell_experiment, run_tradeoff_experiment,
    PatternLabel, RunError,
};

#[derive(Parser)]
#[command(
    name = "isac-sched",
    about = "Two-cell ISAC task scheduling experiments",
    version
)]
struct Cli {
    /// Config file (`key = value` lines); defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Master seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for data files.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Monte Carlo realization count override.
    #[arg(long, global = true)]
    realizations: Option<usize>,
    /// Individual config overrides, repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Detection-probability and SINR CDFs per scan-pattern family.
    Cdf,
    /// Tracking dwell-count distribution vs tracked targets.
    Dwell,
    /// Tracking-duration and throughput/search-rate trade-off curves.
    Tradeoff,
    /// Print the calibrated radar transmit power for both modes.
    Calibrate,
    /// Schedule one frame and print the subframe allocation.
    Schedule,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let mut cfg = match &cli.config {
        Some(path) => match ExperimentConfig::load(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        },
        None => ExperimentConfig::default(),
    };
    for assignment in &cli.overrides {
        if let Err(e) = cfg.apply_override(assignment) {
            eprintln!("error: {e}");
            return 1;
        }
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(n) = cli.realizations {
        cfg.n_realizations = n;
    }

    let result = match cli.command {
        Cmd::Cdf => cmd_cdf(&cfg, &cli.out),
        Cmd::Dwell => cmd_dwell(&cfg, &cli.out),
        Cmd::Tradeoff => cmd_tradeoff(&cfg, &cli.out),
        Cmd::Calibrate => cmd_calibrate(&cfg),
        Cmd::Schedule => cmd_schedule(&cfg),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_cdf(cfg: &ExperimentConfig, out: &Path) -> Result<(), RunError> {
    let results = run_cdf_experiment(cfg)?;
    let sinr_target = db_to_linear(cfg.sinr_target_db);
    for slice in &results.slices {
        println!(
            "N_l = {:>2}: D_t* = {}, D_s* = {}",
            slice.n_beams, slice.d_tracking, slice.d_search
        );
        for (p, label) in PatternLabel::ALL.iter().enumerate() {
            println!(
                "  {:<8} reliability: SINR >= {:.1} dB on {:.4} of probes, P_d >= {:.2} on {:.4}",
                label.file_tag(),
                cfg.sinr_target_db,
                slice.tracking_sinr[p].reliability(sinr_target),
                cfg.detection_target,
                slice.search_pdet[p].reliability(cfg.detection_target),
            );
        }
    }
    let meta = RunMeta::collect(cfg);
    for path in write_cdf(out, &results, &meta)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_dwell(cfg: &ExperimentConfig, out: &Path) -> Result<(), RunError> {
    let results = run_dwell_experiment(cfg)?;
    for slice in &results.slices {
        println!("N_l = {}:", slice.n_beams);
        for s in &slice.per_n_tracked {
            println!(
                "  N_t = {:>2}: mean D_t* = {:>6.3}, p99 = {:>4.1}, range [{}, {}]",
                s.n_tracked, s.mean, s.p99, s.min, s.max
            );
        }
    }
    let meta = RunMeta::collect(cfg);
    for path in write_dwell(out, &results, &meta)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_tradeoff(cfg: &ExperimentConfig, out: &Path) -> Result<(), RunError> {
    let results = run_tradeoff_experiment(cfg)?;
    for line in &results.throughput_lines {
        println!(
            "N_t = {:>2}: mean T_t = {:.4} s, D_s* = {}, mean sum SE = {:.2} bit/s/Hz",
            line.n_tracked, line.mean_t_tracking, line.d_search, line.mean_sum_se
        );
    }
    let meta = RunMeta::collect(cfg);
    for path in write_tradeoff(out, &results, &meta)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_calibrate(cfg: &ExperimentConfig) -> Result<(), RunError> {
    let layout = cfg.layout()?;
    let codebooks = cfg.codebooks(cfg.n_beams)?;
    let scene = cfg.scene(&layout, &codebooks);
    let base = cfg.radar_params()?;
    let p_sinr = calibrate_radar_power(
        CalibrationMode::Sinr,
        db_to_linear(cfg.sinr_target_db),
        &base,
        &scene,
        &codebooks,
        cfg.calibration_margin_db,
    )?;
    let p_det = calibrate_radar_power(
        CalibrationMode::Detection,
        cfg.detection_target,
        &base,
        &scene,
        &codebooks,
        cfg.calibration_margin_db,
    )?;
    let gamma_det = crate::radar::invert_detection_probability(
        cfg.detection_target,
        base.n_pulses,
        base.threshold,
    )?;
    println!(
        "N_l = {}, margin = {} dB, detection threshold tau = {:.4}",
        cfg.n_beams, cfg.calibration_margin_db, base.threshold
    );
    println!(
        "sinr mode      (Gamma >= {:.1} dB): p_r = {:.2} dBm",
        cfg.sinr_target_db,
        watts_to_dbm(p_sinr)
    );
    println!(
        "detection mode (P_d >= {:.2}, Gamma >= {:.2} dB): p_r = {:.2} dBm",
        cfg.detection_target,
        linear_to_db(gamma_det),
        watts_to_dbm(p_det)
    );
    Ok(())
}

fn cmd_schedule(cfg: &ExperimentConfig) -> Result<(), RunError> {
    let layout = cfg.layout()?;
    let codebooks = cfg.codebooks(cfg.n_beams)?;
    let scene = cfg.scene(&layout, &codebooks);
    let base = cfg.radar_params()?;
    // one frame serves both radar tasks, so take the stricter calibration
    let p_sinr = calibrate_radar_power(
        CalibrationMode::Sinr,
        db_to_linear(cfg.sinr_target_db),
        &base,
        &scene,
        &codebooks,
        cfg.calibration_margin_db,
    )?;
    let p_det = calibrate_radar_power(
        CalibrationMode::Detection,
        cfg.detection_target,
        &base,
        &scene,
        &codebooks,
        cfg.calibration_margin_db,
    )?;
    let radar = base.with_power(p_sinr.max(p_det));
    let comm = cfg.comm_params()?;

    let mut subset_rng = realization_rng(cfg.seed, "schedule/tracked", 0);
    let tracked_1 = runner::draw_tracked_subset(cfg.n_beams, cfg.n_tracked, &mut subset_rng);
    let tracked_2 = runner::draw_tracked_subset(cfg.n_beams, cfg.n_tracked, &mut subset_rng);
    let mut drop_rng = realization_rng(cfg.seed, "schedule/drop", 0);
    let drop = crate::geometry::drop_ues(&layout, cfg.ues_per_cell, cfg.ue_min_range_m, &mut drop_rng)?;

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
    let frame = schedule_frame(&req, &ctx, [&tracked_1, &tracked_2], &drop)?;

    println!(
        "p_r = {:.2} dBm, tracked beams: BS1 {:?}, BS2 {:?}",
        watts_to_dbm(radar.p_r_w),
        tracked_1,
        tracked_2
    );
    println!(
        "tracking: D_t* = {:>3} dwells, T_t = {:.4} s",
        frame.tracking_pattern.n_dwells(),
        frame.t_tracking_s
    );
    println!(
        "comm:     T_c = {:.4} s ({}), throughput {:.1} Mb/s",
        frame.t_comm_s,
        if frame.comm_scheduled {
            "scheduled"
        } else {
            "NOT scheduled"
        },
        frame.achieved_throughput_bps / 1e6
    );
    println!(
        "search:   D_s* = {:>3} dwells, T_s = {:.4} s, R_s = {:.3} scans/frame",
        frame.search_pattern.n_dwells(),
        frame.t_search_s,
        frame.search_rate
    );
    Ok(())
}
