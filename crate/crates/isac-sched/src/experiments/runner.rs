//! Monte Carlo experiment runners.
//!
//! Realizations are seeded by a counter-based split of the master seed
//! (one ChaCha stream per realization), so results do not depend on
//! evaluation order.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codebook::{BeamId, CodebookError, SILENT_BEAM};
use crate::comm::{self, CommError};
use crate::geometry::{drop_ues, GeometryError};
use crate::radar::{calibrate_radar_power, CalibrationMode, RadarError};
use crate::scheduler::{
    self, optimize_scan_pattern, verify_pattern, PatternKind, PatternViolation, ScanPattern,
    ScheduleError,
};
use crate::units::db_to_linear;

use super::config::{fnv1a, ConfigError, ExperimentConfig};
use super::stats::EmpiricalDistribution;
use super::tables::PairTables;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Codebook(#[from] CodebookError),
    #[error(transparent)]
    Radar(#[from] RadarError),
    #[error(transparent)]
    Comm(#[from] CommError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("emitted pattern failed re-verification: {0}")]
    Pattern(#[from] PatternViolation),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// CLI exit code class: 2 for scheduling infeasibility, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Schedule(_) => 2,
            _ => 1,
        }
    }
}

/// One independent RNG per (label, realization), derived from the master
/// seed. Identical regardless of how work is ordered across workers.
pub fn realization_rng(seed: u64, label: &str, realization: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(label.as_bytes()));
    rng.set_stream(realization);
    rng
}

/// The three scan-pattern families every experiment compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternLabel {
    Proposed,
    InPhase,
    Random,
}

impl PatternLabel {
    pub const ALL: [PatternLabel; 3] = [
        PatternLabel::Proposed,
        PatternLabel::InPhase,
        PatternLabel::Random,
    ];

    pub fn file_tag(self) -> &'static str {
        match self {
            PatternLabel::Proposed => "proposed",
            PatternLabel::InPhase => "inphase",
            PatternLabel::Random => "random",
        }
    }
}

/// Everything built once per (codebook size, calibration mode).
struct Bench {
    tables: PairTables,
    full_beams: Vec<BeamId>,
}

impl Bench {
    fn build(cfg: &ExperimentConfig, n_beams: usize, mode: CalibrationMode) -> Result<Self, RunError> {
        let layout = cfg.layout()?;
        let codebooks = cfg.codebooks(n_beams)?;
        let scene = cfg.scene(&layout, &codebooks);
        let base = cfg.radar_params()?;
        let requirement = match mode {
            CalibrationMode::Sinr => db_to_linear(cfg.sinr_target_db),
            CalibrationMode::Detection => cfg.detection_target,
        };
        let p_r = calibrate_radar_power(
            mode,
            requirement,
            &base,
            &scene,
            &codebooks,
            cfg.calibration_margin_db,
        )?;
        let params = base.with_power(p_r);
        let tables = PairTables::build(&params, &scene, &layout, &codebooks);
        Ok(Self {
            tables,
            full_beams: (1..=n_beams).collect(),
        })
    }
}

/// Per-dwell metric samples of a pattern: one sample per (dwell, active BS).
fn pattern_samples(pattern: &ScanPattern, metric: &impl Fn(usize, BeamId, BeamId) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * pattern.dwells.len());
    for &[u, v] in &pattern.dwells {
        if u != SILENT_BEAM {
            out.push(metric(0, u, v));
        }
        if v != SILENT_BEAM {
            out.push(metric(1, u, v));
        }
    }
    out
}

/// CDF experiment results for one codebook size.
pub struct CdfSlice {
    pub n_beams: usize,
    /// Dwell count of the optimized search pattern.
    pub d_search: usize,
    /// Dwell count of the optimized tracking pattern.
    pub d_tracking: usize,
    /// Radar SINR samples (linear) under the tracking patterns.
    pub tracking_sinr: [EmpiricalDistribution; 3],
    /// Detection-probability samples under the search patterns.
    pub search_pdet: [EmpiricalDistribution; 3],
}

pub struct CdfResults {
    pub slices: Vec<CdfSlice>,
}

/// Per-dwell detection probability and radar SINR under the proposed,
/// in-phase, and random scan patterns, per configured codebook size.
///
/// The proposed and in-phase patterns cover the full codebook and are
/// deterministic, so their sample sets are computed once; the random
/// baseline redraws its permutations every realization.
pub fn run_cdf_experiment(cfg: &ExperimentConfig) -> Result<CdfResults, RunError> {
    let sinr_target = db_to_linear(cfg.sinr_target_db);
    let mut slices = Vec::new();
    for &n_beams in &cfg.beam_counts {
        let track = Bench::build(cfg, n_beams, CalibrationMode::Sinr)?;
        let search = Bench::build(cfg, n_beams, CalibrationMode::Detection)?;
        let beams = &track.full_beams;

        let track_cost = |u: BeamId, v: BeamId| track.tables.tracking_cost(u, v, sinr_target);
        let search_cost = |u: BeamId, v: BeamId| search.tables.search_cost(u, v, cfg.detection_target);

        let proposed_track =
            optimize_scan_pattern(PatternKind::Tracking, beams, beams, track_cost, None)?;
        verify_pattern(&proposed_track, [beams, beams], Some(&track_cost))?;
        let proposed_search =
            optimize_scan_pattern(PatternKind::Search, beams, beams, search_cost, None)?;
        verify_pattern(&proposed_search, [beams, beams], Some(&search_cost))?;

        let sinr_metric = |rx: usize, u: BeamId, v: BeamId| track.tables.sinr(rx, u, v);
        let pdet_metric = |rx: usize, u: BeamId, v: BeamId| search.tables.detection(rx, u, v);

        // lockstep over the full codebook pairs each look with itself
        let mut dummy = ChaCha8Rng::seed_from_u64(0);
        let cb = cfg.codebooks(n_beams)?.remove(0);
        let inphase_track = scheduler::baseline_pattern(
            scheduler::BaselineKind::InPhase,
            PatternKind::Tracking,
            beams,
            beams,
            &cb,
            &mut dummy,
        );
        let inphase_search = ScanPattern {
            kind: PatternKind::Search,
            dwells: inphase_track.dwells.clone(),
        };

        let mut random_sinr = Vec::with_capacity(2 * n_beams * cfg.n_realizations);
        let mut random_pdet = Vec::with_capacity(2 * n_beams * cfg.n_realizations);
        let label = format!("cdf/{n_beams}");
        for r in 0..cfg.n_realizations {
            let mut rng = realization_rng(cfg.seed, &label, r as u64);
            for (kind, out, metric) in [
                (
                    PatternKind::Tracking,
                    &mut random_sinr,
                    &sinr_metric as &dyn Fn(usize, BeamId, BeamId) -> f64,
                ),
                (PatternKind::Search, &mut random_pdet, &pdet_metric),
            ] {
                let pattern = scheduler::baseline_pattern(
                    scheduler::BaselineKind::Random,
                    kind,
                    beams,
                    beams,
                    &cb,
                    &mut rng,
                );
                for &[u, v] in &pattern.dwells {
                    if u != SILENT_BEAM {
                        out.push(metric(0, u, v));
                    }
                    if v != SILENT_BEAM {
                        out.push(metric(1, u, v));
                    }
                }
            }
        }

        slices.push(CdfSlice {
            n_beams,
            d_search: proposed_search.n_dwells(),
            d_tracking: proposed_track.n_dwells(),
            tracking_sinr: [
                EmpiricalDistribution::from_samples(pattern_samples(&proposed_track, &sinr_metric)),
                EmpiricalDistribution::from_samples(pattern_samples(&inphase_track, &sinr_metric)),
                EmpiricalDistribution::from_samples(random_sinr),
            ],
            search_pdet: [
                EmpiricalDistribution::from_samples(pattern_samples(&proposed_search, &pdet_metric)),
                EmpiricalDistribution::from_samples(pattern_samples(&inphase_search, &pdet_metric)),
                EmpiricalDistribution::from_samples(random_pdet),
            ],
        });
    }
    Ok(CdfResults { slices })
}

pub struct DwellStats {
    pub n_tracked: usize,
    pub mean: f64,
    pub p99: f64,
    pub min: usize,
    pub max: usize,
}

pub struct DwellSlice {
    pub n_beams: usize,
    pub per_n_tracked: Vec<DwellStats>,
}

pub struct DwellResults {
    pub slices: Vec<DwellSlice>,
    pub max_tracked: usize,
}

/// Draws a sorted uniformly random subset of `n_tracked` beam ids.
pub fn draw_tracked_subset<R: Rng + ?Sized>(
    n_beams: usize,
    n_tracked: usize,
    rng: &mut R,
) -> Vec<BeamId> {
    let mut ids: Vec<BeamId> = index::sample(rng, n_beams, n_tracked)
        .into_iter()
        .map(|i| i + 1)
        .collect();
    ids.sort_unstable();
    ids
}

/// Distribution of the optimized tracking dwell count over random tracked
/// subsets, swept over the number of tracked targets per cell.
pub fn run_dwell_experiment(cfg: &ExperimentConfig) -> Result<DwellResults, RunError> {
    let sinr_target = db_to_linear(cfg.sinr_target_db);
    let mut slices = Vec::new();
    for &n_beams in &cfg.dwell_beam_counts {
        let bench = Bench::build(cfg, n_beams, CalibrationMode::Sinr)?;
        let cost = |u: BeamId, v: BeamId| bench.tables.tracking_cost(u, v, sinr_target);
        let mut per_n_tracked = Vec::new();
        for n_tracked in 1..=cfg.max_tracked {
            let label = format!("dwell/{n_beams}/{n_tracked}");
            let mut counts = Vec::with_capacity(cfg.n_realizations);
            for r in 0..cfg.n_realizations {
                let mut rng = realization_rng(cfg.seed, &label, r as u64);
                let u = draw_tracked_subset(n_beams, n_tracked, &mut rng);
                let v = draw_tracked_subset(n_beams, n_tracked, &mut rng);
                let pattern =
                    optimize_scan_pattern(PatternKind::Tracking, &u, &v, cost, None)?;
                debug_assert!(verify_pattern(&pattern, [&u, &v], Some(&cost)).is_ok());
                counts.push(pattern.n_dwells());
            }
            let dist =
                EmpiricalDistribution::from_samples(counts.iter().map(|&d| d as f64).collect());
            per_n_tracked.push(DwellStats {
                n_tracked,
                mean: dist.mean(),
                p99: dist.quantile(0.99),
                min: dist.min() as usize,
                max: dist.max() as usize,
            });
        }
        slices.push(DwellSlice {
            n_beams,
            per_n_tracked,
        });
    }
    Ok(DwellResults {
        slices,
        max_tracked: cfg.max_tracked,
    })
}

pub struct DurationCurve {
    pub n_tracked: usize,
    pub proposed: bool,
    /// (update rate in Hz, tracking subframe in seconds)
    pub points: Vec<(f64, f64)>,
}

pub struct ThroughputLine {
    pub n_tracked: usize,
    pub mean_sum_se: f64,
    pub d_search: usize,
    pub mean_t_tracking: f64,
    /// (search rate in scans/frame, mean throughput in bit/s)
    pub points: Vec<(f64, f64)>,
}

pub struct TradeoffResults {
    pub duration_curves: Vec<DurationCurve>,
    pub throughput_lines: Vec<ThroughputLine>,
}

/// (a) Tracking subframe duration vs update rate, proposed vs orthogonal.
/// (b) Mean throughput vs search rate at the configured update rate, with
/// the frame remainder split between communication and search.
pub fn run_tradeoff_experiment(cfg: &ExperimentConfig) -> Result<TradeoffResults, RunError> {
    let sinr_target = db_to_linear(cfg.sinr_target_db);
    let track = Bench::build(cfg, cfg.tradeoff_tracking_beams, CalibrationMode::Sinr)?;
    let track_cost = |u: BeamId, v: BeamId| track.tables.tracking_cost(u, v, sinr_target);

    let search = Bench::build(cfg, cfg.tradeoff_search_beams, CalibrationMode::Detection)?;
    let search_cost = |u: BeamId, v: BeamId| search.tables.search_cost(u, v, cfg.detection_target);
    let proposed_search = optimize_scan_pattern(
        PatternKind::Search,
        &search.full_beams,
        &search.full_beams,
        search_cost,
        None,
    )?;
    let d_search = proposed_search.n_dwells();

    // shared UE drops so lines for different N_t differ only through T_t
    let layout = cfg.layout()?;
    let comm_params = cfg.comm_params()?;
    let mut sum_se_acc = 0.0;
    for r in 0..cfg.n_realizations {
        let mut rng = realization_rng(cfg.seed, "tradeoff/drops", r as u64);
        let drop = drop_ues(&layout, cfg.ues_per_cell, cfg.ue_min_range_m, &mut rng)?;
        sum_se_acc += comm::network_sum_se(&drop, &comm_params);
    }
    let mean_sum_se = sum_se_acc / cfg.n_realizations as f64;

    let mut duration_curves = Vec::new();
    let mut throughput_lines = Vec::new();
    for &n_tracked in &cfg.tradeoff_tracked {
        let label = format!("tradeoff/track/{n_tracked}");
        let mut mean_d = 0.0;
        for r in 0..cfg.n_realizations {
            let mut rng = realization_rng(cfg.seed, &label, r as u64);
            let u = draw_tracked_subset(cfg.tradeoff_tracking_beams, n_tracked, &mut rng);
            let v = draw_tracked_subset(cfg.tradeoff_tracking_beams, n_tracked, &mut rng);
            let pattern = optimize_scan_pattern(PatternKind::Tracking, &u, &v, track_cost, None)?;
            mean_d += pattern.n_dwells() as f64;
        }
        mean_d /= cfg.n_realizations as f64;

        let rates = 1..=cfg.max_update_rate_hz;
        duration_curves.push(DurationCurve {
            n_tracked,
            proposed: true,
            points: rates
                .clone()
                .map(|r| {
                    let revisits = (cfg.frame_s * r as f64).floor();
                    (r as f64, revisits * mean_d * cfg.dwell_time_s)
                })
                .collect(),
        });
        duration_curves.push(DurationCurve {
            n_tracked,
            proposed: false,
            points: rates
                .map(|r| {
                    let revisits = (cfg.frame_s * r as f64).floor();
                    let d_orth = (2 * n_tracked) as f64;
                    (r as f64, revisits * d_orth * cfg.dwell_time_s)
                })
                .collect(),
        });

        // throughput vs search rate at the configured update rate
        let revisits = (cfg.frame_s * cfg.tracking_update_rate_hz).floor();
        let mean_t_tracking = revisits * mean_d * cfg.dwell_time_s;
        let budget = cfg.frame_s - mean_t_tracking;
        let mut points = Vec::new();
        if budget > 0.0 {
            for i in 0..cfg.tradeoff_points {
                let f = i as f64 / (cfg.tradeoff_points - 1) as f64;
                let t_search = budget * f;
                let t_comm = budget * (1.0 - f);
                let r_s = scheduler::search_rate(t_search, d_search, cfg.dwell_time_s);
                let s = t_comm / cfg.frame_s * cfg.bandwidth_hz * mean_sum_se;
                points.push((r_s, s));
            }
        }
        throughput_lines.push(ThroughputLine {
            n_tracked,
            mean_sum_se,
            d_search,
            mean_t_tracking,
            points,
        });
    }
    Ok(TradeoffResults {
        duration_curves,
        throughput_lines,
    })
}
