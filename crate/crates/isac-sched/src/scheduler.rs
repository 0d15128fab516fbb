//! Scan-pattern optimization and three-step frame assembly.
//!
//! Tracking is scheduled first (it is time-critical), then communication,
//! then search fills the remainder. Scan patterns pair one beam per BS per
//! dwell; pairs violating the radar requirement get cost 1 and the
//! assignment solver searches for a zero-cost perfect matching, adding
//! silent dwells one at a time until one exists.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::assignment::{hungarian, CostMatrix};
use crate::codebook::{BeamId, Codebook, SILENT_BEAM};
use crate::comm::{self, CommError, CommParams};
use crate::geometry::{CellLayout, Scene, UeDrop};
use crate::radar::{self, RadarParams};

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error(
        "no zero-cost pattern within {max_augment} silent-dwell augmentations \
         (best residual cost {residual}, blocking pairs {blocking:?})"
    )]
    Infeasible {
        max_augment: usize,
        residual: f64,
        /// Matched pairs that still violate the requirement in the last solve.
        blocking: Vec<(BeamId, BeamId)>,
    },
    #[error("tracking needs {t_tracking_s} s, more than the {frame_s} s frame")]
    TrackingOverrun { t_tracking_s: f64, frame_s: f64 },
    #[error("beam multisets are empty")]
    NoBeams,
    #[error(transparent)]
    Comm(#[from] CommError),
}

/// Why a scan pattern fails post-hoc verification.
#[derive(Debug, Error, PartialEq)]
pub enum PatternViolation {
    #[error("BS {bs} emits beam set {got:?}, required {required:?}")]
    Incomplete {
        bs: usize,
        got: Vec<BeamId>,
        required: Vec<BeamId>,
    },
    #[error("BS {bs} repeats beam {beam}")]
    Repeated { bs: usize, beam: BeamId },
    #[error("dwell {dwell} pair ({u}, {v}) has cost {cost}")]
    CostlyDwell {
        dwell: usize,
        u: BeamId,
        v: BeamId,
        cost: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Tracking,
    Search,
}

/// Ordered dwell list; each dwell assigns one beam id per BS (0 = silent).
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPattern {
    pub kind: PatternKind,
    pub dwells: Vec<[BeamId; 2]>,
}

impl ScanPattern {
    pub fn n_dwells(&self) -> usize {
        self.dwells.len()
    }

    /// Non-silent beams emitted by one BS, in dwell order.
    pub fn active_beams(&self, bs: usize) -> Vec<BeamId> {
        self.dwells
            .iter()
            .map(|d| d[bs])
            .filter(|&b| b != SILENT_BEAM)
            .collect()
    }
}

/// Inputs to the task scheduler.
#[derive(Debug, Clone)]
pub struct TaskRequirements {
    /// Targets tracked per cell.
    pub n_tracked: usize,
    /// Revisit rate per tracked target, Hz.
    pub tracking_update_rate_hz: f64,
    /// Radar SINR requirement for tracking echoes, linear.
    pub sinr_target: f64,
    /// Network throughput requirement, bits per second.
    pub throughput_target_bps: f64,
    /// Detection-probability requirement for search probes.
    pub detection_target: f64,
    /// False-alarm probability the detector threshold is set from.
    pub false_alarm_target: f64,
}

/// Everything the scheduler evaluates costs against.
pub struct SchedulingContext<'a> {
    pub scene: &'a Scene,
    pub layout: &'a CellLayout,
    pub codebooks: &'a [Codebook],
    pub radar: &'a RadarParams,
    pub comm: &'a CommParams,
}

/// One scheduled MAC frame.
#[derive(Debug, Clone)]
pub struct FrameSchedule {
    pub t_tracking_s: f64,
    pub t_comm_s: f64,
    pub t_search_s: f64,
    pub tracking_pattern: ScanPattern,
    pub search_pattern: ScanPattern,
    /// Full scans per frame the search subframe sustains.
    pub search_rate: f64,
    pub achieved_throughput_bps: f64,
    /// False when the throughput target did not fit after tracking.
    pub comm_scheduled: bool,
}

/// Binary cost of a tracking dwell: 0 iff every active BS reaches the SINR
/// target at its own mapped scatterer. A silent BS imposes no constraint;
/// the all-silent pair is a wasted dwell and costs 1.
pub fn tracking_cost(
    params: &RadarParams,
    scene: &Scene,
    layout: &CellLayout,
    codebooks: &[Codebook],
    u: BeamId,
    v: BeamId,
    sinr_target: f64,
) -> f64 {
    if u == SILENT_BEAM && v == SILENT_BEAM {
        return 1.0;
    }
    let beams = [u, v];
    for (bs, &beam) in beams.iter().enumerate() {
        if beam == SILENT_BEAM {
            continue;
        }
        let target = scene.mapped_index(bs, beam);
        if radar::radar_sinr(params, scene, layout, codebooks, &beams, bs, target) < sinr_target {
            return 1.0;
        }
    }
    0.0
}

/// Binary cost of a search dwell: the SINR test is replaced by the gated
/// detection probability reaching `detection_target`.
pub fn search_cost(
    params: &RadarParams,
    scene: &Scene,
    layout: &CellLayout,
    codebooks: &[Codebook],
    u: BeamId,
    v: BeamId,
    detection_target: f64,
) -> f64 {
    if u == SILENT_BEAM && v == SILENT_BEAM {
        return 1.0;
    }
    let beams = [u, v];
    for (bs, &beam) in beams.iter().enumerate() {
        if beam == SILENT_BEAM {
            continue;
        }
        let target = scene.mapped_index(bs, beam);
        let gamma = radar::radar_sinr(params, scene, layout, codebooks, &beams, bs, target);
        let pd = radar::gated_detection_probability(gamma, params.n_pulses, params.threshold);
        if pd < detection_target {
            return 1.0;
        }
    }
    0.0
}

/// Minimizes the dwell count subject to a zero-cost matching existing.
///
/// The beam multisets are balanced with silent entries, the assignment is
/// solved, and while the optimal total cost is positive one silent beam is
/// appended to each side and the solve repeats. Matched all-silent pairs
/// are dropped from the emitted pattern.
///
/// `cost` must return 1.0 for the (silent, silent) pair. `max_augment`
/// defaults to the larger initial multiset size; beyond that every real
/// beam could already hold a private dwell, so remaining failures are
/// per-beam infeasibilities.
pub fn optimize_scan_pattern(
    kind: PatternKind,
    beams_1: &[BeamId],
    beams_2: &[BeamId],
    cost: impl Fn(BeamId, BeamId) -> f64,
    max_augment: Option<usize>,
) -> Result<ScanPattern, ScheduleError> {
    if beams_1.is_empty() && beams_2.is_empty() {
        return Err(ScheduleError::NoBeams);
    }
    let mut u: Vec<BeamId> = beams_1.to_vec();
    let mut v: Vec<BeamId> = beams_2.to_vec();
    let max_augment = max_augment.unwrap_or_else(|| u.len().max(v.len()));
    while u.len() < v.len() {
        u.push(SILENT_BEAM);
    }
    while v.len() < u.len() {
        v.push(SILENT_BEAM);
    }

    let mut augmentations = 0;
    let mut last_dwells = 0;
    loop {
        let matrix = CostMatrix::from_fn(u.len(), |r, c| cost(u[r], v[c]))
            .expect("cost function returned invalid value");
        let matching = hungarian(&matrix);
        if matching.total_cost == 0.0 {
            let dwells: Vec<[BeamId; 2]> = matching
                .pairs()
                .map(|(r, c)| [u[r], v[c]])
                .filter(|d| *d != [SILENT_BEAM, SILENT_BEAM])
                .collect();
            debug_assert!(dwells.len() >= last_dwells);
            return Ok(ScanPattern { kind, dwells });
        }
        last_dwells = last_dwells.max(u.len());
        augmentations += 1;
        if augmentations > max_augment {
            let blocking = matching
                .pairs()
                .filter(|&(r, c)| matrix.get(r, c) > 0.0)
                .map(|(r, c)| (u[r], v[c]))
                .collect();
            return Err(ScheduleError::Infeasible {
                max_augment,
                residual: matching.total_cost,
                blocking,
            });
        }
        u.push(SILENT_BEAM);
        v.push(SILENT_BEAM);
    }
}

/// Reference scan patterns the optimized one is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    /// Both BSs step through their beams sorted by look direction, in
    /// lockstep.
    InPhase,
    /// Each BS permutes its beams independently.
    Random,
    /// The BSs take turns; the idle one stays silent, so D = |U| + |V|.
    Orthogonal,
}

/// Builds a baseline pattern. The RNG is only consulted for
/// [`BaselineKind::Random`].
pub fn baseline_pattern<R: Rng + ?Sized>(
    baseline: BaselineKind,
    kind: PatternKind,
    beams_1: &[BeamId],
    beams_2: &[BeamId],
    codebook: &Codebook,
    rng: &mut R,
) -> ScanPattern {
    let mut u: Vec<BeamId> = beams_1.to_vec();
    let mut v: Vec<BeamId> = beams_2.to_vec();
    let dwells = match baseline {
        BaselineKind::InPhase => {
            u.sort_by(|&a, &b| codebook.look_dir(a).total_cmp(&codebook.look_dir(b)));
            v.sort_by(|&a, &b| codebook.look_dir(a).total_cmp(&codebook.look_dir(b)));
            zip_padded(&u, &v)
        }
        BaselineKind::Random => {
            u.shuffle(rng);
            v.shuffle(rng);
            zip_padded(&u, &v)
        }
        BaselineKind::Orthogonal => u
            .iter()
            .map(|&b| [b, SILENT_BEAM])
            .chain(v.iter().map(|&b| [SILENT_BEAM, b]))
            .collect(),
    };
    ScanPattern { kind, dwells }
}

fn zip_padded(u: &[BeamId], v: &[BeamId]) -> Vec<[BeamId; 2]> {
    (0..u.len().max(v.len()))
        .map(|d| {
            [
                u.get(d).copied().unwrap_or(SILENT_BEAM),
                v.get(d).copied().unwrap_or(SILENT_BEAM),
            ]
        })
        .collect()
}

/// Tracking subframe duration: floor(T_f R_t) revisits of D_t dwells.
pub fn tracking_subframe(frame_s: f64, update_rate_hz: f64, n_dwells: usize, dwell_time_s: f64) -> f64 {
    (frame_s * update_rate_hz).floor() * n_dwells as f64 * dwell_time_s
}

/// Search rate in full scans per frame for a search subframe of `t_search_s`.
pub fn search_rate(t_search_s: f64, n_dwells: usize, dwell_time_s: f64) -> f64 {
    debug_assert!(n_dwells >= 1 && dwell_time_s > 0.0);
    t_search_s / (n_dwells as f64 * dwell_time_s)
}

/// Re-verifies a pattern against the constraints it was built under:
/// per-BS completeness, per-BS uniqueness, and (when a cost function is
/// given) zero cost for every dwell.
pub fn verify_pattern(
    pattern: &ScanPattern,
    required: [&[BeamId]; 2],
    cost: Option<&dyn Fn(BeamId, BeamId) -> f64>,
) -> Result<(), PatternViolation> {
    for (bs, beams) in required.iter().enumerate() {
        let mut got = pattern.active_beams(bs);
        let mut sorted = got.clone();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(PatternViolation::Repeated { bs, beam: pair[0] });
            }
        }
        let mut want = beams.to_vec();
        want.sort_unstable();
        if sorted != want {
            got.sort_unstable();
            return Err(PatternViolation::Incomplete {
                bs,
                got,
                required: want,
            });
        }
    }
    if let Some(cost) = cost {
        for (d, dwell) in pattern.dwells.iter().enumerate() {
            let c = cost(dwell[0], dwell[1]);
            if c != 0.0 {
                return Err(PatternViolation::CostlyDwell {
                    dwell: d,
                    u: dwell[0],
                    v: dwell[1],
                    cost: c,
                });
            }
        }
    }
    Ok(())
}

/// Runs the three-step scheduler: tracking pattern and subframe, then the
/// communication subframe, then search over the full codebooks in the time
/// that remains.
///
/// Tracking infeasibility (the pattern cannot be built, or its subframe
/// exceeds the frame) is an error. A throughput target that does not fit is
/// not: the frame is still valid with `comm_scheduled == false` and the
/// slack goes to search.
pub fn schedule_frame(
    req: &TaskRequirements,
    ctx: &SchedulingContext<'_>,
    tracked: [&[BeamId]; 2],
    drop: &UeDrop,
) -> Result<FrameSchedule, ScheduleError> {
    let frame_s = ctx.comm.frame_s;

    // a) tracking
    let tracking_pattern = if tracked[0].is_empty() && tracked[1].is_empty() {
        ScanPattern {
            kind: PatternKind::Tracking,
            dwells: Vec::new(),
        }
    } else {
        optimize_scan_pattern(
            PatternKind::Tracking,
            tracked[0],
            tracked[1],
            |u, v| {
                tracking_cost(ctx.radar, ctx.scene, ctx.layout, ctx.codebooks, u, v, req.sinr_target)
            },
            None,
        )?
    };
    let t_tracking_s = tracking_subframe(
        frame_s,
        req.tracking_update_rate_hz,
        tracking_pattern.n_dwells(),
        ctx.radar.dwell_time_s,
    );
    if t_tracking_s > frame_s {
        return Err(ScheduleError::TrackingOverrun {
            t_tracking_s,
            frame_s,
        });
    }

    // b) communication
    let sum_se = comm::network_sum_se(drop, ctx.comm);
    let (t_comm_s, comm_scheduled) = match comm::comm_subframe(req.throughput_target_bps, sum_se, ctx.comm)
    {
        Ok(needed) if frame_s - t_tracking_s >= needed => (needed, true),
        Ok(_) | Err(CommError::InfeasibleThroughput { .. }) => (0.0, false),
        Err(e) => return Err(e.into()),
    };

    // c) search over the full codebooks
    let all_beams: Vec<BeamId> = ctx.codebooks[0].beam_ids().collect();
    let search_pattern = optimize_scan_pattern(
        PatternKind::Search,
        &all_beams,
        &all_beams,
        |u, v| {
            search_cost(ctx.radar, ctx.scene, ctx.layout, ctx.codebooks, u, v, req.detection_target)
        },
        None,
    )?;
    let t_search_s = (frame_s - t_tracking_s - t_comm_s).max(0.0);
    let rate = search_rate(t_search_s, search_pattern.n_dwells(), ctx.radar.dwell_time_s);
    let achieved = comm::throughput(sum_se, t_comm_s, ctx.comm);

    Ok(FrameSchedule {
        t_tracking_s,
        t_comm_s,
        t_search_s,
        tracking_pattern,
        search_pattern,
        search_rate: rate,
        achieved_throughput_bps: achieved,
        comm_scheduled,
    })
}
