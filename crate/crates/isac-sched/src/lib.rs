//! Simulator and scheduling library for two-cell integrated sensing and
//! communication (ISAC) networks.
//!
//! A shared MAC frame is time-multiplexed between three tasks, in priority
//! order: target tracking, uplink communication, and radar search. The radar
//! scan patterns assign one beamforming codebook entry (or silence) to every
//! base station per dwell interval; a binary-cost assignment problem selects
//! joint beam pairs so that per-target SINR or detection-probability
//! requirements hold under inter-cell interference.
//!
//! Module map:
//! - [`geometry`]: cell layout, virtual scatterers, UE drops
//! - [`codebook`]: Hamming-tapered array codebook and power pattern
//! - [`radar`]: range equations, radar SINR, detection statistics, calibration
//! - [`comm`]: uplink SINR, spectral efficiency, throughput bounds
//! - [`assignment`]: Hungarian solver plus an exhaustive test oracle
//! - [`scheduler`]: cost functions, scan-pattern optimization, frame assembly
//! - [`experiments`]: Monte Carlo harness, config parsing, CLI entry point

pub mod assignment;
pub mod codebook;
pub mod comm;
pub mod experiments;
pub mod gamma;
pub mod geometry;
pub mod radar;
pub mod scheduler;
pub mod units;

pub use codebook::{Codebook, BeamId, SILENT_BEAM};
pub use geometry::{CellLayout, Point, PolarPoint, RcsConfig, Scene, UeDrop};
pub use radar::RadarParams;
pub use comm::CommParams;
pub use scheduler::{FrameSchedule, ScanPattern, TaskRequirements};
