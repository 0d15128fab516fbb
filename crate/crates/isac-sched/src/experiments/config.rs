//! Line-oriented `key = value` experiment configuration.
//!
//! Every key has a default, so an empty file (or no file) runs the standard
//! setup. Unknown keys and malformed values are rejected with their line
//! number.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::codebook::{Codebook, CodebookError};
use crate::comm::{CommError, CommParams};
use crate::geometry::{
    build_layout, place_virtual_scatterers, CellLayout, GeometryError, RcsConfig, Scene,
    ScattererPlacement,
};
use crate::radar::{RadarError, RadarParams};
use crate::units::dbm_to_watts;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{location}: unknown key `{key}`")]
    UnknownKey { key: String, location: String },
    #[error("{location}: bad value `{value}` for `{key}`: expected {expected}")]
    BadValue {
        key: String,
        value: String,
        expected: &'static str,
        location: String,
    },
    #[error("{location}: expected `key = value`, got `{text}`")]
    BadSyntax { text: String, location: String },
}

/// All experiment knobs with their defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub cell_radius_m: f64,
    pub bs_separation_m: f64,
    pub n_antennas: usize,
    pub wavelength_m: f64,
    pub bandwidth_hz: f64,
    pub frame_s: f64,
    pub ues_per_cell: usize,
    pub ue_power_dbm: f64,
    pub ue_min_range_m: f64,
    pub dwell_time_s: f64,
    pub n_pulses: u32,
    pub detection_target: f64,
    pub false_alarm_target: f64,
    pub sinr_target_db: f64,
    pub noise_psd_dbm_hz: f64,
    pub rcs_monostatic_m2: f64,
    pub rcs_bistatic_m2: f64,
    pub calibration_margin_db: f64,
    pub scatterer_placement: ScattererPlacement,
    pub n_realizations: usize,
    pub seed: u64,
    /// Codebook sizes swept by the CDF experiment.
    pub beam_counts: Vec<usize>,
    /// Codebook sizes swept by the dwell-interval experiment.
    pub dwell_beam_counts: Vec<usize>,
    /// The dwell experiment sweeps 1..=max_tracked targets per cell.
    pub max_tracked: usize,
    /// The duration trade-off sweeps 1..=max_update_rate_hz.
    pub max_update_rate_hz: usize,
    /// Codebook size for the `schedule` and `calibrate` commands.
    pub n_beams: usize,
    pub n_tracked: usize,
    pub tracking_update_rate_hz: f64,
    pub throughput_target_bps: f64,
    pub tradeoff_tracked: Vec<usize>,
    pub tradeoff_search_beams: usize,
    pub tradeoff_tracking_beams: usize,
    pub tradeoff_points: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            cell_radius_m: 100.0,
            bs_separation_m: 200.0,
            n_antennas: 29,
            wavelength_m: 0.05,
            bandwidth_hz: 10e6,
            frame_s: 1.0,
            ues_per_cell: 10,
            ue_power_dbm: 23.0,
            ue_min_range_m: 1.0,
            dwell_time_s: 13.3e-3,
            n_pulses: 20,
            detection_target: 0.9,
            false_alarm_target: 1e-6,
            sinr_target_db: 10.0,
            noise_psd_dbm_hz: -174.0,
            rcs_monostatic_m2: 1.0,
            rcs_bistatic_m2: 1.0,
            calibration_margin_db: 3.0,
            scatterer_placement: ScattererPlacement::Boresight,
            n_realizations: 10_000,
            seed: 1,
            beam_counts: vec![12, 24, 72],
            dwell_beam_counts: vec![24, 72],
            max_tracked: 12,
            max_update_rate_hz: 10,
            n_beams: 72,
            n_tracked: 8,
            tracking_update_rate_hz: 5.0,
            throughput_target_bps: 100e6,
            tradeoff_tracked: vec![1, 4, 8],
            tradeoff_search_beams: 12,
            tradeoff_tracking_beams: 72,
            tradeoff_points: 21,
        }
    }
}

impl ExperimentConfig {
    /// Parses a config file on top of the defaults.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_str(&text)
    }

    /// Parses `key = value` lines (with `#` comments) on top of the defaults.
    pub fn parse_str(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let location = format!("line {}", idx + 1);
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::BadSyntax {
                text: line.to_string(),
                location: location.clone(),
            })?;
            cfg.set_key(key.trim(), value.trim(), &location)?;
        }
        Ok(cfg)
    }

    /// Applies one `key=value` override (a CLI `--set` argument).
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let location = "override".to_string();
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| ConfigError::BadSyntax {
                text: assignment.to_string(),
                location: location.clone(),
            })?;
        self.set_key(key.trim(), value.trim(), &location)
    }

    fn set_key(&mut self, key: &str, value: &str, location: &str) -> Result<(), ConfigError> {
        fn bad(key: &str, value: &str, expected: &'static str, location: &str) -> ConfigError {
            ConfigError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
                expected,
                location: location.to_string(),
            }
        }
        macro_rules! num {
            ($ty:ty, $expected:literal) => {
                value
                    .parse::<$ty>()
                    .map_err(|_| bad(key, value, $expected, location))?
            };
        }
        match key {
            "cell_radius_m" => self.cell_radius_m = num!(f64, "a number"),
            "bs_separation_m" => self.bs_separation_m = num!(f64, "a number"),
            "n_antennas" => self.n_antennas = num!(usize, "a positive integer"),
            "wavelength_m" => self.wavelength_m = num!(f64, "a number"),
            "bandwidth_hz" => self.bandwidth_hz = num!(f64, "a number"),
            "frame_s" => self.frame_s = num!(f64, "a number"),
            "ues_per_cell" => self.ues_per_cell = num!(usize, "a positive integer"),
            "ue_power_dbm" => self.ue_power_dbm = num!(f64, "a number"),
            "ue_min_range_m" => self.ue_min_range_m = num!(f64, "a number"),
            "dwell_time_s" => self.dwell_time_s = num!(f64, "a number"),
            "n_pulses" => self.n_pulses = num!(u32, "a positive integer"),
            "detection_target" => self.detection_target = num!(f64, "a probability"),
            "false_alarm_target" => self.false_alarm_target = num!(f64, "a probability"),
            "sinr_target_db" => self.sinr_target_db = num!(f64, "a number"),
            "noise_psd_dbm_hz" => self.noise_psd_dbm_hz = num!(f64, "a number"),
            "rcs_monostatic_m2" => self.rcs_monostatic_m2 = num!(f64, "a number"),
            "rcs_bistatic_m2" => self.rcs_bistatic_m2 = num!(f64, "a number"),
            "calibration_margin_db" => self.calibration_margin_db = num!(f64, "a number"),
            "scatterer_placement" => {
                self.scatterer_placement = match value {
                    "boresight" => ScattererPlacement::Boresight,
                    "hpbw-edge" => ScattererPlacement::HalfPowerEdge,
                    _ => return Err(bad(key, value, "`boresight` or `hpbw-edge`", location)),
                }
            }
            "n_realizations" => self.n_realizations = num!(usize, "a positive integer"),
            "seed" => self.seed = num!(u64, "an unsigned integer"),
            "beam_counts" => self.beam_counts = parse_list(key, value, location)?,
            "dwell_beam_counts" => self.dwell_beam_counts = parse_list(key, value, location)?,
            "max_tracked" => self.max_tracked = num!(usize, "a positive integer"),
            "max_update_rate_hz" => self.max_update_rate_hz = num!(usize, "a positive integer"),
            "n_beams" => self.n_beams = num!(usize, "a positive integer"),
            "n_tracked" => self.n_tracked = num!(usize, "a positive integer"),
            "tracking_update_rate_hz" => self.tracking_update_rate_hz = num!(f64, "a number"),
            "throughput_target_bps" => self.throughput_target_bps = num!(f64, "a number"),
            "tradeoff_tracked" => self.tradeoff_tracked = parse_list(key, value, location)?,
            "tradeoff_search_beams" => self.tradeoff_search_beams = num!(usize, "a positive integer"),
            "tradeoff_tracking_beams" => {
                self.tradeoff_tracking_beams = num!(usize, "a positive integer")
            }
            "tradeoff_points" => self.tradeoff_points = num!(usize, "an integer >= 2"),
            _ => {
                return Err(ConfigError::UnknownKey {
                    key: key.to_string(),
                    location: location.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Canonical listing of every key, used for hashing and reproducibility
    /// headers.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        let list = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(s, "bandwidth_hz = {}", self.bandwidth_hz);
        let _ = writeln!(s, "beam_counts = {}", list(&self.beam_counts));
        let _ = writeln!(s, "bs_separation_m = {}", self.bs_separation_m);
        let _ = writeln!(s, "calibration_margin_db = {}", self.calibration_margin_db);
        let _ = writeln!(s, "cell_radius_m = {}", self.cell_radius_m);
        let _ = writeln!(s, "detection_target = {}", self.detection_target);
        let _ = writeln!(s, "dwell_beam_counts = {}", list(&self.dwell_beam_counts));
        let _ = writeln!(s, "dwell_time_s = {}", self.dwell_time_s);
        let _ = writeln!(s, "false_alarm_target = {}", self.false_alarm_target);
        let _ = writeln!(s, "frame_s = {}", self.frame_s);
        let _ = writeln!(s, "max_tracked = {}", self.max_tracked);
        let _ = writeln!(s, "max_update_rate_hz = {}", self.max_update_rate_hz);
        let _ = writeln!(s, "n_antennas = {}", self.n_antennas);
        let _ = writeln!(s, "n_beams = {}", self.n_beams);
        let _ = writeln!(s, "n_pulses = {}", self.n_pulses);
        let _ = writeln!(s, "n_realizations = {}", self.n_realizations);
        let _ = writeln!(s, "n_tracked = {}", self.n_tracked);
        let _ = writeln!(s, "noise_psd_dbm_hz = {}", self.noise_psd_dbm_hz);
        let _ = writeln!(s, "rcs_bistatic_m2 = {}", self.rcs_bistatic_m2);
        let _ = writeln!(s, "rcs_monostatic_m2 = {}", self.rcs_monostatic_m2);
        let _ = writeln!(
            s,
            "scatterer_placement = {}",
            match self.scatterer_placement {
                ScattererPlacement::Boresight => "boresight",
                ScattererPlacement::HalfPowerEdge => "hpbw-edge",
            }
        );
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "sinr_target_db = {}", self.sinr_target_db);
        let _ = writeln!(s, "throughput_target_bps = {}", self.throughput_target_bps);
        let _ = writeln!(s, "tracking_update_rate_hz = {}", self.tracking_update_rate_hz);
        let _ = writeln!(s, "tradeoff_points = {}", self.tradeoff_points);
        let _ = writeln!(s, "tradeoff_search_beams = {}", self.tradeoff_search_beams);
        let _ = writeln!(s, "tradeoff_tracked = {}", list(&self.tradeoff_tracked));
        let _ = writeln!(s, "tradeoff_tracking_beams = {}", self.tradeoff_tracking_beams);
        let _ = writeln!(s, "ue_min_range_m = {}", self.ue_min_range_m);
        let _ = writeln!(s, "ue_power_dbm = {}", self.ue_power_dbm);
        let _ = writeln!(s, "ues_per_cell = {}", self.ues_per_cell);
        let _ = writeln!(s, "wavelength_m = {}", self.wavelength_m);
        s
    }

    /// FNV-1a hash of the canonical text; stamped into every output file.
    pub fn hash(&self) -> u64 {
        fnv1a(self.canonical_text().as_bytes())
    }

    pub fn noise_psd_w_per_hz(&self) -> f64 {
        dbm_to_watts(self.noise_psd_dbm_hz)
    }

    pub fn layout(&self) -> Result<CellLayout, GeometryError> {
        build_layout(self.cell_radius_m, self.bs_separation_m)
    }

    pub fn codebooks(&self, n_beams: usize) -> Result<Vec<Codebook>, CodebookError> {
        let cb = Codebook::hamming(self.n_antennas, n_beams)?;
        Ok(vec![cb.clone(), cb])
    }

    pub fn scene(&self, layout: &CellLayout, codebooks: &[Codebook]) -> Scene {
        place_virtual_scatterers(
            layout,
            codebooks,
            &RcsConfig {
                monostatic_m2: self.rcs_monostatic_m2,
                bistatic_m2: self.rcs_bistatic_m2,
            },
            self.scatterer_placement,
        )
    }

    /// Radar parameters with a placeholder transmit power of 1 W; calibrate
    /// before use.
    pub fn radar_params(&self) -> Result<RadarParams, RadarError> {
        RadarParams::new(
            1.0,
            self.wavelength_m,
            self.bandwidth_hz,
            self.noise_psd_w_per_hz(),
            self.n_pulses,
            self.dwell_time_s,
            self.false_alarm_target,
        )
    }

    pub fn comm_params(&self) -> Result<CommParams, CommError> {
        CommParams::new(
            dbm_to_watts(self.ue_power_dbm),
            self.n_antennas,
            self.bandwidth_hz,
            self.noise_psd_w_per_hz(),
            self.frame_s,
        )
    }
}

fn parse_list(key: &str, value: &str, location: &str) -> Result<Vec<usize>, ConfigError> {
    value
        .split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ConfigError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
            expected: "a comma-separated list of integers",
            location: location.to_string(),
        })
}

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325_u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_table() {
        let cfg = ExperimentConfig::default();
        assert_eq!(cfg.cell_radius_m, 100.0);
        assert_eq!(cfg.bandwidth_hz, 10e6);
        assert_eq!(cfg.wavelength_m, 0.05);
        assert_eq!(cfg.frame_s, 1.0);
        assert_eq!(cfg.ues_per_cell, 10);
        assert_eq!(cfg.ue_power_dbm, 23.0);
        assert_eq!(cfg.dwell_time_s, 13.3e-3);
        assert_eq!(cfg.n_pulses, 20);
        assert_eq!(cfg.detection_target, 0.9);
        assert_eq!(cfg.false_alarm_target, 1e-6);
        assert_eq!(cfg.sinr_target_db, 10.0);
        assert_eq!(cfg.n_antennas, 29);
        assert_eq!(cfg.beam_counts, vec![12, 24, 72]);
    }

    #[test]
    fn parses_keys_comments_and_blank_lines() {
        let cfg = ExperimentConfig::parse_str(
            "# comment\n\nseed = 9\nbeam_counts = 12, 24\n  sinr_target_db=7.5 # trailing\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.beam_counts, vec![12, 24]);
        assert_eq!(cfg.sinr_target_db, 7.5);
    }

    #[test]
    fn rejects_unknown_key_with_line() {
        let err = ExperimentConfig::parse_str("seed = 1\nbogus = 2\n").unwrap_err();
        match err {
            ConfigError::UnknownKey { key, location } => {
                assert_eq!(key, "bogus");
                assert_eq!(location, "line 2");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn rejects_malformed_values() {
        let err = ExperimentConfig::parse_str("n_pulses = twenty\n").unwrap_err();
        assert!(matches!(err, ConfigError::BadValue { .. }));
        let err = ExperimentConfig::parse_str("just a line\n").unwrap_err();
        assert!(matches!(err, ConfigError::BadSyntax { .. }));
        let err = ExperimentConfig::parse_str("scatterer_placement = sideways\n").unwrap_err();
        assert!(matches!(err, ConfigError::BadValue { .. }));
    }

    #[test]
    fn overrides_apply() {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_override("seed=77").unwrap();
        cfg.apply_override("scatterer_placement = hpbw-edge").unwrap();
        assert_eq!(cfg.seed, 77);
        assert_eq!(cfg.scatterer_placement, ScattererPlacement::HalfPowerEdge);
        assert!(cfg.apply_override("nope=1").is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = ExperimentConfig::default();
        let mut b = ExperimentConfig::default();
        assert_eq!(a.hash(), b.hash());
        b.seed = 2;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn missing_file_reports_path() {
        let err = ExperimentConfig::load(Path::new("/nonexistent/isac.cfg")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/isac.cfg"));
    }
}
