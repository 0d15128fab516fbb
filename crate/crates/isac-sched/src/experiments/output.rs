//! Delimited text output: one file per curve, two columns, one metadata
//! header line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;

use super::config::ExperimentConfig;
use super::runner::{CdfResults, DwellResults, PatternLabel, TradeoffResults};

/// Provenance stamped into every output file.
pub struct RunMeta {
    pub git: String,
    pub seed: u64,
    pub config_hash: u64,
}

impl RunMeta {
    pub fn collect(cfg: &ExperimentConfig) -> Self {
        Self {
            git: git_describe(),
            seed: cfg.seed,
            config_hash: cfg.hash(),
        }
    }
}

fn git_describe() -> String {
    Command::new("git")
        .args(["describe", "--always", "--dirty"])
        .output()
        .ok()
        .filter(|out| out.status.success())
        .map(|out| String::from_utf8_lossy(&out.stdout).trim().to_string())
        .unwrap_or_else(|| "unknown".to_string())
}

/// Writes `<name>.dat` with a `# name (units) | git | seed | config` header
/// and `x y` rows.
pub fn write_curve(
    dir: &Path,
    name: &str,
    units: &str,
    points: &[(f64, f64)],
    meta: &RunMeta,
) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.dat"));
    let mut body = String::new();
    body.push_str(&format!(
        "# {name} ({units}) | git {} | seed {} | config {:016x}\n",
        meta.git, meta.seed, meta.config_hash
    ));
    for &(x, y) in points {
        body.push_str(&format!("{x:.10e} {y:.10e}\n"));
    }
    let mut file = fs::File::create(&path)?;
    file.write_all(body.as_bytes())?;
    Ok(path)
}

const CDF_POINTS: usize = 512;

/// One CDF file per (metric, pattern, codebook size).
pub fn write_cdf(
    dir: &Path,
    results: &CdfResults,
    meta: &RunMeta,
) -> std::io::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for slice in &results.slices {
        for (p, label) in PatternLabel::ALL.iter().enumerate() {
            let sinr_db: Vec<(f64, f64)> = slice.tracking_sinr[p]
                .cdf_curve(CDF_POINTS)
                .into_iter()
                .map(|(x, q)| (10.0 * x.log10(), q))
                .collect();
            paths.push(write_curve(
                dir,
                &format!("tracking_sinr_cdf_{}_nl{}", label.file_tag(), slice.n_beams),
                "x: SINR dB, y: CDF",
                &sinr_db,
                meta,
            )?);
            paths.push(write_curve(
                dir,
                &format!("search_pdet_cdf_{}_nl{}", label.file_tag(), slice.n_beams),
                "x: detection probability, y: CDF",
                &slice.search_pdet[p].cdf_curve(CDF_POINTS),
                meta,
            )?);
        }
    }
    Ok(paths)
}

/// Mean and 99th-percentile dwell counts vs tracked targets, plus the
/// orthogonal reference line.
pub fn write_dwell(
    dir: &Path,
    results: &DwellResults,
    meta: &RunMeta,
) -> std::io::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for slice in &results.slices {
        let mean: Vec<(f64, f64)> = slice
            .per_n_tracked
            .iter()
            .map(|s| (s.n_tracked as f64, s.mean))
            .collect();
        let p99: Vec<(f64, f64)> = slice
            .per_n_tracked
            .iter()
            .map(|s| (s.n_tracked as f64, s.p99))
            .collect();
        paths.push(write_curve(
            dir,
            &format!("tracking_dwells_mean_nl{}", slice.n_beams),
            "x: targets per cell, y: mean dwells",
            &mean,
            meta,
        )?);
        paths.push(write_curve(
            dir,
            &format!("tracking_dwells_p99_nl{}", slice.n_beams),
            "x: targets per cell, y: p99 dwells",
            &p99,
            meta,
        )?);
    }
    let orthogonal: Vec<(f64, f64)> = (1..=results.max_tracked)
        .map(|n| (n as f64, 2.0 * n as f64))
        .collect();
    paths.push(write_curve(
        dir,
        "tracking_dwells_orthogonal",
        "x: targets per cell, y: dwells",
        &orthogonal,
        meta,
    )?);
    Ok(paths)
}

/// Tracking-duration curves and throughput-vs-search-rate lines.
pub fn write_tradeoff(
    dir: &Path,
    results: &TradeoffResults,
    meta: &RunMeta,
) -> std::io::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for curve in &results.duration_curves {
        let tag = if curve.proposed { "proposed" } else { "orthogonal" };
        paths.push(write_curve(
            dir,
            &format!("tracking_duration_{tag}_nt{}", curve.n_tracked),
            "x: update rate Hz, y: tracking subframe s",
            &curve.points,
            meta,
        )?);
    }
    for line in &results.throughput_lines {
        paths.push(write_curve(
            dir,
            &format!("throughput_vs_search_rate_nt{}", line.n_tracked),
            "x: scans/frame, y: bit/s",
            &line.points,
            meta,
        )?);
    }
    Ok(paths)
}
