//! Uplink communication model: large-scale fading, per-user SINR under
//! maximum-ratio combining, network spectral efficiency, and the
//! throughput / subframe-duration pair.

use thiserror::Error;

use crate::geometry::UeDrop;

#[derive(Debug, Error, PartialEq)]
pub enum CommError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("throughput target {target_bps} b/s infeasible: network sum SE is zero")]
    InfeasibleThroughput { target_bps: f64 },
}

/// Uplink parameters shared by all users.
#[derive(Debug, Clone)]
pub struct CommParams {
    /// UE transmit power in watts.
    pub p_c_w: f64,
    /// BS array size (MR combining gain).
    pub n_antennas: usize,
    pub bandwidth_hz: f64,
    pub noise_psd_w_per_hz: f64,
    /// MAC frame duration in seconds.
    pub frame_s: f64,
}

impl CommParams {
    pub fn new(
        p_c_w: f64,
        n_antennas: usize,
        bandwidth_hz: f64,
        noise_psd_w_per_hz: f64,
        frame_s: f64,
    ) -> Result<Self, CommError> {
        for (name, value) in [
            ("p_c_w", p_c_w),
            ("n_antennas", n_antennas as f64),
            ("bandwidth_hz", bandwidth_hz),
            ("noise_psd_w_per_hz", noise_psd_w_per_hz),
            ("frame_s", frame_s),
        ] {
            if value <= 0.0 {
                return Err(CommError::NonPositive { name, value });
            }
        }
        Ok(Self {
            p_c_w,
            n_antennas,
            bandwidth_hz,
            noise_psd_w_per_hz,
            frame_s,
        })
    }

    pub fn noise_power_w(&self) -> f64 {
        self.noise_psd_w_per_hz * self.bandwidth_hz
    }
}

/// Large-scale fading at range r: beta_dB = -47.9 - 21 log10(r), linear out.
pub fn large_scale_fading(range_m: f64) -> f64 {
    debug_assert!(range_m > 0.0);
    let beta_db = -47.9 - 21.0 * range_m.log10();
    10.0_f64.powf(beta_db / 10.0)
}

/// Effective uplink SINR of user `ue` in cell `cell` under MR combining with
/// perfect CSI. The interference sum runs over every UE in the network, with
/// the served user's own term removed.
pub fn ul_sinr(drop: &UeDrop, params: &CommParams, cell: usize, ue: usize) -> f64 {
    let own = params.p_c_w * drop.beta(cell, cell, ue);
    let mut denom = params.noise_power_w() - own;
    for j in 0..drop.n_cells() {
        for k in 0..drop.ues_in_cell(j) {
            denom += params.p_c_w * drop.beta(cell, j, k);
        }
    }
    params.n_antennas as f64 * own / denom
}

/// Network sum spectral efficiency, sum of log2(1 + sinr) over all users.
pub fn network_sum_se(drop: &UeDrop, params: &CommParams) -> f64 {
    (0..drop.n_cells())
        .flat_map(|i| (0..drop.ues_in_cell(i)).map(move |l| (i, l)))
        .map(|(i, l)| (1.0 + ul_sinr(drop, params, i, l)).log2())
        .sum()
}

/// Network throughput lower bound in bits per second for a communication
/// subframe of duration `t_c`. Accepts durations beyond the frame so it can
/// mirror the unclamped [`comm_subframe`]; the scheduler enforces frame fit.
pub fn throughput(sum_se: f64, t_c: f64, params: &CommParams) -> f64 {
    debug_assert!(t_c >= 0.0);
    t_c / params.frame_s * params.bandwidth_hz * sum_se
}

/// Communication subframe duration required to hit `target_bps`. The result
/// is unclamped; the scheduler decides whether it fits the frame.
pub fn comm_subframe(target_bps: f64, sum_se: f64, params: &CommParams) -> Result<f64, CommError> {
    if target_bps == 0.0 {
        return Ok(0.0);
    }
    if sum_se <= 0.0 {
        return Err(CommError::InfeasibleThroughput {
            target_bps,
        });
    }
    Ok(target_bps * params.frame_s / (params.bandwidth_hz * sum_se))
}
