//! Radar range equations, echo SINR over the virtual-scatterer scene,
//! Swerling-1 detection statistics, and transmit-power calibration.

use std::f64::consts::PI;

use thiserror::Error;

use crate::codebook::{BeamId, Codebook, SILENT_BEAM};
use crate::gamma::{self, GammaError};
use crate::geometry::{CellLayout, Scene};
use crate::units::db_to_linear;

#[derive(Debug, Error)]
pub enum RadarError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("false-alarm probability must lie in (0, 1), got {0}")]
    BadFalseAlarm(f64),
    #[error("detection target must lie in (0, 1), got {0}")]
    BadDetectionTarget(f64),
    #[error("no threshold in bracket [0, {hi}] for p_fa = {p_fa}")]
    NoThresholdRoot { p_fa: f64, hi: f64 },
    #[error("detection target {target} unreachable within the bisection bracket")]
    DetectionUnreachable { target: f64 },
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

/// Radar-side parameters shared by every BS in the cluster.
#[derive(Debug, Clone)]
pub struct RadarParams {
    /// Per-pulse transmit power in watts.
    pub p_r_w: f64,
    pub wavelength_m: f64,
    pub bandwidth_hz: f64,
    pub noise_psd_w_per_hz: f64,
    /// Pulses integrated per dwell.
    pub n_pulses: u32,
    pub dwell_time_s: f64,
    /// Detection threshold, set from the false-alarm requirement.
    pub threshold: f64,
}

impl RadarParams {
    /// Validates the inputs and derives the detection threshold from the
    /// false-alarm probability.
    pub fn new(
        p_r_w: f64,
        wavelength_m: f64,
        bandwidth_hz: f64,
        noise_psd_w_per_hz: f64,
        n_pulses: u32,
        dwell_time_s: f64,
        p_fa: f64,
    ) -> Result<Self, RadarError> {
        for (name, value) in [
            ("p_r_w", p_r_w),
            ("wavelength_m", wavelength_m),
            ("bandwidth_hz", bandwidth_hz),
            ("noise_psd_w_per_hz", noise_psd_w_per_hz),
            ("n_pulses", n_pulses as f64),
            ("dwell_time_s", dwell_time_s),
        ] {
            if value <= 0.0 {
                return Err(RadarError::NonPositive { name, value });
            }
        }
        let threshold = false_alarm_threshold(p_fa, n_pulses)?;
        Ok(Self {
            p_r_w,
            wavelength_m,
            bandwidth_hz,
            noise_psd_w_per_hz,
            n_pulses,
            dwell_time_s,
            threshold,
        })
    }

    /// Same parameters with a different transmit power.
    pub fn with_power(&self, p_r_w: f64) -> Self {
        Self { p_r_w, ..self.clone() }
    }

    /// Noise power N0 * W in watts.
    pub fn noise_power_w(&self) -> f64 {
        self.noise_psd_w_per_hz * self.bandwidth_hz
    }
}

/// Received monostatic echo power, p G^2 lambda^2 sigma / ((4 pi)^3 rho^4).
pub fn monostatic_power(params: &RadarParams, gain: f64, rcs_m2: f64, range_m: f64) -> f64 {
    debug_assert!(range_m > 0.0 && gain >= 0.0 && rcs_m2 >= 0.0);
    let lam2 = params.wavelength_m * params.wavelength_m;
    params.p_r_w * gain * gain * lam2 * rcs_m2 / (four_pi_cubed() * range_m.powi(4))
}

/// Received bistatic interference power,
/// p G_tx G_rx lambda^2 sigma / ((4 pi)^3 rho_tx^2 rho_rx^2).
pub fn bistatic_power(
    params: &RadarParams,
    gain_rx: f64,
    gain_tx: f64,
    rcs_m2: f64,
    range_rx_m: f64,
    range_tx_m: f64,
) -> f64 {
    debug_assert!(range_rx_m > 0.0 && range_tx_m > 0.0);
    let lam2 = params.wavelength_m * params.wavelength_m;
    params.p_r_w * gain_tx * gain_rx * lam2 * rcs_m2
        / (four_pi_cubed() * range_tx_m.powi(2) * range_rx_m.powi(2))
}

/// Direct BS-to-BS crosstalk power, p G_i G_j lambda^2 / ((4 pi)^2 rho^2).
pub fn crosstalk_power(
    params: &RadarParams,
    gain_toward_j: f64,
    gain_toward_i: f64,
    separation_m: f64,
) -> f64 {
    debug_assert!(separation_m > 0.0);
    let lam2 = params.wavelength_m * params.wavelength_m;
    params.p_r_w * gain_toward_j * gain_toward_i * lam2
        / ((4.0 * PI).powi(2) * separation_m.powi(2))
}

fn four_pi_cubed() -> f64 {
    (4.0 * PI).powi(3)
}

/// Echo SINR at BS `rx_bs` for scatterer `target` under the joint beam
/// selection `beams` (one id per BS, 0 = silent).
///
/// Interference terms, all evaluated over the virtual-scatterer scene:
/// - own-cell clutter: monostatic returns from the receiver's other
///   scatterers picked up through its sidelobes;
/// - bistatic: every other BS's pulse scattered off every scene scatterer
///   except the probed one;
/// - crosstalk: direct leakage between the two arrays.
///
/// Returns 0 when the receiver is silent or has no gain on the target.
pub fn radar_sinr(
    params: &RadarParams,
    scene: &Scene,
    layout: &CellLayout,
    codebooks: &[Codebook],
    beams: &[BeamId],
    rx_bs: usize,
    target: usize,
) -> f64 {
    debug_assert_eq!(beams.len(), layout.n_cells());
    let rx_beam = beams[rx_bs];
    if rx_beam == SILENT_BEAM {
        return 0.0;
    }
    let cb_rx = &codebooks[rx_bs];
    let probed = &scene.scatterers()[target];
    let pp = probed.polar[rx_bs];
    let gain_on_target = cb_rx.gain(rx_beam, pp.azimuth_rad);
    let signal = monostatic_power(params, gain_on_target, probed.rcs(rx_bs, rx_bs), pp.range_m);
    if signal == 0.0 {
        return 0.0;
    }

    let mut interference = params.noise_power_w();
    for (k, s) in scene.scatterers().iter().enumerate() {
        if k == target {
            continue;
        }
        let polar_rx = s.polar[rx_bs];
        // own-cell clutter through the receive pattern
        if s.cell == rx_bs {
            let g = cb_rx.gain(rx_beam, polar_rx.azimuth_rad);
            interference += monostatic_power(params, g, s.rcs(rx_bs, rx_bs), polar_rx.range_m);
        }
        // bistatic scattering of every other BS's pulse
        for (tx, &tx_beam) in beams.iter().enumerate() {
            if tx == rx_bs || tx_beam == SILENT_BEAM {
                continue;
            }
            let polar_tx = s.polar[tx];
            let g_tx = codebooks[tx].gain(tx_beam, polar_tx.azimuth_rad);
            if g_tx == 0.0 {
                continue;
            }
            let g_rx = cb_rx.gain(rx_beam, polar_rx.azimuth_rad);
            interference += bistatic_power(
                params,
                g_rx,
                g_tx,
                s.rcs(rx_bs, tx),
                polar_rx.range_m,
                polar_tx.range_m,
            );
        }
    }
    for (tx, &tx_beam) in beams.iter().enumerate() {
        if tx == rx_bs || tx_beam == SILENT_BEAM {
            continue;
        }
        let g_i = cb_rx.gain(rx_beam, layout.bs_azimuth(rx_bs, tx));
        let g_j = codebooks[tx].gain(tx_beam, layout.bs_azimuth(tx, rx_bs));
        interference += crosstalk_power(params, g_i, g_j, layout.bs_separation(rx_bs, tx));
    }
    signal / interference
}

/// Detection threshold tau solving P_fa = Q(N_p, tau), where Q is the upper
/// regularized incomplete gamma function. Bisection on [0, N_p + 40 sqrt(N_p)]
/// to 1e-10 relative tolerance.
pub fn false_alarm_threshold(p_fa: f64, n_pulses: u32) -> Result<f64, RadarError> {
    if !(0.0..1.0).contains(&p_fa) || p_fa == 0.0 {
        return Err(RadarError::BadFalseAlarm(p_fa));
    }
    if n_pulses == 0 {
        return Err(RadarError::NonPositive {
            name: "n_pulses",
            value: 0.0,
        });
    }
    let a = n_pulses as f64;
    let mut lo = 0.0;
    let mut hi = a + 40.0 * a.sqrt();
    if gamma::regularized_upper(a, hi)? >= p_fa {
        return Err(RadarError::NoThresholdRoot { p_fa, hi });
    }
    // Q decreases in tau: Q(lo) = 1 > p_fa > Q(hi).
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if gamma::regularized_upper(a, mid)? > p_fa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Swerling-1 detection probability approximation,
/// (1 + 1/(N_p Gamma))^(N_p - 1) * exp(-tau / (1 + N_p Gamma)), clamped to
/// [0, 1]. Defined as 0 at Gamma = 0 (a silent probe detects nothing).
///
/// The approximation is only meaningful for N_p * Gamma > 1; see
/// [`in_approximation_region`]. Below that it blows up before the clamp, so
/// decision logic must gate on the region (see
/// [`gated_detection_probability`]).
pub fn detection_probability(gamma_lin: f64, n_pulses: u32, threshold: f64) -> f64 {
    if gamma_lin <= 0.0 {
        return 0.0;
    }
    let x = n_pulses as f64 * gamma_lin;
    let pd = (1.0 + 1.0 / x).powi(n_pulses as i32 - 1) * (-threshold / (1.0 + x)).exp();
    pd.clamp(0.0, 1.0)
}

/// Validity condition N_p * Gamma > 1 of the detection approximation.
pub fn in_approximation_region(gamma_lin: f64, n_pulses: u32) -> bool {
    n_pulses as f64 * gamma_lin > 1.0
}

/// Detection probability gated on the approximation's validity region:
/// 0 outside it. Monotone nondecreasing in Gamma over the whole axis.
pub fn gated_detection_probability(gamma_lin: f64, n_pulses: u32, threshold: f64) -> f64 {
    if in_approximation_region(gamma_lin, n_pulses) {
        detection_probability(gamma_lin, n_pulses, threshold)
    } else {
        0.0
    }
}

/// SINR at which the gated detection probability reaches `target_pd`,
/// found by bisection over the monotone branch.
pub fn invert_detection_probability(
    target_pd: f64,
    n_pulses: u32,
    threshold: f64,
) -> Result<f64, RadarError> {
    if !(0.0..1.0).contains(&target_pd) || target_pd == 0.0 {
        return Err(RadarError::BadDetectionTarget(target_pd));
    }
    let mut lo = 1.0 / n_pulses as f64; // region boundary
    let mut hi = 1e9;
    if detection_probability(lo, n_pulses, threshold) >= target_pd
        || detection_probability(hi, n_pulses, threshold) < target_pd
    {
        return Err(RadarError::DetectionUnreachable { target: target_pd });
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if detection_probability(mid, n_pulses, threshold) < target_pd {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Which requirement the transmit power is calibrated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalibrationMode {
    /// Interference-free echo SNR of the worst scatterer hits the SINR target.
    Sinr,
    /// Interference-free SNR hits the SINR equivalent of a detection target.
    Detection,
}

/// Transmit power achieving the requirement for every virtual scatterer in
/// the absence of interference, raised by `margin_db`.
///
/// `requirement` is a linear SINR for [`CalibrationMode::Sinr`] and a
/// probability in (0, 1) for [`CalibrationMode::Detection`].
pub fn calibrate_radar_power(
    mode: CalibrationMode,
    requirement: f64,
    params: &RadarParams,
    scene: &Scene,
    codebooks: &[Codebook],
    margin_db: f64,
) -> Result<f64, RadarError> {
    let gamma_target = match mode {
        CalibrationMode::Sinr => {
            if requirement <= 0.0 {
                return Err(RadarError::NonPositive {
                    name: "sinr requirement",
                    value: requirement,
                });
            }
            requirement
        }
        CalibrationMode::Detection => {
            invert_detection_probability(requirement, params.n_pulses, params.threshold)?
        }
    };
    // Interference-free SNR per unit transmit power at each mapped
    // scatterer; the smallest one is the binding constraint.
    let unit = params.with_power(1.0);
    let noise = params.noise_power_w();
    let mut worst = f64::INFINITY;
    for s in scene.scatterers() {
        let polar = s.polar[s.cell];
        let gain = codebooks[s.cell].gain(s.beam, polar.azimuth_rad);
        let snr_per_watt =
            monostatic_power(&unit, gain, s.rcs(s.cell, s.cell), polar.range_m) / noise;
        worst = worst.min(snr_per_watt);
    }
    Ok(gamma_target * db_to_linear(margin_db) / worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_layout, place_virtual_scatterers, RcsConfig, ScattererPlacement};
    use approx::assert_relative_eq;

    fn test_params(p_r: f64) -> RadarParams {
        RadarParams::new(p_r, 0.05, 10e6, 3.981_071_705_534_972e-21, 20, 13.3e-3, 1e-6).unwrap()
    }

    fn two_cell(n_beams: usize) -> (CellLayout, Scene, Vec<Codebook>) {
        let layout = build_layout(100.0, 200.0).unwrap();
        let cb = Codebook::hamming(29, n_beams).unwrap();
        let cbs = vec![cb.clone(), cb];
        let scene = place_virtual_scatterers(
            &layout,
            &cbs,
            &RcsConfig::default(),
            ScattererPlacement::Boresight,
        );
        (layout, scene, cbs)
    }

    #[test]
    fn monostatic_hand_value() {
        // p = 1 W, G = 21, lambda = 0.05 m, sigma = 1 m^2, rho = 100 m
        let p = test_params(1.0);
        let m = monostatic_power(&p, 21.0, 1.0, 100.0);
        assert_relative_eq!(m, 5.555830736344131e-12, epsilon = 1e-9 * m);
        assert_eq!(monostatic_power(&p, 0.0, 1.0, 100.0), 0.0);
    }

    #[test]
    fn power_scaling_laws() {
        let p = test_params(2.5);
        let m1 = monostatic_power(&p, 5.0, 2.0, 70.0);
        let m2 = monostatic_power(&p, 5.0, 2.0, 140.0);
        assert_relative_eq!(m1 / m2, 16.0, epsilon = 1e-12);

        let b1 = bistatic_power(&p, 3.0, 4.0, 1.0, 50.0, 80.0);
        let b2 = bistatic_power(&p, 3.0, 4.0, 1.0, 100.0, 80.0);
        assert_relative_eq!(b1 / b2, 4.0, epsilon = 1e-12);

        let c1 = crosstalk_power(&p, 2.0, 3.0, 100.0);
        let c2 = crosstalk_power(&p, 2.0, 3.0, 200.0);
        assert_relative_eq!(c1 / c2, 4.0, epsilon = 1e-12);

        // all linear in transmit power
        let p2 = p.with_power(5.0);
        assert_relative_eq!(
            monostatic_power(&p2, 5.0, 2.0, 70.0) / m1,
            2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn bistatic_reduces_to_monostatic() {
        let p = test_params(1.0);
        let g = 7.3;
        let b = bistatic_power(&p, g, g, 2.0, 120.0, 120.0);
        let m = monostatic_power(&p, g, 2.0, 120.0);
        assert_relative_eq!(b, m, epsilon = 1e-12 * m);
        // symmetric in the (gain, range) pairs
        let b1 = bistatic_power(&p, 2.0, 5.0, 1.0, 60.0, 90.0);
        let b2 = bistatic_power(&p, 5.0, 2.0, 1.0, 90.0, 60.0);
        assert_relative_eq!(b1, b2, epsilon = 1e-12 * b1);
        assert_eq!(bistatic_power(&p, 0.0, 5.0, 1.0, 60.0, 90.0), 0.0);
    }

    #[test]
    fn crosstalk_symmetry() {
        let p = test_params(1.0);
        assert_eq!(
            crosstalk_power(&p, 2.0, 3.0, 150.0),
            crosstalk_power(&p, 3.0, 2.0, 150.0)
        );
        assert_eq!(crosstalk_power(&p, 0.0, 3.0, 150.0), 0.0);
    }

    #[test]
    fn sinr_solo_dwell_reduces_to_snr_plus_clutter() {
        let (layout, scene, cbs) = two_cell(12);
        let p = test_params(0.1);
        let target = scene.mapped_index(0, 4);
        let gamma = radar_sinr(&p, &scene, &layout, &cbs, &[4, SILENT_BEAM], 0, target);
        // hand-assembled: signal over noise + own-cell sidelobe clutter
        let probed = &scene.scatterers()[target];
        let m = monostatic_power(
            &p,
            cbs[0].gain(4, probed.polar[0].azimuth_rad),
            1.0,
            probed.polar[0].range_m,
        );
        let mut denom = p.noise_power_w();
        for (k, s) in scene.scatterers().iter().enumerate() {
            if k != target && s.cell == 0 {
                let g = cbs[0].gain(4, s.polar[0].azimuth_rad);
                denom += monostatic_power(&p, g, 1.0, s.polar[0].range_m);
            }
        }
        assert_relative_eq!(gamma, m / denom, epsilon = 1e-12 * gamma);
        // clutter is tiny for a 12-beam cell, so SNR is a close upper bound
        assert!(gamma < m / p.noise_power_w());
        assert!(gamma > 0.99 * m / p.noise_power_w());
    }

    #[test]
    fn sinr_zero_for_silent_rx() {
        let (layout, scene, cbs) = two_cell(12);
        let p = test_params(0.1);
        let target = scene.mapped_index(0, 4);
        assert_eq!(
            radar_sinr(&p, &scene, &layout, &cbs, &[SILENT_BEAM, SILENT_BEAM], 0, target),
            0.0
        );
    }

    #[test]
    fn mutual_staring_is_much_worse_than_solo() {
        let (layout, scene, cbs) = two_cell(12);
        let p = test_params(0.1);
        // beam 7 of BS 0 looks at BS 1; beam 1 of BS 1 looks back
        let target = scene.mapped_index(0, 7);
        let solo = radar_sinr(&p, &scene, &layout, &cbs, &[7, SILENT_BEAM], 0, target);
        let both = radar_sinr(&p, &scene, &layout, &cbs, &[7, 1], 0, target);
        assert!(both < solo);
        assert!(both < 0.01 * solo, "crosstalk should dominate: {both} vs {solo}");
    }

    #[test]
    fn sinr_brute_force_two_scatterer_equivalence() {
        // Tiny scene: 1 beam per cell, so two scatterers total.
        let (layout, scene, cbs) = two_cell(1);
        let p = test_params(0.2);
        let target = scene.mapped_index(0, 1);
        let other = scene.mapped_index(1, 1);
        let beams = [1, 1];
        let gamma = radar_sinr(&p, &scene, &layout, &cbs, &beams, 0, target);

        let s_t = &scene.scatterers()[target];
        let s_o = &scene.scatterers()[other];
        let m = monostatic_power(
            &p,
            cbs[0].gain(1, s_t.polar[0].azimuth_rad),
            s_t.rcs(0, 0),
            s_t.polar[0].range_m,
        );
        // other scatterer belongs to cell 1: bistatic only (clutter is own-cell)
        let b = bistatic_power(
            &p,
            cbs[0].gain(1, s_o.polar[0].azimuth_rad),
            cbs[1].gain(1, s_o.polar[1].azimuth_rad),
            s_o.rcs(0, 1),
            s_o.polar[0].range_m,
            s_o.polar[1].range_m,
        );
        let c = crosstalk_power(
            &p,
            cbs[0].gain(1, layout.bs_azimuth(0, 1)),
            cbs[1].gain(1, layout.bs_azimuth(1, 0)),
            layout.bs_separation(0, 1),
        );
        let expect = m / (p.noise_power_w() + b + c);
        assert_relative_eq!(gamma, expect, epsilon = 1e-12 * expect);
    }

    #[test]
    fn threshold_single_pulse_analytic() {
        // Q(1, tau) = exp(-tau) so tau = -ln(p_fa)
        let tau = false_alarm_threshold(1e-6, 1).unwrap();
        assert_relative_eq!(tau, 13.815510557964274, epsilon = 1e-8);
    }

    #[test]
    fn threshold_twenty_pulses() {
        let tau = false_alarm_threshold(1e-6, 20).unwrap();
        assert_relative_eq!(tau, 48.826478707531511, epsilon = 1e-7);
        // monotone: tighter false-alarm requirement raises the threshold
        let tau_tighter = false_alarm_threshold(1e-8, 20).unwrap();
        assert!(tau_tighter > tau);
        assert!(false_alarm_threshold(0.0, 20).is_err());
        assert!(false_alarm_threshold(1.0, 20).is_err());
    }

    #[test]
    fn detection_limits_and_identity() {
        let tau1 = false_alarm_threshold(1e-6, 1).unwrap();
        // N_p = 1 collapses to p_fa^(1/(1+Gamma))
        for g in [0.5, 2.0, 10.0, 100.0] {
            let pd = detection_probability(g, 1, tau1);
            assert_relative_eq!(pd, 1e-6_f64.powf(1.0 / (1.0 + g)), max_relative = 1e-9);
        }
        let tau20 = false_alarm_threshold(1e-6, 20).unwrap();
        assert!(detection_probability(1e9, 20, tau20) > 0.999999);
        assert_eq!(detection_probability(0.0, 20, tau20), 0.0);
        // gating kills the low-SINR blowup of the approximation
        assert_eq!(gated_detection_probability(1e-4, 20, tau20), 0.0);
        assert!(detection_probability(1e-4, 20, tau20) > 0.9); // the raw artifact
    }

    #[test]
    fn detection_monotone_in_threshold() {
        let tau_a = false_alarm_threshold(1e-6, 20).unwrap();
        let tau_b = false_alarm_threshold(1e-4, 20).unwrap();
        assert!(tau_b < tau_a);
        for g in [0.1, 1.0, 10.0] {
            assert!(detection_probability(g, 20, tau_b) > detection_probability(g, 20, tau_a));
        }
    }

    #[test]
    fn detection_inversion_round_trip() {
        let tau = false_alarm_threshold(1e-6, 20).unwrap();
        let gamma = invert_detection_probability(0.9, 20, tau).unwrap();
        assert_relative_eq!(gamma, 14.088504783285314, epsilon = 1e-6);
        let pd = detection_probability(gamma, 20, tau);
        assert_relative_eq!(pd, 0.9, epsilon = 1e-8);
        assert!(invert_detection_probability(1.0, 20, tau).is_err());
    }

    #[test]
    fn calibration_meets_requirement_at_zero_margin() {
        let (_, scene, cbs) = two_cell(12);
        let base = test_params(1.0);
        let target = db_to_linear(10.0);
        let p_r =
            calibrate_radar_power(CalibrationMode::Sinr, target, &base, &scene, &cbs, 0.0).unwrap();
        // interference-free SNR at a mapped scatterer equals the target
        let params = base.with_power(p_r);
        let s = scene.mapped(0, 3);
        let m = monostatic_power(
            &params,
            cbs[0].gain(3, s.polar[0].azimuth_rad),
            1.0,
            s.polar[0].range_m,
        );
        assert_relative_eq!(m / params.noise_power_w(), target, epsilon = 1e-9);

        // doubling the requirement doubles the power
        let p_r2 = calibrate_radar_power(
            CalibrationMode::Sinr,
            2.0 * target,
            &base,
            &scene,
            &cbs,
            0.0,
        )
        .unwrap();
        assert_relative_eq!(p_r2, 2.0 * p_r, epsilon = 1e-12 * p_r2);
    }

    #[test]
    fn calibration_detection_round_trip() {
        let (_, scene, cbs) = two_cell(12);
        let base = test_params(1.0);
        let p_r =
            calibrate_radar_power(CalibrationMode::Detection, 0.9, &base, &scene, &cbs, 0.0)
                .unwrap();
        let params = base.with_power(p_r);
        let s = scene.mapped(1, 5);
        let m = monostatic_power(
            &params,
            cbs[1].gain(5, s.polar[1].azimuth_rad),
            1.0,
            s.polar[1].range_m,
        );
        let snr = m / params.noise_power_w();
        let pd = detection_probability(snr, params.n_pulses, params.threshold);
        assert_relative_eq!(pd, 0.9, epsilon = 1e-6);
    }
}
