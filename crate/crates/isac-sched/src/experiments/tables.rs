//! Precomputed per-pair SINR tables.
//!
//! A dwell's metrics depend only on the joint beam pair, so the Monte Carlo
//! loops evaluate [`crate::radar::radar_sinr`] once per (receiver, u, v)
//! cell and look everything else up.

use crate::codebook::{BeamId, Codebook, SILENT_BEAM};
use crate::geometry::{CellLayout, Scene};
use crate::radar::{self, RadarParams};

/// Echo SINR for every (receiving BS, beam of BS 1, beam of BS 2) triple,
/// each receiver probing its own mapped scatterer. Beam id 0 is the silent
/// beamformer and yields SINR 0 on that side.
pub struct PairTables {
    n_beams: usize,
    n_pulses: u32,
    threshold: f64,
    /// sinr[rx * (n+1)^2 + u * (n+1) + v]
    sinr: Vec<f64>,
}

impl PairTables {
    pub fn build(
        params: &RadarParams,
        scene: &Scene,
        layout: &CellLayout,
        codebooks: &[Codebook],
    ) -> Self {
        let n = codebooks[0].n_beams();
        let stride = n + 1;
        let mut sinr = vec![0.0; 2 * stride * stride];
        for u in 0..=n {
            for v in 0..=n {
                let beams = [u, v];
                for rx in 0..2 {
                    if beams[rx] == SILENT_BEAM {
                        continue;
                    }
                    let target = scene.mapped_index(rx, beams[rx]);
                    sinr[rx * stride * stride + u * stride + v] =
                        radar::radar_sinr(params, scene, layout, codebooks, &beams, rx, target);
                }
            }
        }
        Self {
            n_beams: n,
            n_pulses: params.n_pulses,
            threshold: params.threshold,
            sinr,
        }
    }

    pub fn n_beams(&self) -> usize {
        self.n_beams
    }

    /// SINR at BS `rx` probing its own mapped scatterer under pair (u, v).
    pub fn sinr(&self, rx: usize, u: BeamId, v: BeamId) -> f64 {
        let stride = self.n_beams + 1;
        self.sinr[rx * stride * stride + u * stride + v]
    }

    /// Gated detection probability at BS `rx` under pair (u, v).
    pub fn detection(&self, rx: usize, u: BeamId, v: BeamId) -> f64 {
        radar::gated_detection_probability(self.sinr(rx, u, v), self.n_pulses, self.threshold)
    }

    /// Table-backed tracking cost, identical to
    /// [`crate::scheduler::tracking_cost`].
    pub fn tracking_cost(&self, u: BeamId, v: BeamId, sinr_target: f64) -> f64 {
        if u == SILENT_BEAM && v == SILENT_BEAM {
            return 1.0;
        }
        let ok_1 = u == SILENT_BEAM || self.sinr(0, u, v) >= sinr_target;
        let ok_2 = v == SILENT_BEAM || self.sinr(1, u, v) >= sinr_target;
        if ok_1 && ok_2 {
            0.0
        } else {
            1.0
        }
    }

    /// Table-backed search cost, identical to
    /// [`crate::scheduler::search_cost`].
    pub fn search_cost(&self, u: BeamId, v: BeamId, detection_target: f64) -> f64 {
        if u == SILENT_BEAM && v == SILENT_BEAM {
            return 1.0;
        }
        let ok_1 = u == SILENT_BEAM || self.detection(0, u, v) >= detection_target;
        let ok_2 = v == SILENT_BEAM || self.detection(1, u, v) >= detection_target;
        if ok_1 && ok_2 {
            0.0
        } else {
            1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_layout, place_virtual_scatterers, RcsConfig, ScattererPlacement};
    use crate::radar::{calibrate_radar_power, CalibrationMode};
    use crate::scheduler;
    use crate::units::db_to_linear;

    #[test]
    fn table_matches_direct_evaluation() {
        let layout = build_layout(100.0, 200.0).unwrap();
        let cb = Codebook::hamming(29, 12).unwrap();
        let cbs = vec![cb.clone(), cb];
        let scene = place_virtual_scatterers(
            &layout,
            &cbs,
            &RcsConfig::default(),
            ScattererPlacement::Boresight,
        );
        let base =
            RadarParams::new(1.0, 0.05, 10e6, 3.981_071_705_534_972e-21, 20, 13.3e-3, 1e-6).unwrap();
        let p_r = calibrate_radar_power(
            CalibrationMode::Sinr,
            db_to_linear(10.0),
            &base,
            &scene,
            &cbs,
            3.0,
        )
        .unwrap();
        let params = base.with_power(p_r);
        let tables = PairTables::build(&params, &scene, &layout, &cbs);
        let target = db_to_linear(10.0);
        for (u, v) in [(0, 0), (3, 0), (0, 5), (7, 1), (2, 9), (12, 12)] {
            assert_eq!(
                tables.tracking_cost(u, v, target),
                scheduler::tracking_cost(&params, &scene, &layout, &cbs, u, v, target),
                "pair ({u}, {v})"
            );
            for rx in 0..2 {
                let beams = [u, v];
                if beams[rx] == SILENT_BEAM {
                    assert_eq!(tables.sinr(rx, u, v), 0.0);
                } else {
                    let k = scene.mapped_index(rx, beams[rx]);
                    assert_eq!(
                        tables.sinr(rx, u, v),
                        radar::radar_sinr(&params, &scene, &layout, &cbs, &beams, rx, k)
                    );
                }
            }
        }
    }
}
