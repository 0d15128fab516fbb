//! Beamforming codebook for a half-wavelength-spaced uniform linear array.
//!
//! The codebook holds `n_beams` look directions uniformly covering [-pi, pi)
//! plus the reserved null beamformer (beam id 0) that radiates nothing. The
//! array power pattern depends only on the offset from the look direction,
//! so every beam shares one shape; beyond +/-pi/2 offset the pattern is held
//! at the endfire value instead of mirroring the main lobe.

use std::f64::consts::PI;

use thiserror::Error;

use crate::units::wrap_angle;

/// Index into a codebook. Id 0 is the null beamformer, real beams are 1..=n.
pub type BeamId = usize;

/// The null beamformer: a silent dwell contributes no gain in any direction.
pub const SILENT_BEAM: BeamId = 0;

#[derive(Debug, Error, PartialEq)]
pub enum CodebookError {
    #[error("array needs at least 2 antennas, got {0}")]
    TooFewAntennas(usize),
    #[error("codebook needs at least 1 look direction")]
    NoBeams,
    #[error("taper weights must be finite and not all zero")]
    BadWeights,
}

/// Hamming taper, scaled to unit sum of squares (total transmit power 1).
pub fn hamming_weights(n_antennas: usize) -> Result<Vec<f64>, CodebookError> {
    if n_antennas < 2 {
        return Err(CodebookError::TooFewAntennas(n_antennas));
    }
    let m = (n_antennas - 1) as f64;
    let raw: Vec<f64> = (0..n_antennas)
        .map(|n| 0.54 - 0.46 * (2.0 * PI * n as f64 / m).cos())
        .collect();
    Ok(normalize(raw))
}

/// Uniform taper, scaled to unit sum of squares.
pub fn uniform_weights(n_antennas: usize) -> Result<Vec<f64>, CodebookError> {
    if n_antennas < 2 {
        return Err(CodebookError::TooFewAntennas(n_antennas));
    }
    Ok(normalize(vec![1.0; n_antennas]))
}

fn normalize(raw: Vec<f64>) -> Vec<f64> {
    let norm = raw.iter().map(|w| w * w).sum::<f64>().sqrt();
    raw.into_iter().map(|w| w / norm).collect()
}

/// Immutable beamforming codebook shared by pattern evaluation and scheduling.
#[derive(Debug, Clone)]
pub struct Codebook {
    weights: Vec<f64>,
    look_dirs: Vec<f64>,
    peak_gain: f64,
    backlobe_floor: f64,
}

impl Codebook {
    /// Builds a codebook from taper weights; weights are renormalized to unit
    /// sum of squares. Look directions are -pi + 2*pi*j/n for j in 0..n.
    pub fn new(weights: Vec<f64>, n_beams: usize) -> Result<Self, CodebookError> {
        if weights.len() < 2 {
            return Err(CodebookError::TooFewAntennas(weights.len()));
        }
        if n_beams == 0 {
            return Err(CodebookError::NoBeams);
        }
        if weights.iter().any(|w| !w.is_finite()) || weights.iter().all(|&w| w == 0.0) {
            return Err(CodebookError::BadWeights);
        }
        let weights = normalize(weights);
        let look_dirs = (0..n_beams)
            .map(|j| -PI + 2.0 * PI * j as f64 / n_beams as f64)
            .collect();
        let peak_gain = array_factor(&weights, 0.0);
        let backlobe_floor = array_factor(&weights, 1.0);
        Ok(Self {
            weights,
            look_dirs,
            peak_gain,
            backlobe_floor,
        })
    }

    /// Hamming-tapered codebook, the default design for all base stations.
    pub fn hamming(n_antennas: usize, n_beams: usize) -> Result<Self, CodebookError> {
        Self::new(hamming_weights(n_antennas)?, n_beams)
    }

    pub fn n_antennas(&self) -> usize {
        self.weights.len()
    }

    pub fn n_beams(&self) -> usize {
        self.look_dirs.len()
    }

    /// Real beam ids, 1..=n_beams.
    pub fn beam_ids(&self) -> impl Iterator<Item = BeamId> + '_ {
        1..=self.n_beams()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Look direction of a real beam. Panics for the silent beam or an
    /// out-of-range id.
    pub fn look_dir(&self, beam: BeamId) -> f64 {
        assert!(
            beam != SILENT_BEAM && beam <= self.n_beams(),
            "invalid beam id {beam}"
        );
        self.look_dirs[beam - 1]
    }

    /// Pattern value at boresight, (sum of weights)^2.
    pub fn peak_gain(&self) -> f64 {
        self.peak_gain
    }

    /// Constant gain used beyond +/-pi/2 offset; equals the endfire value so
    /// the pattern is continuous at the seam.
    pub fn backlobe_floor(&self) -> f64 {
        self.backlobe_floor
    }

    /// Array power pattern as a function of the offset from the look
    /// direction. Rotation-invariant: every beam shares this shape.
    pub fn offset_gain(&self, dtheta: f64) -> f64 {
        let d = dtheta.abs();
        if d >= PI / 2.0 {
            self.backlobe_floor
        } else {
            array_factor(&self.weights, d.sin())
        }
    }

    /// Power pattern G(theta; beam). Zero everywhere for the silent beam.
    /// Panics for an out-of-range id.
    pub fn gain(&self, beam: BeamId, theta: f64) -> f64 {
        if beam == SILENT_BEAM {
            return 0.0;
        }
        self.offset_gain(wrap_angle(theta - self.look_dir(beam)))
    }

    /// Width of the contiguous interval around boresight where the pattern
    /// stays at or above half its peak, located by bisection to 1e-6 rad.
    pub fn half_power_beamwidth(&self) -> f64 {
        let half = self.peak_gain / 2.0;
        let step = 1e-3;
        let mut hi = step;
        while hi < PI / 2.0 && self.offset_gain(hi) >= half {
            hi += step;
        }
        if hi >= PI / 2.0 {
            return PI; // taper never drops below half power in the front hemisphere
        }
        let mut lo = hi - step;
        while hi - lo > 1e-6 {
            let mid = 0.5 * (lo + hi);
            if self.offset_gain(mid) >= half {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo + hi // 2 * midpoint
    }
}

/// |sum_n w_n exp(j*pi*n*s)|^2 for s = sin(offset).
fn array_factor(weights: &[f64], s: f64) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (n, w) in weights.iter().enumerate() {
        let phase = PI * n as f64 * s;
        re += w * phase.cos();
        im += w * phase.sin();
    }
    re * re + im * im
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn hamming_endpoint_values() {
        // Raw taper at the ends is 0.54 - 0.46 = 0.08, at the center 1.0.
        let w = hamming_weights(3).unwrap();
        assert_relative_eq!(w[0] / w[1], 0.08, epsilon = 1e-12);
        assert_relative_eq!(w[2] / w[1], 0.08, epsilon = 1e-12);
    }

    #[test]
    fn hamming_symmetric_and_normalized() {
        for n in [3, 8, 29, 64] {
            let w = hamming_weights(n).unwrap();
            for i in 0..n {
                assert_relative_eq!(w[i], w[n - 1 - i], epsilon = 1e-12);
            }
            let ss: f64 = w.iter().map(|x| x * x).sum();
            assert_relative_eq!(ss, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_degenerate_tapers() {
        assert_eq!(hamming_weights(1), Err(CodebookError::TooFewAntennas(1)));
        assert_eq!(
            Codebook::new(vec![1.0, 1.0], 0).unwrap_err(),
            CodebookError::NoBeams
        );
        assert_eq!(
            Codebook::new(vec![0.0, 0.0], 4).unwrap_err(),
            CodebookError::BadWeights
        );
    }

    #[test]
    fn peak_gain_matches_coherent_sum() {
        let cb = Codebook::hamming(29, 12).unwrap();
        let coherent: f64 = cb.weights().iter().sum::<f64>();
        assert_relative_eq!(cb.peak_gain(), coherent * coherent, epsilon = 1e-12);
        // 29-element Hamming: 15.2^2 / 11.1336 = 20.7516
        assert_relative_eq!(cb.peak_gain(), 20.751598764101477, epsilon = 1e-10);
        assert_relative_eq!(cb.gain(1, cb.look_dir(1)), cb.peak_gain(), epsilon = 1e-12);
    }

    #[test]
    fn silent_beam_is_dark() {
        let cb = Codebook::hamming(29, 12).unwrap();
        for k in 0..32 {
            assert_eq!(cb.gain(SILENT_BEAM, -PI + k as f64 * 0.2), 0.0);
        }
    }

    #[test]
    #[should_panic(expected = "invalid beam id")]
    fn out_of_range_beam_rejected() {
        let cb = Codebook::hamming(29, 12).unwrap();
        cb.gain(13, 0.0);
    }

    #[test]
    fn look_dirs_uniform() {
        let cb = Codebook::hamming(29, 12).unwrap();
        for j in 1..=12usize {
            let expect = -PI + 2.0 * PI * (j - 1) as f64 / 12.0;
            assert_relative_eq!(cb.look_dir(j), expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn backlobe_seam_is_continuous() {
        let cb = Codebook::hamming(29, 12).unwrap();
        assert_eq!(cb.offset_gain(PI / 2.0), cb.backlobe_floor());
        assert_eq!(cb.offset_gain(2.9), cb.backlobe_floor());
        // endfire value of the 29-element Hamming taper
        assert_relative_eq!(cb.backlobe_floor(), 5.748365308615363e-4, epsilon = 1e-10);
        // approaching the seam from inside the front hemisphere
        let just_inside = cb.offset_gain(PI / 2.0 - 1e-9);
        assert_relative_eq!(just_inside, cb.backlobe_floor(), epsilon = 1e-6);
    }

    #[test]
    fn half_power_beamwidth_values() {
        // Dense-grid oracle values at 1e-4 rad resolution, refined with mpmath.
        let hamming = Codebook::hamming(29, 12).unwrap();
        assert!((hamming.half_power_beamwidth() - 0.09196454364).abs() < 2e-6);

        let uniform = Codebook::new(uniform_weights(29).unwrap(), 12).unwrap();
        assert!((uniform.half_power_beamwidth() - 0.06113695992).abs() < 2e-6);
        // ~3.5 degrees
        assert!((uniform.half_power_beamwidth().to_degrees() - 3.5).abs() < 0.01);

        // taper broadening and aperture scaling
        assert!(hamming.half_power_beamwidth() > uniform.half_power_beamwidth());
        let doubled = Codebook::hamming(58, 12).unwrap();
        assert!(doubled.half_power_beamwidth() < hamming.half_power_beamwidth());
    }

    proptest! {
        #[test]
        fn pattern_even_and_peak_bounded(dtheta in -PI..PI) {
            let cb = Codebook::hamming(29, 12).unwrap();
            let g = cb.offset_gain(dtheta);
            prop_assert!(g >= 0.0);
            prop_assert!(g <= cb.peak_gain() * (1.0 + 1e-12));
            prop_assert!((g - cb.offset_gain(-dtheta)).abs() <= 1e-12 * cb.peak_gain());
        }

        #[test]
        fn rotation_invariance(theta in -PI..PI, j in 1usize..12, k in 1usize..12) {
            let cb = Codebook::hamming(29, 12).unwrap();
            let shifted = theta + cb.look_dir(k) - cb.look_dir(j);
            let a = cb.gain(j, theta);
            let b = cb.gain(k, shifted);
            prop_assert!((a - b).abs() <= 1e-12 * cb.peak_gain().max(1.0));
        }
    }
}
