//! Empirical distribution of Monte Carlo samples.

/// Sorted sample set with CDF, quantile, and reliability queries.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Sorts the samples; NaNs are rejected.
    pub fn from_samples(mut samples: Vec<f64>) -> Self {
        assert!(
            samples.iter().all(|x| !x.is_nan()),
            "NaN sample in distribution"
        );
        samples.sort_by(f64::total_cmp);
        Self { sorted: samples }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    pub fn min(&self) -> f64 {
        *self.sorted.first().expect("non-empty distribution")
    }

    pub fn max(&self) -> f64 {
        *self.sorted.last().expect("non-empty distribution")
    }

    /// Empirical CDF: fraction of samples <= x.
    pub fn cdf(&self, x: f64) -> f64 {
        let below = self.sorted.partition_point(|&s| s <= x);
        below as f64 / self.sorted.len() as f64
    }

    /// Smallest sample whose rank covers quantile `q` in [0, 1].
    pub fn quantile(&self, q: f64) -> f64 {
        assert!((0.0..=1.0).contains(&q));
        let n = self.sorted.len();
        // ceil(q*n), robust to q*n landing one ulp above an integer
        let t = q * n as f64;
        let rank = if t - t.floor() < 1e-9 {
            t.floor() as usize
        } else {
            t.ceil() as usize
        };
        self.sorted[rank.clamp(1, n) - 1]
    }

    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.sorted.len() as f64
    }

    /// Fraction of samples at or above `threshold`.
    pub fn reliability(&self, threshold: f64) -> f64 {
        let below = self.sorted.partition_point(|&s| s < threshold);
        (self.sorted.len() - below) as f64 / self.sorted.len() as f64
    }

    /// (value, CDF) pairs on a quantile grid, for plotting.
    pub fn cdf_curve(&self, points: usize) -> Vec<(f64, f64)> {
        assert!(points >= 2);
        (1..=points)
            .map(|i| {
                let q = i as f64 / points as f64;
                (self.quantile(q), q)
            })
            .collect()
    }
}
