use serde::{Deserialize, Serialize};

use super::RngStream;
use crate::error::DistError;

/// Triangular distribution, parameters in `(min, mode, max)` order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct TriangularDist {
    min: f64,
    mode: f64,
    max: f64,
}

impl TriangularDist {
    pub fn new(min: f64, mode: f64, max: f64) -> Result<Self, DistError> {
        let ok = [min, mode, max].iter().all(|v| v.is_finite())
            && min <= mode
            && mode <= max
            && min < max;
        if !ok {
            return Err(DistError::Triangular { min, mode, max });
        }
        Ok(TriangularDist { min, mode, max })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn mode(&self) -> f64 {
        self.mode
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn mean(&self) -> f64 {
        (self.min + self.mode + self.max) / 3.0
    }

    /// Multiplies all three parameters by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor > 0.0 && factor.is_finite(), "scale must be positive");
        TriangularDist {
            min: self.min * factor,
            mode: self.mode * factor,
            max: self.max * factor,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (a, c, b) = (self.min, self.mode, self.max);
        if x <= a {
            0.0
        } else if x >= b {
            1.0
        } else if x <= c {
            (x - a) * (x - a) / ((b - a) * (c - a))
        } else {
            1.0 - (b - x) * (b - x) / ((b - a) * (b - c))
        }
    }

    /// Inverse CDF.
    pub fn quantile(&self, u: f64) -> f64 {
        let (a, c, b) = (self.min, self.mode, self.max);
        let split = (c - a) / (b - a);
        let x = if u < split {
            a + (u * (b - a) * (c - a)).sqrt()
        } else {
            b - ((1.0 - u) * (b - a) * (b - c)).sqrt()
        };
        x.clamp(a, b)
    }

    pub fn sample(&self, stream: &mut RngStream) -> f64 {
        self.quantile(stream.uniform())
    }
}

impl TryFrom<[f64; 3]> for TriangularDist {
    type Error = DistError;

    fn try_from(v: [f64; 3]) -> Result<Self, Self::Error> {
        TriangularDist::new(v[0], v[1], v[2])
    }
}

impl From<TriangularDist> for [f64; 3] {
    fn from(t: TriangularDist) -> Self {
        [t.min, t.mode, t.max]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::fork_stream;
    use proptest::prelude::*;

    #[test]
    fn symmetric_median_is_mode() {
        let t = TriangularDist::new(13.0, 14.0, 15.0).unwrap();
        assert_eq!(t.quantile(0.5), 14.0);
    }

    #[test]
    fn quantile_at_zero_is_min() {
        let t = TriangularDist::new(10.0, 25.0, 55.0).unwrap();
        assert_eq!(t.quantile(0.0), 10.0);
    }

    #[test]
    fn rejects_mode_above_max() {
        assert!(TriangularDist::new(15.0, 17.0, 16.0).is_err());
        assert!(TriangularDist::new(5.0, 5.0, 5.0).is_err());
        assert!(TriangularDist::new(5.0, 4.0, 6.0).is_err());
    }

    #[test]
    fn degenerate_mode_at_an_endpoint() {
        let left = TriangularDist::new(0.0, 0.0, 1.0).unwrap();
        let right = TriangularDist::new(0.0, 1.0, 1.0).unwrap();
        for u in [0.0, 0.25, 0.5, 0.999] {
            assert!((0.0..=1.0).contains(&left.quantile(u)));
            assert!((0.0..=1.0).contains(&right.quantile(u)));
        }
    }

    #[test]
    fn monte_carlo_mean_matches_analytic() {
        let t = TriangularDist::new(15.0, 16.0, 17.0).unwrap();
        let mut s = fork_stream(2024, "tria-mean");
        let n = 1_000_000;
        let mean = (0..n).map(|_| t.sample(&mut s)).sum::<f64>() / n as f64;
        assert!((mean - 16.0).abs() < 0.01, "mean {mean}");
    }

    proptest! {
        #[test]
        fn quantile_inverts_cdf(
            a in -50.0f64..50.0, w1 in 0.0f64..40.0, w2 in 0.01f64..40.0, u in 0.0f64..1.0
        ) {
            let t = TriangularDist::new(a, a + w1, a + w1 + w2).unwrap();
            let x = t.quantile(u);
            prop_assert!(x >= t.min() && x <= t.max());
            prop_assert!((t.cdf(x) - u).abs() < 1e-9);
        }
    }
}
