use super::RngStream;
use crate::error::DistError;

/// Discrete distribution over labels, normalized at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoricalDist<L> {
    labels: Vec<L>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl<L: Clone> CategoricalDist<L> {
    pub fn new(outcomes: Vec<(L, f64)>) -> Result<Self, DistError> {
        if outcomes.is_empty() {
            return Err(DistError::Categorical("no outcomes".into()));
        }
        if let Some((_, p)) = outcomes.iter().find(|(_, p)| !p.is_finite() || *p < 0.0) {
            return Err(DistError::Categorical(format!("invalid probability {p}")));
        }
        let total: f64 = outcomes.iter().map(|(_, p)| p).sum();
        if total <= 0.0 {
            return Err(DistError::Categorical("probabilities sum to zero".into()));
        }
        let (labels, raw): (Vec<L>, Vec<f64>) = outcomes.into_iter().unzip();
        let probs: Vec<f64> = raw.iter().map(|p| p / total).collect();
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(CategoricalDist {
            labels,
            probs,
            cumulative,
        })
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Inverse-CDF pick for `u` in `[0, 1)`. Zero-probability outcomes are
    /// never returned.
    pub fn pick(&self, u: f64) -> L {
        let idx = self
            .cumulative
            .iter()
            .zip(&self.probs)
            .position(|(&c, &p)| p > 0.0 && u < c)
            .unwrap_or_else(|| self.probs.iter().rposition(|&p| p > 0.0).unwrap());
        self.labels[idx].clone()
    }

    pub fn sample(&self, stream: &mut RngStream) -> L {
        self.pick(stream.uniform())
    }
}
