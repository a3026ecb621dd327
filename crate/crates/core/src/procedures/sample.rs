use crate::error::{Error, Result};

/// An i.i.d. sample of at least two finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample(Vec<f64>);

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::DegenerateSample(format!("need n >= 2, got {}", values.len())));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::DegenerateSample(format!("non-finite observation {bad}")));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }

    /// Unbiased variance, `(n-1)` denominator.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.0.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (self.0.len() - 1) as f64
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }
}

/// Shape of the null hypothesis: `θ <= value` (unilateral) or `θ = value` (bilateral).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisSide {
    LessEqual,
    Equal,
}
