//! Analytic decision-probability curves.
//!
//! Each curve family implements [`PowerModel`]; the sample-mean families are
//! registered by name so front ends can pick one at runtime.

use crate::decision::{DecisionProbs, ErrorBudget};
use crate::error::{Error, Result};
use crate::procedures::{effect_size_decision_probs, t_decision_probs, z_decision_probs, HypothesisSide, RegressionFit};

/// Decision probabilities as a function of the parameter `theta`.
pub trait PowerModel: Send + Sync {
    fn name(&self) -> &str;
    fn in_null(&self, theta: f64) -> bool;
    fn probs(&self, theta: f64) -> Result<DecisionProbs>;
}

/// Parameters shared by the mean-test families.
#[derive(Debug, Clone, Copy)]
pub struct MeanSetting {
    pub mu0: f64,
    pub sigma: f64,
    pub n: usize,
    pub budget: ErrorBudget,
}

struct ZModel(MeanSetting);
struct TOneSided(MeanSetting);
struct TTwoSided(MeanSetting);

impl PowerModel for ZModel {
    fn name(&self) -> &str {
        "z"
    }
    fn in_null(&self, theta: f64) -> bool {
        theta <= self.0.mu0
    }
    fn probs(&self, theta: f64) -> Result<DecisionProbs> {
        let s = self.0;
        z_decision_probs(theta, s.mu0, s.sigma, s.n, s.budget)
    }
}

impl PowerModel for TOneSided {
    fn name(&self) -> &str {
        "t_one"
    }
    fn in_null(&self, theta: f64) -> bool {
        theta <= self.0.mu0
    }
    fn probs(&self, theta: f64) -> Result<DecisionProbs> {
        let s = self.0;
        t_decision_probs(theta, s.sigma, s.n, s.mu0, s.budget, HypothesisSide::LessEqual)
    }
}

impl PowerModel for TTwoSided {
    fn name(&self) -> &str {
        "t_two"
    }
    fn in_null(&self, theta: f64) -> bool {
        theta == self.0.mu0
    }
    fn probs(&self, theta: f64) -> Result<DecisionProbs> {
        let s = self.0;
        t_decision_probs(theta, s.sigma, s.n, s.mu0, s.budget, HypothesisSide::Equal)
    }
}

type Constructor = fn(MeanSetting) -> Box<dyn PowerModel>;

const REGISTRY: &[(&str, Constructor)] = &[
    ("z", |s| Box::new(ZModel(s))),
    ("t_one", |s| Box::new(TOneSided(s))),
    ("t_two", |s| Box::new(TTwoSided(s))),
];

pub fn model_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(name, _)| *name).collect()
}

/// Looks up a mean-test family by name.
pub fn mean_model(name: &str, setting: MeanSetting) -> Result<Box<dyn PowerModel>> {
    REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, make)| make(setting))
        .ok_or_else(|| Error::InvalidConfig(format!("unknown test '{name}' (expected one of {})", model_names().join(", "))))
}

/// Curve of the effect-size regression test for one coefficient, indexed by
/// the true standardized effect (Cohen's d).
pub struct EffectSizeModel<'a> {
    pub fit: &'a RegressionFit,
    pub coefficient: usize,
    pub d_star: f64,
    pub budget: ErrorBudget,
}

impl PowerModel for EffectSizeModel<'_> {
    fn name(&self) -> &str {
        "effect_size"
    }
    fn in_null(&self, theta: f64) -> bool {
        theta == 0.0
    }
    fn probs(&self, theta: f64) -> Result<DecisionProbs> {
        effect_size_decision_probs(self.fit, self.coefficient, self.d_star, self.budget, theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRow {
    pub theta: f64,
    pub probs: DecisionProbs,
    pub power: f64,
}

pub fn power_curve(model: &dyn PowerModel, grid: &[f64]) -> Result<Vec<PowerRow>> {
    grid.iter()
        .map(|&theta| {
            let probs = model.probs(theta)?;
            Ok(PowerRow { theta, probs, power: probs.power(model.in_null(theta)) })
        })
        .collect()
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi || steps == 0 || (steps == 1 && lo != hi) {
        return Err(Error::InvalidConfig(format!("bad grid {lo}:{hi}:{steps}")));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let width = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i == steps - 1 { hi } else { lo + width * i as f64 }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setting() -> MeanSetting {
        MeanSetting { mu0: 0.0, sigma: 1.0, n: 10, budget: ErrorBudget::new(0.05, 0.05).unwrap() }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(model_names(), ["z", "t_one", "t_two"]);
        for name in model_names() {
            assert_eq!(mean_model(name, setting()).unwrap().name(), name);
        }
        assert!(mean_model("chi2", setting()).is_err());
    }

    #[test]
    fn z_curve_at_boundary() {
        let m = mean_model("z", setting()).unwrap();
        let rows = power_curve(m.as_ref(), &linear_grid(-2.0, 2.0, 41).unwrap()).unwrap();
        let mid = rows.iter().find(|r| r.theta == 0.0).unwrap();
        assert!((mid.probs.p_reject - 0.05).abs() < 1e-12);
        assert!((mid.power - mid.probs.p_accept).abs() < 1e-15);
        assert!(rows.windows(2).all(|w| w[1].probs.p_reject >= w[0].probs.p_reject));
    }

    #[test]
    fn t_two_accepts_with_beta_at_null() {
        let m = mean_model("t_two", setting()).unwrap();
        let p = m.probs(0.0).unwrap();
        assert!((p.p_accept - 0.05).abs() < 1e-9);
        assert!((p.p_reject - 0.05).abs() < 1e-9);
    }

    #[test]
    fn grid_shapes() {
        assert_eq!(linear_grid(-1.0, 1.0, 3).unwrap(), [-1.0, 0.0, 1.0]);
        assert_eq!(linear_grid(2.0, 2.0, 1).unwrap(), [2.0]);
        assert!(linear_grid(1.0, 0.0, 5).is_err());
        assert!(linear_grid(0.0, 1.0, 0).is_err());
    }
}
