//! Monte Carlo estimation of decision probabilities.
//!
//! Replicate `b` draws its data from `ReplicateRng::new(seed, b, stream)`, and
//! results are reduced as integer counts, so estimates are bit-identical no
//! matter how rayon schedules the work.

use rayon::prelude::*;

use super::rng::ReplicateRng;
use crate::decision::{Decision, DecisionProbs, ErrorBudget, FourCut};
use crate::error::{Error, Result};
use crate::procedures::{t_cut_rule, t_four_cut, z_cut_rule, Sample};
use crate::regions::{region_decision, z_region, ScalarHypothesis};
use crate::CutRule;

/// Monte Carlo settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub replicates: u64,
    pub seed: u64,
    pub grid: Vec<f64>,
}

impl SimConfig {
    pub fn new(replicates: u64, seed: u64, grid: Vec<f64>) -> Result<Self> {
        if replicates == 0 {
            return Err(Error::InvalidConfig("replicates must be at least 1".into()));
        }
        Ok(Self { replicates, seed, grid })
    }
}

/// IID `N(theta, sigma²)` samples of size `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModel {
    pub theta: f64,
    pub sigma: f64,
    pub n: usize,
}

impl NormalModel {
    pub fn at(self, theta: f64) -> Self {
        Self { theta, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite() && self.theta.is_finite()) || self.n == 0 {
            return Err(Error::Domain(format!("invalid data model {self:?}")));
        }
        Ok(())
    }

    fn fill(&self, rng: &mut ReplicateRng, buf: &mut Vec<f64>) {
        buf.clear();
        buf.extend((0..self.n).map(|_| self.theta + self.sigma * rng.normal()));
    }
}

/// A test that maps one observed sample to a decision.
pub trait SampleProcedure: Send + Sync {
    fn name(&self) -> &str;
    fn decide(&self, sample: &[f64]) -> Result<Decision>;
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn studentized(x: &[f64], mu0: f64) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::DegenerateSample("need at least two observations".into()));
    }
    let m = mean(x);
    let ss: f64 = x.iter().map(|v| (v - m) * (v - m)).sum();
    let s2 = ss / (x.len() - 1) as f64;
    if !(s2 > 0.0) {
        return Err(Error::DegenerateSample("sample variance is zero".into()));
    }
    Ok((m - mu0) / (s2 / x.len() as f64).sqrt())
}

/// UMP z-test of `μ <= μ0` for samples of a fixed size.
pub struct ZTestProcedure {
    rule: CutRule,
    n: usize,
}

impl ZTestProcedure {
    pub fn new(mu0: f64, sigma: f64, n: usize, budget: ErrorBudget) -> Result<Self> {
        Ok(Self { rule: z_cut_rule(mu0, sigma, n, budget)?, n })
    }
}

impl SampleProcedure for ZTestProcedure {
    fn name(&self) -> &str {
        "z"
    }
    fn decide(&self, sample: &[f64]) -> Result<Decision> {
        if sample.len() != self.n {
            return Err(Error::InvalidConfig(format!("z-test built for n = {}, got {}", self.n, sample.len())));
        }
        Ok(self.rule.decide(mean(sample)))
    }
}

enum TCuts {
    One(CutRule),
    Two(FourCut),
}

/// Unilateral or bilateral t-test for samples of a fixed size.
pub struct TTestProcedure {
    mu0: f64,
    n: usize,
    cuts: TCuts,
}

impl TTestProcedure {
    pub fn unilateral(mu0: f64, n: usize, budget: ErrorBudget) -> Result<Self> {
        let df = Self::df(n)?;
        Ok(Self { mu0, n, cuts: TCuts::One(t_cut_rule(df, budget)?) })
    }

    pub fn bilateral(mu0: f64, n: usize, budget: ErrorBudget) -> Result<Self> {
        let df = Self::df(n)?;
        Ok(Self { mu0, n, cuts: TCuts::Two(t_four_cut(df, budget)?) })
    }

    fn df(n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::Domain("t-test needs n >= 2".into()));
        }
        Ok((n - 1) as f64)
    }
}

impl SampleProcedure for TTestProcedure {
    fn name(&self) -> &str {
        match self.cuts {
            TCuts::One(_) => "t_one",
            TCuts::Two(_) => "t_two",
        }
    }
    fn decide(&self, sample: &[f64]) -> Result<Decision> {
        if sample.len() != self.n {
            return Err(Error::InvalidConfig(format!("t-test built for n = {}, got {}", self.n, sample.len())));
        }
        let t = studentized(sample, self.mu0)?;
        Ok(match &self.cuts {
            TCuts::One(rule) => rule.decide(t),
            TCuts::Two(cuts) => cuts.decide(t),
        })
    }
}

/// Region test: `z_region` at level `alpha` against a fixed hypothesis.
pub struct ZRegionProcedure {
    pub sigma: f64,
    pub alpha: f64,
    pub h0: ScalarHypothesis,
}

impl SampleProcedure for ZRegionProcedure {
    fn name(&self) -> &str {
        "z_region"
    }
    fn decide(&self, sample: &[f64]) -> Result<Decision> {
        let s = Sample::new(sample.to_vec())?;
        Ok(region_decision(&z_region(&s, self.sigma, self.alpha)?, &self.h0))
    }
}

/// Ignores the data and always returns the same decision.
pub struct ConstantProcedure(pub Decision);

impl SampleProcedure for ConstantProcedure {
    fn name(&self) -> &str {
        "constant"
    }
    fn decide(&self, _: &[f64]) -> Result<Decision> {
        Ok(self.0)
    }
}

/// Decision frequencies with their binomial standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub probs: DecisionProbs,
    pub counts: [u64; 3],
    pub replicates: u64,
}

impl McEstimate {
    pub fn from_counts(counts: [u64; 3]) -> Self {
        let b = counts.iter().sum::<u64>();
        let f = |c: u64| c as f64 / b as f64;
        Self {
            probs: DecisionProbs { p_accept: f(counts[0]), p_agnostic: f(counts[1]), p_reject: f(counts[2]) },
            counts,
            replicates: b,
        }
    }

    /// `sqrt(p̂(1-p̂)/B)` for the frequency of `d`.
    pub fn se(&self, d: Decision) -> f64 {
        binomial_se(self.probs.get(d), self.replicates)
    }

    pub fn power(&self, in_null: bool) -> f64 {
        self.probs.power(in_null)
    }

    pub fn power_se(&self, in_null: bool) -> f64 {
        binomial_se(self.power(in_null), self.replicates)
    }
}

pub fn binomial_se(p: f64, replicates: u64) -> f64 {
    (p * (1.0 - p) / replicates as f64).sqrt()
}

fn slot(d: Decision) -> usize {
    match d {
        Decision::Accept => 0,
        Decision::Agnostic => 1,
        Decision::Reject => 2,
    }
}

/// Counts outcomes of `f` over replicates `0..B`, each with its own random stream.
pub(crate) fn count_outcomes<F>(config: &SimConfig, stream: u32, f: F) -> Result<[u64; 3]>
where
    F: Fn(&mut ReplicateRng, &mut Vec<f64>) -> Result<Decision> + Sync,
{
    (0..config.replicates)
        .into_par_iter()
        .map_init(Vec::new, |buf, b| {
            let mut rng = ReplicateRng::new(config.seed, b, stream);
            f(&mut rng, buf).map(|d| {
                let mut c = [0u64; 3];
                c[slot(d)] = 1;
                c
            })
        })
        .try_reduce(|| [0; 3], |a, b| Ok([a[0] + b[0], a[1] + b[1], a[2] + b[2]]))
}

/// Empirical decision frequencies of `test` under `model`.
pub fn estimate_decision_probs(test: &dyn SampleProcedure, model: NormalModel, config: &SimConfig) -> Result<McEstimate> {
    if config.replicates < 100 {
        return Err(Error::InvalidConfig(format!("need at least 100 replicates, got {}", config.replicates)));
    }
    model.validate()?;
    let counts = count_outcomes(config, 0, |rng, buf| {
        model.fill(rng, buf);
        test.decide(buf)
    })?;
    Ok(McEstimate::from_counts(counts))
}

/// Empirical coverage of `z_region` at level `alpha` (nominal `1 - 2α`), with its standard error.
pub fn z_region_coverage(alpha: f64, model: NormalModel, config: &SimConfig) -> Result<(f64, f64)> {
    model.validate()?;
    let counts = count_outcomes(config, 0, |rng, buf| {
        model.fill(rng, buf);
        let region = z_region(&Sample::new(buf.clone())?, model.sigma, alpha)?;
        Ok(if region.contains_point(model.theta) { Decision::Accept } else { Decision::Reject })
    })?;
    let p = counts[0] as f64 / config.replicates as f64;
    Ok((p, binomial_se(p, config.replicates)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceRow {
    pub theta: f64,
    pub in_null: bool,
    pub estimate: McEstimate,
    pub power: f64,
    pub se: f64,
    /// `β` on `H0`, `α` on `H1`.
    pub trivial_power: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    pub rows: Vec<DominanceRow>,
}

impl DominanceReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &DominanceRow> {
        self.rows.iter().filter(|r| !r.holds)
    }
}

/// Compares the power of `test` with the trivial `(α, β)` test, which ignores
/// the data, on every point of `config.grid` (3-s.e. band).
pub fn dominance_check(
    test: &dyn SampleProcedure,
    h0: &ScalarHypothesis,
    budget: ErrorBudget,
    model: NormalModel,
    config: &SimConfig,
) -> Result<DominanceReport> {
    h0.validate()?;
    let null = h0.to_set();
    let rows = config
        .grid
        .iter()
        .map(|&theta| {
            let in_null = null.contains_point(theta);
            let estimate = estimate_decision_probs(test, model.at(theta), config)?;
            let power = estimate.power(in_null);
            let se = estimate.power_se(in_null);
            let trivial_power = if in_null { budget.beta() } else { budget.alpha() };
            Ok(DominanceRow { theta, in_null, estimate, power, se, trivial_power, holds: power >= trivial_power - 3.0 * se })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DominanceReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> ErrorBudget {
        ErrorBudget::new(0.05, 0.05).unwrap()
    }

    fn model() -> NormalModel {
        NormalModel { theta: 0.0, sigma: 1.0, n: 10 }
    }

    #[test]
    fn constant_agnostic_is_exact() {
        let cfg = SimConfig::new(500, 1, vec![]).unwrap();
        let est = estimate_decision_probs(&ConstantProcedure(Decision::Agnostic), model(), &cfg).unwrap();
        assert_eq!((est.probs.p_accept, est.probs.p_agnostic, est.probs.p_reject), (0.0, 1.0, 0.0));
        assert_eq!(est.se(Decision::Agnostic), 0.0);
    }

    #[test]
    fn too_few_replicates() {
        let cfg = SimConfig::new(99, 1, vec![]).unwrap();
        assert!(estimate_decision_probs(&ConstantProcedure(Decision::Accept), model(), &cfg).is_err());
        assert!(SimConfig::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let z = ZTestProcedure::new(0.0, 1.0, 10, budget()).unwrap();
        let cfg = SimConfig::new(2000, 42, vec![]).unwrap();
        let a = estimate_decision_probs(&z, model(), &cfg).unwrap();
        let b = estimate_decision_probs(&z, model(), &cfg).unwrap();
        assert_eq!(a, b);
        let c = estimate_decision_probs(&z, model(), &SimConfig::new(2000, 43, vec![]).unwrap()).unwrap();
        assert_ne!(a.counts, c.counts);
    }

    #[test]
    fn wrong_sample_size_is_an_error() {
        let z = ZTestProcedure::new(0.0, 1.0, 10, budget()).unwrap();
        let cfg = SimConfig::new(100, 1, vec![]).unwrap();
        assert!(estimate_decision_probs(&z, NormalModel { n: 11, ..model() }, &cfg).is_err());
    }

    #[test]
    fn trivial_test_matches_itself() {
        // Accept with prob. β = Reject with prob. α = 1/2 has exactly trivial power.
        struct Coin;
        impl SampleProcedure for Coin {
            fn name(&self) -> &str {
                "coin"
            }
            fn decide(&self, x: &[f64]) -> Result<Decision> {
                Ok(if x[0] <= 0.0 { Decision::Accept } else { Decision::Reject })
            }
        }
        let b = ErrorBudget::new(0.5, 0.5).unwrap();
        let cfg = SimConfig::new(4000, 7, vec![0.0]).unwrap();
        let rep = dominance_check(&Coin, &ScalarHypothesis::LessEqual(0.0), b, model(), &cfg).unwrap();
        let row = rep.rows[0];
        assert!(rep.holds());
        assert!((row.power - 0.5).abs() < 3.0 * row.se);
    }
}
