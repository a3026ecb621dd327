//! Named simulation scenarios, each a table plus in-band checks.

use super::consistency::{boundary_nonconsistency_demo, build_consistency_schedule, consistency_run, default_rate};
use super::harness::{binomial_se, dominance_check, estimate_decision_probs, z_region_coverage, NormalModel, SimConfig, ZTestProcedure};
use super::table::SimRow;
use crate::decision::ErrorBudget;
use crate::error::{Error, Result};
use crate::power::linear_grid;
use crate::regions::ScalarHypothesis;

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const CONSISTENCY_NS: [usize; 5] = [25, 100, 400, 1600, 6400];

/// One comparison against its tolerance band.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
}

impl Check {
    fn new(label: impl Into<String>, passed: bool) -> Self {
        Self { label: label.into(), passed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutcome {
    pub rows: Vec<SimRow>,
    pub checks: Vec<Check>,
}

impl ScenarioOutcome {
    pub fn all_in_band(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub trait Scenario: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn default_replicates(&self) -> u64;
    fn run(&self, seed: u64, replicates: u64) -> Result<ScenarioOutcome>;
}

fn symmetric_budget() -> Result<ErrorBudget> {
    ErrorBudget::new(0.05, 0.05)
}

const BASE: NormalModel = NormalModel { theta: 0.0, sigma: 1.0, n: 10 };

fn band_check(label: &str, estimate: f64, target: f64, replicates: u64) -> Check {
    let band = 3.0 * binomial_se(target, replicates);
    Check::new(format!("{label}: {estimate:.5} vs {target} +- {band:.5}"), (estimate - target).abs() <= band)
}

struct Size;
struct Coverage;
struct Dominance;
struct Consistency;
struct Boundary;

impl Scenario for Size {
    fn name(&self) -> &'static str {
        "size"
    }
    fn about(&self) -> &'static str {
        "z-test of mu <= 0 at the boundary, alpha = beta = 0.05, n = 10"
    }
    fn default_replicates(&self) -> u64 {
        100_000
    }
    fn run(&self, seed: u64, replicates: u64) -> Result<ScenarioOutcome> {
        let budget = symmetric_budget()?;
        let z = ZTestProcedure::new(0.0, 1.0, BASE.n, budget)?;
        let est = estimate_decision_probs(&z, BASE, &SimConfig::new(replicates, seed, vec![])?)?;
        let row = SimRow { n: BASE.n, theta: 0.0, probs: est.probs, power: est.power(true), se: est.power_se(true) };
        Ok(ScenarioOutcome {
            rows: vec![row],
            checks: vec![
                band_check("reject rate at boundary", est.probs.p_reject, budget.alpha(), replicates),
                band_check("accept rate at boundary", est.probs.p_accept, budget.beta(), replicates),
            ],
        })
    }
}

impl Scenario for Coverage {
    fn name(&self) -> &'static str {
        "coverage"
    }
    fn about(&self) -> &'static str {
        "coverage of the z region with alpha = 0.05 (nominal 0.90), n = 10"
    }
    fn default_replicates(&self) -> u64 {
        100_000
    }
    fn run(&self, seed: u64, replicates: u64) -> Result<ScenarioOutcome> {
        let alpha = 0.05;
        let (cover, se) = z_region_coverage(alpha, BASE, &SimConfig::new(replicates, seed, vec![])?)?;
        // Tabulated as the region test of H0: mu <= theta, whose agnostic outcome is coverage.
        let miss = 0.5 * (1.0 - cover);
        let probs = crate::DecisionProbs { p_accept: miss, p_agnostic: cover, p_reject: miss };
        Ok(ScenarioOutcome {
            rows: vec![SimRow { n: BASE.n, theta: 0.0, probs, power: cover, se }],
            checks: vec![band_check("coverage", cover, 1.0 - 2.0 * alpha, replicates)],
        })
    }
}

impl Scenario for Dominance {
    fn name(&self) -> &'static str {
        "dominance"
    }
    fn about(&self) -> &'static str {
        "z-test power vs. the trivial (0.05, 0.05) test on mu in [-1, 1], n = 10"
    }
    fn default_replicates(&self) -> u64 {
        10_000
    }
    fn run(&self, seed: u64, replicates: u64) -> Result<ScenarioOutcome> {
        let budget = symmetric_budget()?;
        let z = ZTestProcedure::new(0.0, 1.0, BASE.n, budget)?;
        let cfg = SimConfig::new(replicates, seed, linear_grid(-1.0, 1.0, 21)?)?;
        let report = dominance_check(&z, &ScalarHypothesis::LessEqual(0.0), budget, BASE, &cfg)?;
        let rows = report
            .rows
            .iter()
            .map(|r| SimRow { n: BASE.n, theta: r.theta, probs: r.estimate.probs, power: r.power, se: r.se })
            .collect();
        let checks = report
            .rows
            .iter()
            .map(|r| Check::new(format!("power at {:.2}: {:.4} >= {} - 3se", r.theta, r.power, r.trivial_power), r.holds))
            .collect();
        Ok(ScenarioOutcome { rows, checks })
    }
}

/// π̂ never drops by more than 3 combined standard errors along `n`.
pub fn nondecreasing_within_noise(rows: &[&SimRow]) -> bool {
    rows.windows(2).all(|w| w[1].power >= w[0].power - 3.0 * w[0].se.hypot(w[1].se))
}

impl Scenario for Consistency {
    fn name(&self) -> &'static str {
        "consistency"
    }
    fn about(&self) -> &'static str {
        "consistent bilateral z-tests with alpha_n = beta_n = exp(-sqrt n), mu in {0, 1}"
    }
    fn default_replicates(&self) -> u64 {
        100_000
    }
    fn run(&self, seed: u64, replicates: u64) -> Result<ScenarioOutcome> {
        let schedule = build_consistency_schedule(1.0, &CONSISTENCY_NS, default_rate)?;
        let rows = consistency_run(&schedule, &[0.0, 1.0], &SimConfig::new(replicates, seed, vec![])?)?;
        let mut checks = Vec::new();
        for mu in [0.0, 1.0] {
            let path: Vec<&SimRow> = rows.iter().filter(|r| r.theta == mu).collect();
            checks.push(Check::new(format!("power at mu = {mu} nondecreasing in n"), nondecreasing_within_noise(&path)));
            let last = path.last().map_or(0.0, |r| r.power);
            checks.push(Check::new(format!("power at mu = {mu}, largest n: {last:.5} >= 0.99"), last >= 0.99));
        }
        Ok(ScenarioOutcome { rows, checks })
    }
}

impl Scenario for Boundary {
    fn name(&self) -> &'static str {
        "boundary"
    }
    fn about(&self) -> &'static str {
        "fixed alpha = beta = 0.05 z-tests: power at the boundary mu = 0 stays at beta"
    }
    fn default_replicates(&self) -> u64 {
        100_000
    }
    fn run(&self, seed: u64, replicates: u64) -> Result<ScenarioOutcome> {
        let budget = symmetric_budget()?;
        let rows = boundary_nonconsistency_demo(budget, &CONSISTENCY_NS, &SimConfig::new(replicates, seed, vec![])?)?;
        let bound = budget.alpha().max(budget.beta());
        let checks = rows
            .iter()
            .filter(|r| r.theta == 0.0)
            .map(|r| Check::new(format!("n = {}: {:.5} <= {bound} + 3se", r.n, r.power), r.power <= bound + 3.0 * r.se))
            .collect();
        Ok(ScenarioOutcome { rows, checks })
    }
}

const REGISTRY: &[&dyn Scenario] = &[&Size, &Coverage, &Dominance, &Consistency, &Boundary];

pub fn scenario_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.name()).collect()
}

pub fn scenario(name: &str) -> Result<&'static dyn Scenario> {
    REGISTRY
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown scenario '{name}' (expected one of {})", scenario_names().join(", "))))
}
