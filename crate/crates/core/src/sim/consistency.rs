//! Consistent sequences of agnostic tests, and why fixed `(α, β)` cannot give one.
//!
//! For `H0: μ = 0` with known `σ`, shrinking `α_n = β_n` together with an accept
//! half-width `b_n` that vanishes slower than `n^{-1/2}` drives the power to one
//! everywhere. With `(α, β)` held fixed, the power at the boundary of a
//! unilateral hypothesis stays at `β` for every `n`.

use super::harness::{count_outcomes, McEstimate, SimConfig};
use super::table::SimRow;
use crate::decision::{decision_probs_from_four_cut, DecisionProbs, ErrorBudget, FourCut};
use crate::error::{Error, Result};
use crate::procedures::z_cut_rule;
use crate::specfun::{norm_cdf_raw, norm_quantile_raw};

/// `exp(-√n)`.
pub fn default_rate(n: usize) -> f64 {
    (-(n as f64).sqrt()).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleRow {
    pub n: usize,
    pub alpha_n: f64,
    pub beta_n: f64,
    pub a_n: f64,
    pub b_n: f64,
    pub gamma_n: f64,
    /// `(-a_n, -b_n, b_n, a_n)` on the sample mean.
    pub cuts: FourCut,
}

impl ScheduleRow {
    /// Exact decision probabilities when the true mean is `mu`.
    pub fn analytic_probs(&self, mu: f64, sigma: f64) -> Result<DecisionProbs> {
        let scale = (self.n as f64).sqrt() / sigma;
        decision_probs_from_four_cut(|x| norm_cdf_raw((x - mu) * scale), self.cuts)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencySchedule {
    pub sigma: f64,
    pub rows: Vec<ScheduleRow>,
}

/// `a_n = -Φ⁻¹(α_n/2)·σ/√n`, `b_n = min(a_n, n^{-1/4})`,
/// `γ_n = b_n + (-2 log(√(2π) β_n) / n)^{1/2}` with `α_n = β_n = rate(n)`.
pub fn build_consistency_schedule<R: Fn(usize) -> f64>(sigma: f64, n_list: &[usize], rate: R) -> Result<ConsistencySchedule> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    if n_list.is_empty() || n_list[0] == 0 || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("n values must be positive and strictly increasing".into()));
    }
    let rows = n_list
        .iter()
        .map(|&n| {
            let r = rate(n);
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Domain(format!("rate({n}) = {r} is outside (0, 1)")));
            }
            let nf = n as f64;
            let a_n = -norm_quantile_raw(0.5 * r) * sigma / nf.sqrt();
            let b_n = a_n.min(nf.powf(-0.25));
            // The log term is negative once √(2π)β_n >= 1; γ_n is then just b_n.
            let tail = (-2.0 * ((2.0 * std::f64::consts::PI).sqrt() * r).ln() / nf).max(0.0);
            Ok(ScheduleRow {
                n,
                alpha_n: r,
                beta_n: r,
                a_n,
                b_n,
                gamma_n: b_n + tail.sqrt(),
                cuts: FourCut::new(-a_n, -b_n, b_n, a_n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConsistencySchedule { sigma, rows })
}

fn row_from(n: usize, theta: f64, in_null: bool, est: McEstimate) -> SimRow {
    SimRow { n, theta, probs: est.probs, power: est.power(in_null), se: est.power_se(in_null) }
}

/// Simulates the schedule at each `mu`; the sample mean is drawn directly from
/// `N(μ, σ²/n)`, as it is sufficient and the test only looks at it.
pub fn consistency_run(schedule: &ConsistencySchedule, mu_values: &[f64], config: &SimConfig) -> Result<Vec<SimRow>> {
    let mut out = Vec::with_capacity(schedule.rows.len() * mu_values.len());
    for (i, row) in schedule.rows.iter().enumerate() {
        let se = schedule.sigma / (row.n as f64).sqrt();
        for &mu in mu_values {
            let counts = count_outcomes(config, i as u32, |rng, _| Ok(row.cuts.decide(mu + se * rng.normal())))?;
            out.push(row_from(row.n, mu, mu == 0.0, McEstimate::from_counts(counts)));
        }
    }
    Ok(out)
}

/// Shift of the contrast rows in [`boundary_nonconsistency_demo`], in units of `σ`.
pub const CONTRAST_SHIFT: f64 = 0.5;

fn z_family_rows<B>(n_list: &[usize], thetas: &[f64], budget_at: B, config: &SimConfig) -> Result<Vec<SimRow>>
where
    B: Fn(usize) -> Result<ErrorBudget>,
{
    let mut out = Vec::new();
    for (i, &n) in n_list.iter().enumerate() {
        let rule = z_cut_rule(0.0, 1.0, n, budget_at(n)?)?;
        let se = 1.0 / (n as f64).sqrt();
        for &theta in thetas {
            let counts = count_outcomes(config, i as u32, |rng, _| Ok(rule.decide(theta + se * rng.normal())))?;
            out.push(row_from(n, theta, theta <= 0.0, McEstimate::from_counts(counts)));
        }
    }
    Ok(out)
}

/// z-tests of `H0: μ <= 0` (σ = 1) with a fixed budget: rows at the boundary
/// `μ = 0` and at the contrast point `μ = CONTRAST_SHIFT`, for each `n`.
pub fn boundary_nonconsistency_demo(budget: ErrorBudget, n_list: &[usize], config: &SimConfig) -> Result<Vec<SimRow>> {
    budget.require_coherent()?;
    z_family_rows(n_list, &[0.0, CONTRAST_SHIFT], |_| Ok(budget), config)
}

/// Same family at the boundary with `α_n = β_n = rate(n)`: the agnostic
/// frequency tends to one.
pub fn vanishing_budget_boundary<R: Fn(usize) -> f64>(n_list: &[usize], rate: R, config: &SimConfig) -> Result<Vec<SimRow>> {
    z_family_rows(n_list, &[0.0], |n| ErrorBudget::new(rate(n), rate(n)), config)
}
