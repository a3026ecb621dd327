//! Regression tests whose type II error is controlled only for standardized
//! effects of at least `d*`.
//!
//! Effect sizes are Cohen's d in predictor-SD units, `d_k = β_k · sd(X_k) / σ`,
//! so the noncentrality at effect `d` is `d / √(a_k · sd(X_k)²)` where `a_k` is
//! the k-th diagonal entry of `(XᵗX)⁻¹`. A constant column (the intercept) has
//! no standardized effect other than zero, so no alternative needs type II
//! protection and its accept region runs up to the reject cut.

use super::regression::RegressionFit;
use super::report::{TestReport, Thresholds};
use crate::decision::{four_cut_decision, DecisionProbs, ErrorBudget, FourCut};
use crate::error::{Error, Result};
use crate::specfun::roots::brent;
use crate::specfun::{nct_cdf_raw, t_quantile_raw, t_sf_raw, DegreesOfFreedom, Probability};

const SEARCH_LIMIT: f64 = 1e3;

/// `P(-c <= T_{ν,δ} <= c)`.
fn central_mass(c: f64, df: f64, delta: f64) -> f64 {
    nct_cdf_raw(c, df, delta) - nct_cdf_raw(-c, df, delta)
}

fn solve_cut(delta: f64, df: f64, beta: f64, upper: f64) -> Result<f64> {
    brent(|c| central_mass(c, df, delta) - beta, 0.0, upper, 1e-13, 1e-12)
}

/// Accept cut `c0 >= 0` with `P(-c0 <= T_{df,δ*} <= c0) = beta`, `δ* = d*/√a_k`.
pub fn effect_size_accept_cut(d_star: f64, a_k: f64, df: DegreesOfFreedom, beta: f64) -> Result<f64> {
    if !(d_star > 0.0 && d_star.is_finite()) {
        return Err(Error::Domain(format!("effect size must be positive, got {d_star}")));
    }
    if !(a_k > 0.0 && a_k.is_finite()) {
        return Err(Error::Domain(format!("a_k must be positive, got {a_k}")));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidLevel(format!("beta = {beta} must lie in (0, 1)")));
    }
    let delta = d_star / a_k.sqrt();
    if central_mass(SEARCH_LIMIT, df.get(), delta) < beta {
        return Err(Error::Numeric(format!(
            "no accept cut in [0, {SEARCH_LIMIT}] reaches beta = {beta} at delta = {delta}"
        )));
    }
    solve_cut(delta, df.get(), beta, SEARCH_LIMIT)
}

/// `a_k · sd(X_k)²`, the `(XᵗX)⁻¹` diagonal of the design with unit-SD
/// columns; `None` for a constant column.
pub fn standardized_a_k(fit: &RegressionFit, j: usize) -> Option<f64> {
    let sd = fit.column_sd[j];
    if sd > 0.0 {
        Some(fit.xtx_inverse[(j, j)] * sd * sd)
    } else {
        None
    }
}

fn check_index(fit: &RegressionFit, j: usize) -> Result<()> {
    if j < fit.d() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("coefficient {j} out of range (d = {})", fit.d())))
    }
}

/// Symmetric cuts `(accept, reject)` for coefficient `j`; the accept cut never
/// exceeds the reject cut.
fn cuts_for(fit: &RegressionFit, j: usize, d_star: f64, budget: ErrorBudget) -> Result<FourCut> {
    let df = fit.df_resid.get();
    let reject = t_quantile_raw(1.0 - 0.5 * budget.alpha(), df)?;
    let accept = match standardized_a_k(fit, j) {
        None => reject,
        Some(a) => {
            let delta = d_star / a.sqrt();
            if central_mass(reject, df, delta) >= budget.beta() {
                solve_cut(delta, df, budget.beta(), reject)?
            } else {
                reject
            }
        }
    };
    FourCut::symmetric(accept, reject)
}

fn check_effect(d_star: f64) -> Result<()> {
    if d_star > 0.0 && d_star.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("effect size must be positive, got {d_star}")))
    }
}

/// Agnostic test of `β_j = 0` on `|t_j|`: reject above `t_df(1-α/2)`, accept up
/// to the effect-size cut.
pub fn effect_size_regression_test(fit: &RegressionFit, j: usize, d_star: f64, budget: ErrorBudget) -> Result<TestReport> {
    check_index(fit, j)?;
    check_effect(d_star)?;
    fit.require_nondegenerate()?;
    let t = fit.beta_hat[j] / fit.std_error(j);
    let cuts = cuts_for(fit, j, d_star, budget)?;
    Ok(TestReport {
        statistic: t,
        p_value: Some(Probability::clamped(2.0 * t_sf_raw(t.abs(), fit.df_resid.get()))),
        thresholds: Thresholds::FourCut(cuts),
        decision: four_cut_decision(t, cuts),
    })
}

/// Probabilities of each decision of [`effect_size_regression_test`] when the
/// true standardized effect of coefficient `j` is `effect`.
pub fn effect_size_decision_probs(
    fit: &RegressionFit,
    j: usize,
    d_star: f64,
    budget: ErrorBudget,
    effect: f64,
) -> Result<DecisionProbs> {
    check_index(fit, j)?;
    check_effect(d_star)?;
    let a = standardized_a_k(fit, j)
        .ok_or_else(|| Error::InvalidConfig(format!("coefficient {j} multiplies a constant column")))?;
    let cuts = cuts_for(fit, j, d_star, budget)?;
    let [c1l, c0l, c0r, c1r] = cuts.as_array();
    let df = fit.df_resid.get();
    let delta = effect / a.sqrt();
    let cdf = |x| nct_cdf_raw(x, df, delta);
    let accept = (cdf(c0r) - cdf(c0l)).max(0.0);
    let reject = cdf(c1l) + (1.0 - cdf(c1r));
    DecisionProbs::from_accept_reject(accept, reject.clamp(0.0, 1.0))
}
