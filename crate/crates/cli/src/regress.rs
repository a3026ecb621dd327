use agnostic_core::procedures::{
    effect_size_regression_test, fit_regression, regression_contrast_test, DVector, HypothesisSide, RegressionData,
};
use agnostic_core::specfun::student_t_sf;
use agnostic_core::{Decision, ErrorBudget};

use crate::output::fixed3;

/// One coefficient of the regression report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    pub t_value: f64,
    pub p_value: f64,
    pub decision: Decision,
}

impl ReportRow {
    pub const HEADER: [&'static str; 7] = ["name", "estimate", "std_error", "t_value", "p_value", "decision", "code"];

    pub fn cells(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            fixed3(self.estimate),
            fixed3(self.std_error),
            fixed3(self.t_value),
            fixed3(self.p_value),
            self.decision.to_string(),
            self.decision.code().to_string(),
        ]
    }
}

/// Tests `β_j = 0` for every coefficient. With `d_star > 0` the accept region
/// comes from the effect-size calibration; `d_star = 0` uses the plain
/// bilateral `(α, β)` t-test.
pub fn cmd_regress(
    data: &RegressionData,
    names: &[String],
    budget: ErrorBudget,
    d_star: f64,
) -> agnostic_core::Result<Vec<ReportRow>> {
    if !(d_star >= 0.0 && d_star.is_finite()) {
        return Err(agnostic_core::Error::Domain(format!("effect size must be >= 0, got {d_star}")));
    }
    let fit = fit_regression(data)?;
    fit.require_nondegenerate()?;
    let df = fit.df_resid;
    (0..fit.d())
        .map(|j| {
            let estimate = fit.beta_hat[j];
            let std_error = fit.std_error(j);
            let t_value = estimate / std_error;
            let decision = if d_star > 0.0 {
                effect_size_regression_test(&fit, j, d_star, budget)?.decision
            } else {
                let k = DVector::from_fn(fit.d(), |i, _| if i == j { 1.0 } else { 0.0 });
                regression_contrast_test(&fit, &k, 0.0, budget, HypothesisSide::Equal)?.decision
            };
            let p_value = 2.0 * student_t_sf(t_value.abs(), df)?.get();
            Ok(ReportRow {
                name: names.get(j).cloned().unwrap_or_else(|| format!("x{j}")),
                estimate,
                std_error,
                t_value,
                p_value,
                decision,
            })
        })
        .collect()
}
