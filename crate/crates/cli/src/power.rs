use agnostic_core::power::{mean_model, power_curve, EffectSizeModel, MeanSetting, PowerRow};
use agnostic_core::procedures::{fit_regression, RegressionData};
use agnostic_core::{Error, Result};

/// Which curve to compute.
pub enum PowerRequest<'a> {
    /// A registered sample-mean test (`z`, `t_one`, `t_two`) over true means.
    Mean { test: &'a str, setting: MeanSetting },
    /// The effect-size regression test for one coefficient over Cohen's d.
    EffectSize { data: &'a RegressionData, coefficient: usize, d_star: f64, setting: MeanSetting },
}

pub const HEADER: [&str; 5] = ["theta", "p_accept", "p_agnostic", "p_reject", "power"];

/// Analytic decision probabilities over `grid`.
pub fn cmd_power(request: PowerRequest<'_>, grid: &[f64]) -> Result<Vec<PowerRow>> {
    match request {
        PowerRequest::Mean { test, setting } => power_curve(mean_model(test, setting)?.as_ref(), grid),
        PowerRequest::EffectSize { data, coefficient, d_star, setting } => {
            if coefficient >= data.d() {
                return Err(Error::InvalidConfig(format!("coefficient {coefficient} out of range")));
            }
            let fit = fit_regression(data)?;
            let model = EffectSizeModel { fit: &fit, coefficient, d_star, budget: setting.budget };
            power_curve(&model, grid)
        }
    }
}

pub fn cells(row: &PowerRow) -> Vec<String> {
    let p = row.probs;
    [row.theta, p.p_accept, p.p_agnostic, p.p_reject, row.power].iter().map(|v| v.to_string()).collect()
}
