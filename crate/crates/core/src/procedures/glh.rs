use nalgebra::{DMatrix, DVector};

use super::regression::{fit_regression, RegressionData};
use super::report::{TestReport, Thresholds};
use crate::decision::{pvalue_decision, ErrorBudget};
use crate::error::{Error, Result};
use crate::specfun::{f_sf, DegreesOfFreedom};

/// Agnostic test of the general linear hypothesis `Kβ = γ0` through the F
/// statistic's p-value, with `(q, n - d)` degrees of freedom.
pub fn glh_f_test(data: &RegressionData, k: &DMatrix<f64>, gamma0: &DVector<f64>, budget: ErrorBudget) -> Result<TestReport> {
    budget.require_coherent()?;
    let (q, d) = k.shape();
    if d != data.d() || gamma0.len() != q || q == 0 || q > d {
        return Err(Error::InvalidConfig(format!(
            "contrast matrix is {q}x{d} and gamma0 has length {}, design has {} columns",
            gamma0.len(),
            data.d()
        )));
    }
    let svd = k.clone().svd(false, false);
    let largest = svd.singular_values.max();
    if svd.singular_values.iter().filter(|s| **s > 1e-12 * largest).count() < q {
        return Err(Error::SingularContrast);
    }

    let fit = fit_regression(data)?;
    fit.require_nondegenerate()?;
    let diff = k * &fit.beta_hat - gamma0;
    let middle = k * &fit.xtx_inverse * k.transpose();
    let chol = middle.cholesky().ok_or(Error::SingularContrast)?;
    let quad = diff.dot(&chol.solve(&diff));
    let f = (quad / q as f64 / fit.sigma2_hat).max(0.0);
    let p = f_sf(f, DegreesOfFreedom::new(q as f64)?, fit.df_resid)?;

    Ok(TestReport {
        statistic: f,
        p_value: Some(p),
        thresholds: Thresholds::PValue(budget),
        decision: pvalue_decision(p, budget)?,
    })
}
