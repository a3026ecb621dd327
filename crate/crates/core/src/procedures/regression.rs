use nalgebra::{DMatrix, DVector};

use super::report::{TestReport, Thresholds};
use super::sample::HypothesisSide;
use super::t_test::{t_cut_rule, t_four_cut};
use crate::decision::{cut_decision, four_cut_decision, ErrorBudget};
use crate::error::{Error, Result};
use crate::specfun::{t_sf_raw, DegreesOfFreedom, Probability};

/// Relative size below which a diagonal entry of R counts as zero.
const RANK_TOL: f64 = 1e-10;

/// Design matrix (n × d, full column rank, n > d) and response vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionData {
    design: DMatrix<f64>,
    response: DVector<f64>,
}

impl RegressionData {
    pub fn new(design: DMatrix<f64>, response: DVector<f64>) -> Result<Self> {
        let (n, d) = design.shape();
        if response.len() != n {
            return Err(Error::InvalidConfig(format!("design has {n} rows but response has {}", response.len())));
        }
        if d == 0 || n <= d {
            return Err(Error::InvalidConfig(format!("need n > d >= 1 (n = {n}, d = {d})")));
        }
        if design.iter().chain(response.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("design and response must be finite".into()));
        }
        Ok(Self { design, response })
    }

    /// Row-major convenience constructor.
    pub fn from_rows(rows: &[Vec<f64>], response: Vec<f64>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidConfig("design rows have unequal length".into()));
        }
        let design = DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j]);
        Self::new(design, DVector::from_vec(response))
    }

    pub fn design(&self) -> &DMatrix<f64> {
        &self.design
    }

    pub fn response(&self) -> &DVector<f64> {
        &self.response
    }

    pub fn n(&self) -> usize {
        self.design.nrows()
    }

    pub fn d(&self) -> usize {
        self.design.ncols()
    }
}

/// Least-squares fit.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionFit {
    pub beta_hat: DVector<f64>,
    /// `(XᵗX)⁻¹`.
    pub xtx_inverse: DMatrix<f64>,
    /// `RSS / (n - d)`.
    pub sigma2_hat: f64,
    pub rss: f64,
    pub df_resid: DegreesOfFreedom,
    pub n: usize,
    /// Sample standard deviation of each design column; zero for the intercept.
    pub column_sd: Vec<f64>,
    /// `Σ yᵢ²`, used to judge whether a residual sum is numerically zero.
    pub(crate) response_energy: f64,
}

impl RegressionFit {
    pub fn d(&self) -> usize {
        self.beta_hat.len()
    }

    /// Standard error of coefficient `j`.
    pub fn std_error(&self, j: usize) -> f64 {
        (self.sigma2_hat * self.xtx_inverse[(j, j)]).sqrt()
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.rss <= 1e-26 * self.response_energy.max(f64::MIN_POSITIVE) {
            Err(Error::DegenerateFit)
        } else {
            Ok(())
        }
    }
}

/// Ordinary least squares through a Householder QR of the design.
pub fn fit_regression(data: &RegressionData) -> Result<RegressionFit> {
    let x = data.design();
    let y = data.response();
    let (n, d) = x.shape();

    let qr = x.clone().qr();
    let r = qr.r();
    let q = qr.q();
    let biggest = r.diagonal().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rank = r.diagonal().iter().filter(|v| v.abs() > RANK_TOL * biggest).count();
    if rank < d {
        return Err(Error::SingularDesign { rank, columns: d });
    }
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(d, d))
        .ok_or(Error::SingularDesign { rank, columns: d })?;
    let beta_hat = &r_inv * (q.transpose() * y);
    let xtx_inverse = &r_inv * r_inv.transpose();
    let residuals = y - x * &beta_hat;
    let rss = residuals.norm_squared();
    let df = (n - d) as f64;

    let column_sd = (0..d)
        .map(|j| {
            let col = x.column(j);
            let mean = col.mean();
            (col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0)).sqrt()
        })
        .collect();

    Ok(RegressionFit {
        beta_hat,
        xtx_inverse,
        sigma2_hat: rss / df,
        rss,
        df_resid: DegreesOfFreedom::new(df)?,
        n,
        column_sd,
        response_energy: y.norm_squared(),
    })
}

/// Agnostic test of `kᵗβ <= c` or `kᵗβ = c` with the studentized contrast
/// `V = (kᵗβ̂ - c) / √(kᵗ(XᵗX)⁻¹k · σ̂²)` and `t_{n-d}` thresholds.
pub fn regression_contrast_test(
    fit: &RegressionFit,
    k: &DVector<f64>,
    c: f64,
    budget: ErrorBudget,
    side: HypothesisSide,
) -> Result<TestReport> {
    if k.len() != fit.d() {
        return Err(Error::InvalidConfig(format!("contrast has length {} but fit has {} coefficients", k.len(), fit.d())));
    }
    fit.require_nondegenerate()?;
    let scale = (k.dot(&(&fit.xtx_inverse * k)) * fit.sigma2_hat).sqrt();
    if !(scale > 0.0) {
        return Err(Error::InvalidConfig("contrast vector is zero".into()));
    }
    let v = (k.dot(&fit.beta_hat) - c) / scale;
    let df = fit.df_resid.get();
    Ok(match side {
        HypothesisSide::LessEqual => {
            let rule = t_cut_rule(df, budget)?;
            TestReport {
                statistic: v,
                p_value: Some(Probability::clamped(t_sf_raw(v, df))),
                thresholds: Thresholds::Cut(rule),
                decision: cut_decision(v, rule),
            }
        }
        HypothesisSide::Equal => {
            let cuts = t_four_cut(df, budget)?;
            TestReport {
                statistic: v,
                p_value: Some(Probability::clamped(2.0 * t_sf_raw(v.abs(), df))),
                thresholds: Thresholds::FourCut(cuts),
                decision: four_cut_decision(v, cuts),
            }
        }
    })
}
