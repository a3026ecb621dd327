use std::f64::consts::PI;

use super::beta::{ibeta_pair, ln_beta};
use super::normal::norm_quantile_raw;
use super::roots::newton_bracketed;
use super::{open_unit, DegreesOfFreedom, Probability};
use crate::error::{domain, Result};

/// `P(T > |x|)` style tail: returns `0.5 * I_{ν/(ν+x²)}(ν/2, ½)`.
fn half_tail(x: f64, nu: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    let x2 = x * x;
    let denom = nu + x2;
    0.5 * ibeta_pair(0.5 * nu, 0.5, nu / denom, x2 / denom).0
}

pub(crate) fn t_cdf_raw(x: f64, nu: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let tail = half_tail(x, nu);
    if x > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

pub(crate) fn t_sf_raw(x: f64, nu: f64) -> f64 {
    t_cdf_raw(-x, nu)
}

pub(crate) fn t_pdf_raw(x: f64, nu: f64) -> f64 {
    (-ln_beta(0.5, 0.5 * nu) - 0.5 * nu.ln() - 0.5 * (nu + 1.0) * (x * x / nu).ln_1p()).exp()
}

fn not_nan(x: f64) -> Result<f64> {
    if x.is_nan() {
        Err(domain("argument is NaN"))
    } else {
        Ok(x)
    }
}

/// Student-t CDF with `df` degrees of freedom.
pub fn student_t_cdf(x: f64, df: DegreesOfFreedom) -> Result<Probability> {
    Ok(Probability::clamped(t_cdf_raw(not_nan(x)?, df.get())))
}

/// Student-t upper tail `P(T > x)`.
pub fn student_t_sf(x: f64, df: DegreesOfFreedom) -> Result<Probability> {
    Ok(Probability::clamped(t_sf_raw(not_nan(x)?, df.get())))
}

pub fn student_t_pdf(x: f64, df: DegreesOfFreedom) -> f64 {
    t_pdf_raw(x, df.get())
}

/// Student-t quantile for `0 < p < 1`.
pub fn student_t_quantile(p: Probability, df: DegreesOfFreedom) -> Result<f64> {
    let p = open_unit(p)?;
    t_quantile_raw(p, df.get())
}

pub(crate) fn t_quantile_raw(p: f64, nu: f64) -> Result<f64> {
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        upper_point(1.0 - p, nu)
    } else {
        upper_point(p, nu).map(|x| -x)
    }
}

/// Positive `x` with `P(T > x) = q`, `0 < q < ½`.
fn upper_point(q: f64, nu: f64) -> Result<f64> {
    let start = if nu == 1.0 {
        (PI * (0.5 - q)).tan()
    } else if nu == 2.0 {
        let r = 1.0 - 2.0 * q;
        r * (2.0 / ((1.0 - r) * (1.0 + r))).sqrt()
    } else {
        // Cornish-Fisher expansion around the normal quantile.
        let z = -norm_quantile_raw(q);
        let z2 = z * z;
        let g1 = (z2 + 1.0) * z / 4.0;
        let g2 = ((5.0 * z2 + 16.0) * z2 + 3.0) * z / 96.0;
        let g3 = (((3.0 * z2 + 19.0) * z2 + 17.0) * z2 - 15.0) * z / 384.0;
        z + g1 / nu + g2 / (nu * nu) + g3 / (nu * nu * nu)
    };
    let mut hi = if start.is_finite() && start > 0.0 { 2.0 * start } else { 2.0 };
    while t_sf_raw(hi, nu) > q {
        hi *= 4.0;
        if !hi.is_finite() {
            return Err(crate::error::Error::Numeric(format!(
                "t quantile bracket overflow (q = {q}, df = {nu})"
            )));
        }
    }
    newton_bracketed(
        |x| (t_sf_raw(x, nu) - q, -t_pdf_raw(x, nu)),
        0.0,
        hi,
        start,
        1e-15,
    )
}
