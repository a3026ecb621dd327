use std::f64::consts::{FRAC_2_PI, LN_2};

use super::beta::{ibeta_pair, ln_beta};
use super::normal::norm_cdf_raw;
use super::quad::integrate;
use super::student_t::t_cdf_raw;
use super::{DegreesOfFreedom, Probability};
use crate::error::{domain, Result};

/// Beyond this noncentrality the Poisson weights of the series underflow.
const SERIES_MAX_DELTA: f64 = 37.0;
const SERIES_TOL: f64 = 1e-13;
const SERIES_MAX_TERMS: usize = 10_000;

/// CDF of the noncentral t distribution with `df` degrees of freedom and
/// noncentrality `delta`.
pub fn noncentral_t_cdf(x: f64, df: DegreesOfFreedom, delta: f64) -> Result<Probability> {
    if x.is_nan() || !delta.is_finite() {
        return Err(domain(format!("noncentral t needs finite inputs (x = {x}, delta = {delta})")));
    }
    Ok(Probability::clamped(nct_cdf_raw(x, df.get(), delta)))
}

pub(crate) fn nct_cdf_raw(t: f64, nu: f64, delta: f64) -> f64 {
    if delta == 0.0 {
        return t_cdf_raw(t, nu);
    }
    if t.is_infinite() {
        return if t > 0.0 { 1.0 } else { 0.0 };
    }
    let v = if delta.abs() > SERIES_MAX_DELTA {
        by_quadrature(t, nu, delta)
    } else {
        by_series(t, nu, delta)
    };
    v.clamp(0.0, 1.0)
}

/// Mixture of incomplete beta functions with Poisson weights in `delta²/2`.
fn by_series(t: f64, nu: f64, delta: f64) -> f64 {
    let (tt, del, negate) = if t < 0.0 { (-t, -delta, true) } else { (t, delta, false) };
    let mut total = 0.0;
    if tt > 0.0 {
        let t2 = tt * tt;
        let x = t2 / (t2 + nu);
        let y = nu / (t2 + nu);
        let lambda = del * del;
        let mut p = 0.5 * (-0.5 * lambda).exp();
        let mut q = FRAC_2_PI.sqrt() * p * del;
        let mut s = 0.5 - p;
        let mut a = 0.5;
        let b = 0.5 * nu;
        let ln_y_b = b * y.ln();
        let rxb = ln_y_b.exp();
        let mut xodd = ibeta_pair(a, b, x, y).0;
        let mut godd = 2.0 * (ln_y_b + a * x.ln() - ln_beta(a, b)).exp();
        let mut xeven = -ln_y_b.exp_m1();
        let mut geven = b * x * rxb;
        total = p * xodd + q * xeven;
        let mut en = 1.0;
        for _ in 0..SERIES_MAX_TERMS {
            a += 1.0;
            xodd -= godd;
            xeven -= geven;
            godd *= x * (a + b - 1.0) / a;
            geven *= x * (a + b - 0.5) / (a + 0.5);
            p *= lambda / (2.0 * en);
            q *= lambda / (2.0 * en + 1.0);
            s -= p;
            en += 1.0;
            total += p * xodd + q * xeven;
            let bound = 2.0 * s * (xodd - godd);
            if bound.abs() <= SERIES_TOL {
                break;
            }
        }
    }
    total += norm_cdf_raw(-del);
    if negate {
        1.0 - total
    } else {
        total
    }
}

/// `P(T <= t) = E[Φ(t·U - δ)]` with `U = sqrt(χ²_ν / ν)`, integrated numerically.
fn by_quadrature(t: f64, nu: f64, delta: f64) -> f64 {
    let half_nu = 0.5 * nu;
    let ln_norm = LN_2 + half_nu * half_nu.ln() - libm::lgamma(half_nu);
    let density = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        (ln_norm + (nu - 1.0) * u.ln() - half_nu * u * u).exp()
    };
    let integrand = |u: f64| norm_cdf_raw(t * u - delta) * density(u);

    let spread = (0.5 / nu).sqrt();
    let lo = (1.0 - 40.0 * spread).max(0.0);
    let hi = 1.0 + 40.0 * spread + 10.0;
    let mut cuts = vec![lo, hi];
    if t != 0.0 {
        let knee = delta / t;
        if knee > lo && knee < hi {
            cuts.insert(1, knee);
        }
    }
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let panels = 16;
        let h = (w[1] - w[0]) / panels as f64;
        for i in 0..panels {
            let a = w[0] + i as f64 * h;
            total += integrate(integrand, a, a + h, 1e-15);
        }
    }
    total
}
