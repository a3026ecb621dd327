//! Distribution kernel: CDFs and quantiles of the standard normal, Student-t,
//! noncentral-t and F distributions.
//!
//! Everything here is pure and reentrant. Public functions validate their
//! inputs; the `*_raw` helpers inside each submodule skip validation and are
//! used on hot paths inside the crate.

mod beta;
mod fisher_f;
mod noncentral_t;
mod normal;
pub(crate) mod quad;
pub(crate) mod roots;
mod student_t;

use std::fmt;

use crate::error::{domain, Result};

pub use beta::{ln_beta, regularized_incomplete_beta};
pub use fisher_f::{f_cdf, f_sf};
pub use noncentral_t::noncentral_t_cdf;
pub use normal::{std_normal_cdf, std_normal_pdf, std_normal_quantile, std_normal_sf};
pub use student_t::{student_t_cdf, student_t_pdf, student_t_quantile, student_t_sf};

pub(crate) use noncentral_t::nct_cdf_raw;
pub(crate) use normal::{norm_cdf_raw, norm_quantile_raw};
pub(crate) use student_t::{t_quantile_raw, t_sf_raw};

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(domain(format!("probability {value} outside [0, 1]")))
        }
    }

    /// Clamps numerically computed values that strayed a few ulps outside `[0, 1]`.
    pub(crate) fn clamped(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        Self(value.clamp(0.0, 1.0))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    pub fn complement(self) -> Self {
        Self(1.0 - self.0)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Degrees of freedom; any positive finite real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DegreesOfFreedom(f64);

impl DegreesOfFreedom {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(domain(format!("degrees of freedom must be positive, got {value}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for DegreesOfFreedom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rejects the endpoints 0 and 1, whose quantiles are infinite.
pub(crate) fn open_unit(p: Probability) -> Result<f64> {
    let v = p.get();
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(domain(format!("quantile undefined at p = {v}")))
    }
}
