use std::f64::consts::FRAC_1_SQRT_2;

use super::{open_unit, Probability};
use crate::error::{domain, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

pub(crate) fn norm_cdf_raw(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

pub(crate) fn norm_pdf_raw(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Standard normal CDF `Φ(x)`; accurate in both tails.
pub fn std_normal_cdf(x: f64) -> Result<Probability> {
    if !x.is_finite() {
        return Err(domain(format!("normal cdf needs a finite argument, got {x}")));
    }
    Ok(Probability::clamped(norm_cdf_raw(x)))
}

/// Upper tail `1 - Φ(x)` without cancellation.
pub fn std_normal_sf(x: f64) -> Result<Probability> {
    std_normal_cdf(-x)
}

pub fn std_normal_pdf(x: f64) -> f64 {
    norm_pdf_raw(x)
}

/// Standard normal quantile `Φ⁻¹(p)` for `0 < p < 1`.
pub fn std_normal_quantile(p: Probability) -> Result<f64> {
    let p = open_unit(p)?;
    Ok(norm_quantile_raw(p))
}

// Rational approximation (relative error ~1e-9) for the lower half.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.02425;

fn initial_lower(p: f64) -> f64 {
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Quantile for `p` in `(0, 1)`. The upper half is mapped onto the lower one
/// (`1 - p` is exact there), so the result is exactly antisymmetric.
pub(crate) fn norm_quantile_raw(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    if p == 0.5 {
        return 0.0;
    }
    if p > 0.5 {
        return -norm_quantile_raw(1.0 - p);
    }
    let mut x = initial_lower(p);
    // Halley refinement on the lower-tail CDF.
    for _ in 0..3 {
        let e = norm_cdf_raw(x) - p;
        let u = e * SQRT_2PI * (0.5 * x * x).exp();
        let step = u / (1.0 + 0.5 * x * u);
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.abs() <= 1e-15 * x.abs() {
            break;
        }
    }
    x
}
