use super::Probability;
use crate::error::{domain, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LARGE: f64 = 15.0;
const CF_EPS: f64 = 1e-15;
const CF_TINY: f64 = 1e-300;
const CF_MAX_ITER: usize = 200_000;

/// `ln Γ(x) - [(x - ½) ln x - x + ½ ln 2π]` for `x >= 15`.
fn stirling_correction(x: f64) -> f64 {
    let x2 = x * x;
    (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x
}

/// `ln B(a, b)`; avoids the cancellation of three `ln Γ` terms when an argument is large.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    let (p, q) = if a < b { (a, b) } else { (b, a) };
    if p >= LARGE {
        let s = p + q;
        HALF_LN_2PI - 0.5 * q.ln() + (p - 0.5) * (p / s).ln() + q * (-p / s).ln_1p()
            + stirling_correction(p)
            + stirling_correction(q)
            - stirling_correction(s)
    } else if q >= LARGE {
        let s = p + q;
        libm::lgamma(p) - (q - 0.5) * (p / q).ln_1p() - p * s.ln()
            + p
            + stirling_correction(q)
            - stirling_correction(s)
    } else {
        libm::lgamma(p) + libm::lgamma(q) - libm::lgamma(p + q)
    }
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < CF_TINY {
        d = CF_TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < CF_EPS {
            break;
        }
    }
    h
}

/// Returns `(I_x(a, b), 1 - I_x(a, b))`, each computed without cancellation.
/// `y` must equal `1 - x`; callers pass it separately so that small
/// complements are not lost to rounding.
pub(crate) fn ibeta_pair(a: f64, b: f64, x: f64, y: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 1.0);
    }
    if y <= 0.0 {
        return (1.0, 0.0);
    }
    let ln_front = a * x.ln() + b * y.ln() - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        let w = (ln_front.exp() * continued_fraction(a, b, x) / a).clamp(0.0, 1.0);
        (w, 1.0 - w)
    } else {
        let w = (ln_front.exp() * continued_fraction(b, a, y) / b).clamp(0.0, 1.0);
        (1.0 - w, w)
    }
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> Result<Probability> {
    if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
        return Err(domain(format!("incomplete beta needs a, b > 0 (a = {a}, b = {b})")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("incomplete beta needs x in [0, 1], got {x}")));
    }
    Ok(Probability::clamped(ibeta_pair(a, b, x, 1.0 - x).0))
}
