use super::beta::ibeta_pair;
use super::{DegreesOfFreedom, Probability};
use crate::error::{domain, Result};

/// `(P(F <= x), P(F > x))` for `x >= 0`.
fn f_pair(x: f64, d1: f64, d2: f64) -> (f64, f64) {
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    let denom = d1 * x + d2;
    ibeta_pair(0.5 * d1, 0.5 * d2, d1 * x / denom, d2 / denom)
}

fn check(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(domain(format!("F distribution argument must be >= 0, got {x}")))
    }
}

/// CDF of the F distribution with `(df1, df2)` degrees of freedom.
pub fn f_cdf(x: f64, df1: DegreesOfFreedom, df2: DegreesOfFreedom) -> Result<Probability> {
    let x = check(x)?;
    Ok(Probability::clamped(f_pair(x, df1.get(), df2.get()).0))
}

/// Upper tail `P(F > x)`, computed directly rather than as `1 - cdf`.
pub fn f_sf(x: f64, df1: DegreesOfFreedom, df2: DegreesOfFreedom) -> Result<Probability> {
    let x = check(x)?;
    Ok(Probability::clamped(f_pair(x, df1.get(), df2.get()).1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{regularized_incomplete_beta, student_t_cdf};

    fn df(v: f64) -> DegreesOfFreedom {
        DegreesOfFreedom::new(v).unwrap()
    }

    #[test]
    fn boundary_and_errors() {
        assert_eq!(f_cdf(0.0, df(3.0), df(7.0)).unwrap().get(), 0.0);
        assert_eq!(f_sf(0.0, df(3.0), df(7.0)).unwrap().get(), 1.0);
        assert!(f_cdf(-0.5, df(3.0), df(7.0)).is_err());
    }

    #[test]
    fn squared_t_identity() {
        for i in 0..200 {
            let x = i as f64 * 0.25;
            let via_t = 2.0 * student_t_cdf(x.sqrt(), df(9.0)).unwrap().get() - 1.0;
            assert!((f_cdf(x, df(1.0), df(9.0)).unwrap().get() - via_t).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn beta_transform_value() {
        // F(3; 3, 20) = I_{9/29}(3/2, 10)
        let w = 3.0 * 3.0 / (3.0 * 3.0 + 20.0);
        let oracle = regularized_incomplete_beta(1.5, 10.0, w).unwrap().get();
        let v = f_cdf(3.0, df(3.0), df(20.0)).unwrap().get();
        assert!((v - oracle).abs() < 1e-8);
        // closed form for df1 = 2: 1 - (1 + 2x/d2)^(-d2/2)
        let closed = 1.0 - (1.0 + 2.0 * 1.7 / 11.0f64).powf(-5.5);
        assert!((f_cdf(1.7, df(2.0), df(11.0)).unwrap().get() - closed).abs() < 1e-14);
    }

    #[test]
    fn monotone_on_grid() {
        let mut prev = 0.0;
        for i in 0..1000 {
            let v = f_cdf(i as f64 * 0.01, df(4.0), df(13.0)).unwrap().get();
            assert!(v >= prev);
            prev = v;
        }
    }
}
