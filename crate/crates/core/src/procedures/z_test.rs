use super::report::{TestReport, Thresholds};
use super::sample::Sample;
use crate::decision::{cut_decision, CutRule, DecisionProbs, ErrorBudget};
use crate::error::{Error, Result};
use crate::specfun::{norm_cdf_raw, norm_quantile_raw};

fn standard_error(sigma: f64, n: usize) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(sigma / (n as f64).sqrt())
}

/// UMP thresholds on the sample mean for `H0: μ <= μ0` with known `σ`:
/// `c0 = μ0 - σ/√n · Φ⁻¹(1-β)`, `c1 = μ0 - σ/√n · Φ⁻¹(α)`. The accept cut is
/// evaluated as `μ0 + σ/√n · Φ⁻¹(β)` so tiny `β` does not round `1-β` to one.
pub fn z_cut_rule(mu0: f64, sigma: f64, n: usize, budget: ErrorBudget) -> Result<CutRule> {
    budget.require_coherent()?;
    let se = standard_error(sigma, n)?;
    let c0 = mu0 + se * norm_quantile_raw(budget.beta());
    let c1 = mu0 - se * norm_quantile_raw(budget.alpha());
    CutRule::new(c0, c1)
}

pub fn z_test(sample: &Sample, mu0: f64, sigma: f64, budget: ErrorBudget) -> Result<TestReport> {
    let rule = z_cut_rule(mu0, sigma, sample.len(), budget)?;
    let mean = sample.mean();
    Ok(TestReport {
        statistic: mean,
        p_value: None,
        thresholds: Thresholds::Cut(rule),
        decision: cut_decision(mean, rule),
    })
}

/// Exact decision probabilities of the z-test when the true mean is `mu`.
pub fn z_decision_probs(mu: f64, mu0: f64, sigma: f64, n: usize, budget: ErrorBudget) -> Result<DecisionProbs> {
    let rule = z_cut_rule(mu0, sigma, n, budget)?;
    let se = standard_error(sigma, n)?;
    let accept = norm_cdf_raw((rule.c0() - mu) / se);
    let reject = norm_cdf_raw((mu - rule.c1()) / se);
    DecisionProbs::from_accept_reject(accept, reject)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::Decision;

    fn budget(a: f64, b: f64) -> ErrorBudget {
        ErrorBudget::new(a, b).unwrap()
    }

    #[test]
    fn thresholds() {
        let r = z_cut_rule(0.0, 1.0, 10, budget(0.05, 0.05)).unwrap();
        // Φ⁻¹(0.95) = 1.6448536269514722
        let h = 1.644_853_626_951_472_2 / 10f64.sqrt();
        assert!((r.c0() + h).abs() < 1e-12);
        assert!((r.c1() - h).abs() < 1e-12);
        assert!((r.c1() - 0.52015).abs() < 1e-4);

        let d = z_cut_rule(0.0, 1.0, 10, budget(0.5, 0.5)).unwrap();
        assert_eq!((d.c0(), d.c1()), (0.0, 0.0));

        let shifted = z_cut_rule(5.0, 2.0, 4, budget(0.05, 0.1)).unwrap();
        // Φ⁻¹(0.9) = 1.2815515655446004
        assert!((shifted.c0() - (5.0 - 1.281_551_565_544_600_4)).abs() < 1e-12);
        assert!((shifted.c1() - (5.0 + 1.644_853_626_951_472_2)).abs() < 1e-12);

        assert!(matches!(z_cut_rule(0.0, 1.0, 10, budget(0.6, 0.5)), Err(Error::InvalidBudget { .. })));
        assert!(z_cut_rule(0.0, 0.0, 10, budget(0.05, 0.05)).is_err());
    }

    #[test]
    fn decisions() {
        let b = budget(0.05, 0.05);
        // n = 8 keeps the mean of identical values exact.
        let rule = z_cut_rule(0.0, 1.0, 8, b).unwrap();
        let at = |m: f64| Sample::new(vec![m; 8]).unwrap();
        assert_eq!(z_test(&at(rule.c0()), 0.0, 1.0, b).unwrap().decision, Decision::Accept);
        assert_eq!(z_test(&at(3.0), 0.0, 1.0, b).unwrap().decision, Decision::Reject);
        assert_eq!(z_test(&at(0.0), 0.0, 1.0, b).unwrap().decision, Decision::Agnostic);
    }

    #[test]
    fn boundary_probabilities() {
        let b = budget(0.05, 0.05);
        let p = z_decision_probs(0.0, 0.0, 1.0, 10, b).unwrap();
        assert!((p.p_reject - 0.05).abs() < 1e-12);
        assert!((p.p_accept - 0.05).abs() < 1e-12);
        let far = z_decision_probs(10.0, 0.0, 1.0, 10, b).unwrap();
        assert!(far.p_reject > 1.0 - 1e-12);
    }

    #[test]
    fn power_is_monotone_and_dominates_trivial_test() {
        let b = budget(0.05, 0.05);
        let se = 1.0 / 10f64.sqrt();
        let mut prev = z_decision_probs(-3.0 * se, 0.0, 1.0, 10, b).unwrap();
        for i in -300..=300 {
            let mu = i as f64 / 100.0 * se;
            let p = z_decision_probs(mu, 0.0, 1.0, 10, b).unwrap();
            assert!(p.p_reject >= prev.p_reject - 1e-15);
            assert!(p.p_accept <= prev.p_accept + 1e-15);
            let in_null = mu <= 0.0;
            let trivial = if in_null { b.beta() } else { b.alpha() };
            assert!(p.power(in_null) >= trivial - 1e-12, "mu = {mu}");
            prev = p;
        }
    }
}
