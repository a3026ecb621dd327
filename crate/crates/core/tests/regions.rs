use agnostic_core::procedures::{t_test_bilateral, t_test_unilateral, z_test, Sample};
use agnostic_core::regions::*;
use agnostic_core::sim::{estimate_decision_probs, NormalModel, SimConfig, ZRegionProcedure};
use agnostic_core::{Decision, ErrorBudget};
use proptest::prelude::*;
use ScalarHypothesis::*;

fn budget(a: f64, b: f64) -> ErrorBudget {
    ErrorBudget::new(a, b).unwrap()
}

fn sample_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-4.0f64..4.0, 3..25)
}

proptest! {
    #[test]
    fn z_region_reproduces_the_z_test(values in sample_strategy(), theta in -3.0f64..3.0, alpha in 0.01f64..0.5) {
        let s = Sample::new(values).unwrap();
        let region = z_region(&s, 1.5, alpha).unwrap();
        let test = z_test(&s, theta, 1.5, budget(alpha, alpha)).unwrap();
        prop_assert_eq!(region_decision(&region, &LessEqual(theta)), test.decision);
    }

    #[test]
    fn t_region_reproduces_the_t_test(values in sample_strategy(), theta in -3.0f64..3.0, alpha in 0.01f64..0.5) {
        let s = Sample::new(values).unwrap();
        prop_assume!(s.variance() > 1e-8);
        let region = t_region(&s, alpha).unwrap();
        let test = t_test_unilateral(&s, theta, budget(alpha, alpha)).unwrap();
        prop_assert_eq!(region_decision(&region, &LessEqual(theta)), test.decision);
    }

    #[test]
    fn nested_regions_reproduce_the_bilateral_t_test(values in sample_strategy(), mu0 in -3.0f64..3.0, a in 0.01f64..0.5, b in 0.01f64..0.5) {
        let s = Sample::new(values).unwrap();
        prop_assume!(s.variance() > 1e-8);
        let nr = t_nested_regions(&s, budget(a, b)).unwrap();
        prop_assert!(nr.outer().contains(nr.inner()));
        let test = t_test_bilateral(&s, mu0, budget(a, b)).unwrap();
        prop_assert_eq!(nested_region_decision(&nr, &Equal(mu0)), test.decision);
    }

    #[test]
    fn unilateral_decisions_are_monotone_in_theta(values in sample_strategy(), alpha in 0.01f64..0.5) {
        let s = Sample::new(values).unwrap();
        let region = z_region(&s, 1.0, alpha).unwrap();
        let thetas: Vec<f64> = (0..100).map(|i| -5.0 + 0.1 * i as f64).collect();
        let decisions: Vec<Decision> = thetas.iter().map(|&t| region_decision(&region, &LessEqual(t))).collect();
        // Accept at θ1 implies accept at every θ2 >= θ1; reject at θ2 implies reject below it.
        prop_assert!(decisions.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn mixed_families_are_coherent(lo in -3.0f64..3.0, width in 0.0f64..3.0, cuts in prop::collection::vec(-4.0f64..4.0, 4)) {
        let region = Interval::closed(lo, lo + width).unwrap();
        let mut hyps = Vec::new();
        for &c in &cuts {
            hyps.push(LessEqual(c));
            hyps.push(GreaterThan(c));
            hyps.push(Equal(c));
        }
        hyps.push(Within(Interval::closed(cuts[0].min(cuts[1]), cuts[0].max(cuts[1])).unwrap()));
        hyps.push(Union(vec![LessEqual(cuts[2].min(cuts[3])), GreaterThan(cuts[2].max(cuts[3]))]));
        prop_assert!(coherence_check(&region, &hyps).unwrap().is_empty());
    }

    #[test]
    fn flat_nested_regions_never_stay_agnostic(lo in -3.0f64..3.0, width in 0.0f64..3.0, theta in -5.0f64..5.0) {
        let iv = Interval::closed(lo, lo + width).unwrap();
        let nr = NestedRegions::new(iv, iv).unwrap();
        prop_assume!(width > 0.0 || theta != lo);
        prop_assert_ne!(nested_region_decision(&nr, &Equal(theta)), Decision::Agnostic);
    }
}

#[test]
fn z_region_collection_over_grid_is_coherent() {
    let s = Sample::new(vec![0.3, -0.2, 1.1, 0.8, -0.4, 0.05, 0.6, 0.2]).unwrap();
    let region = z_region(&s, 1.0, 0.05).unwrap();
    let hyps: Vec<ScalarHypothesis> = (0..100).map(|i| LessEqual(-2.0 + 0.04 * i as f64)).collect();
    assert!(coherence_check(&region, &hyps).unwrap().is_empty());
}

#[test]
fn degenerate_hypotheses_are_refused() {
    let region = Interval::closed(0.0, 1.0).unwrap();
    assert!(coherence_check(&region, &[Union(vec![LessEqual(0.0), GreaterThan(0.0)])]).is_err());
    assert!(coherence_check(&region, &[LessEqual(f64::NAN)]).is_err());
}

#[test]
fn csv_pairs() {
    let iv = Interval::new(f64::NEG_INFINITY, 2.5, false, true).unwrap();
    assert_eq!(iv.to_csv_pair(), "-inf,2.5");
    let back = Interval::from_csv_pair("-inf,2.5").unwrap();
    assert_eq!(back, iv);
    assert_eq!(Interval::new(1.0, f64::INFINITY, true, false).unwrap().to_csv_pair(), "1,inf");
    assert!(Interval::from_csv_pair("3,1").is_err());
    assert!(Interval::from_csv_pair("nonsense").is_err());
}

#[test]
fn region_test_has_alpha_alpha_size_at_the_boundary() {
    // With a region of coverage 1 - 2α, the region test of μ <= θ at θ = μ
    // rejects and accepts with probability α each.
    let alpha = 0.1;
    let reps = 40_000;
    let cfg = SimConfig::new(reps, 99, vec![]).unwrap();
    let model = NormalModel { theta: 0.7, sigma: 2.0, n: 12 };
    let test = ZRegionProcedure { sigma: 2.0, alpha, h0: LessEqual(0.7) };
    let est = estimate_decision_probs(&test, model, &cfg).unwrap();
    let band = 3.0 * (alpha * (1.0 - alpha) / reps as f64).sqrt();
    assert!((est.probs.p_reject - alpha).abs() <= band, "{:?}", est.probs);
    assert!((est.probs.p_accept - alpha).abs() <= band, "{:?}", est.probs);
}
