//! Closed-form agnostic tests: z, t, regression contrasts, the general linear
//! hypothesis F test, two-sample permutation tests and effect-size-calibrated
//! regression tests.

mod effect_size;
mod glh;
mod permutation;
mod regression;
mod report;
mod sample;
mod z_test;

pub use effect_size::{effect_size_accept_cut, effect_size_decision_probs, effect_size_regression_test, standardized_a_k};
pub use glh::glh_f_test;
pub use permutation::{permutation_test, relabeling_statistic, tie_tolerance, PermutationMode, EXACT_RELABELING_CAP};
pub use regression::{fit_regression, regression_contrast_test, RegressionData, RegressionFit};
pub use report::{TestReport, Thresholds};
pub use sample::{HypothesisSide, Sample};
pub use t_test::{t_cut_rule, t_decision_probs, t_four_cut, t_test_bilateral, t_test_unilateral};
pub use z_test::{z_cut_rule, z_decision_probs, z_test};

pub use nalgebra::{DMatrix, DVector};
