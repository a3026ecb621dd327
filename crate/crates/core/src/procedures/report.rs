use crate::decision::{CutRule, Decision, ErrorBudget, FourCut};
use crate::specfun::Probability;

/// Thresholds a decision was read from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Thresholds {
    Cut(CutRule),
    FourCut(FourCut),
    /// p-value rule: reject when `p < alpha`, accept when `p >= 1 - beta`.
    PValue(ErrorBudget),
}

/// Outcome of one agnostic test.
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub statistic: f64,
    pub p_value: Option<Probability>,
    pub thresholds: Thresholds,
    pub decision: Decision,
}
