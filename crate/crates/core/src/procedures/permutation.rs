use super::report::{TestReport, Thresholds};
use crate::decision::{pvalue_decision, ErrorBudget};
use crate::error::{Error, Result};
use crate::sim::rng::ReplicateRng;
use crate::specfun::Probability;

/// Largest number of relabelings exact mode will enumerate.
pub const EXACT_RELABELING_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationMode {
    /// Enumerate every assignment of `n` pooled observations to the y-group.
    Exact,
    /// `replicates` random relabelings; p = (1 + hits) / (1 + replicates).
    MonteCarlo { replicates: usize, seed: u64 },
}

/// `mean(y-group) - mean(x-group)` for the labeling `in_y` over the pooled
/// values, summing each group in index order.
pub fn relabeling_statistic(pool: &[f64], in_y: &[bool]) -> f64 {
    let (mut sum_y, mut n_y, mut sum_x, mut n_x) = (0.0, 0usize, 0.0, 0usize);
    for (v, &is_y) in pool.iter().zip(in_y) {
        if is_y {
            sum_y += v;
            n_y += 1;
        } else {
            sum_x += v;
            n_x += 1;
        }
    }
    sum_y / n_y as f64 - sum_x / n_x as f64
}

/// Slack under which a relabeled statistic still counts as `>=` the observed one.
pub fn tie_tolerance(pool: &[f64]) -> f64 {
    1e-12 * (1.0 + pool.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return acc;
        }
    }
    acc
}

/// One-sided two-sample permutation test on `mean(y) - mean(x)`; the agnostic
/// decision comes from the p-value.
pub fn permutation_test(x: &[f64], y: &[f64], budget: ErrorBudget, mode: PermutationMode) -> Result<TestReport> {
    budget.require_coherent()?;
    if x.is_empty() || y.is_empty() {
        return Err(Error::DegenerateSample("both groups need at least one observation".into()));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateSample("non-finite observation".into()));
    }
    let pool: Vec<f64> = x.iter().chain(y).copied().collect();
    let total = pool.len();
    let n = y.len();
    let observed_labels: Vec<bool> = (0..total).map(|i| i >= x.len()).collect();
    let observed = relabeling_statistic(&pool, &observed_labels);
    let bar = observed - tie_tolerance(&pool);

    let p = match mode {
        PermutationMode::Exact => {
            let count = binomial(total, n);
            if count > EXACT_RELABELING_CAP {
                return Err(Error::Capacity { needed: count, limit: EXACT_RELABELING_CAP });
            }
            let mut hits: u64 = 0;
            let mut labels = vec![false; total];
            let mut idx: Vec<usize> = (0..n).collect();
            loop {
                labels.iter_mut().for_each(|l| *l = false);
                for &i in &idx {
                    labels[i] = true;
                }
                if relabeling_statistic(&pool, &labels) >= bar {
                    hits += 1;
                }
                // next combination in lexicographic order
                let Some(pos) = (0..n).rev().find(|&i| idx[i] < total - n + i) else {
                    break;
                };
                idx[pos] += 1;
                for j in pos + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
            }
            hits as f64 / count as f64
        }
        PermutationMode::MonteCarlo { replicates, seed } => {
            if replicates == 0 {
                return Err(Error::InvalidConfig("Monte Carlo mode needs at least one replicate".into()));
            }
            let mut hits: u64 = 0;
            let mut order: Vec<usize> = Vec::with_capacity(total);
            let mut labels = vec![false; total];
            for b in 0..replicates {
                let mut rng = ReplicateRng::new(seed, b as u64, 0);
                order.clear();
                order.extend(0..total);
                for i in 0..n {
                    let j = i + rng.below((total - i) as u64) as usize;
                    order.swap(i, j);
                }
                labels.iter_mut().for_each(|l| *l = false);
                for &i in &order[..n] {
                    labels[i] = true;
                }
                if relabeling_statistic(&pool, &labels) >= bar {
                    hits += 1;
                }
            }
            (1 + hits) as f64 / (1 + replicates) as f64
        }
    };
    let p = Probability::clamped(p);
    Ok(TestReport {
        statistic: observed,
        p_value: Some(p),
        thresholds: Thresholds::PValue(budget),
        decision: pvalue_decision(p, budget)?,
    })
}
