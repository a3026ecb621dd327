//! Agnostic tests read off confidence regions.
//!
//! A single region `R(x)` accepts `H0` when `R(x) ⊆ H0` and rejects when
//! `R(x) ∩ H0 = ∅`. A nested pair `R1 ⊆ R2` accepts when `H0 ⊆ R1` and
//! rejects when `R2 ∩ H0 = ∅`. Endpoints follow each interval's closed flags,
//! which reproduces the `<=` / `>` conventions of the cut-rule tests exactly.

use std::fmt;

use crate::decision::{Decision, ErrorBudget};
use crate::error::{Error, Result};
use crate::procedures::Sample;
use crate::specfun::{norm_quantile_raw, t_quantile_raw};

/// A nonempty interval of the real line; infinite endpoints are always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidConfig(format!("invalid interval ({lo}, {hi})")));
        }
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        if lo == hi && !(lo_closed && hi_closed) {
            return Err(Error::InvalidConfig(format!("interval at {lo} is empty")));
        }
        Ok(Self { lo, hi, lo_closed, hi_closed })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::closed(x, x)
    }

    pub fn real_line() -> Self {
        Self { lo: f64::NEG_INFINITY, hi: f64::INFINITY, lo_closed: false, hi_closed: false }
    }

    /// `"lo,hi"`, with infinite endpoints written as `-inf` / `inf`.
    pub fn to_csv_pair(&self) -> String {
        format!("{},{}", self.lo, self.hi)
    }

    /// Inverse of [`Interval::to_csv_pair`]; finite endpoints are read as closed.
    pub fn from_csv_pair(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("'{s}' is not a lo,hi pair"));
        let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi, true, true)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains_point(&self, x: f64) -> bool {
        let above = x > self.lo || (x == self.lo && self.lo_closed);
        let below = x < self.hi || (x == self.hi && self.hi_closed);
        above && below
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Interval) -> bool {
        let lo_ok = self.lo < other.lo || (self.lo == other.lo && (self.lo_closed || !other.lo_closed));
        let hi_ok = self.hi > other.hi || (self.hi == other.hi && (self.hi_closed || !other.hi_closed));
        lo_ok && hi_ok
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        let before = |a: &Interval, b: &Interval| a.hi < b.lo || (a.hi == b.lo && !(a.hi_closed && b.lo_closed));
        before(self, other) || before(other, self)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Finite union of disjoint intervals, sorted and maximally merged.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet(Vec<Interval>);

impl IntervalSet {
    pub fn from_intervals(mut parts: Vec<Interval>) -> Self {
        parts.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match merged.last_mut() {
                Some(last) if last.hi > p.lo || (last.hi == p.lo && (last.hi_closed || p.lo_closed)) => {
                    if p.hi > last.hi || (p.hi == last.hi && p.hi_closed) {
                        last.hi = p.hi;
                        last.hi_closed = p.hi_closed;
                    }
                }
                _ => merged.push(p),
            }
        }
        Self(merged)
    }

    pub fn components(&self) -> &[Interval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_real_line(&self) -> bool {
        self.0 == [Interval::real_line()]
    }

    pub fn contains_point(&self, x: f64) -> bool {
        self.0.iter().any(|c| c.contains_point(x))
    }

    pub fn contains_interval(&self, iv: &Interval) -> bool {
        self.0.iter().any(|c| c.contains(iv))
    }

    pub fn is_disjoint_from(&self, iv: &Interval) -> bool {
        self.0.iter().all(|c| c.is_disjoint(iv))
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.0.iter().all(|c| other.contains_interval(c))
    }

    pub fn is_within(&self, iv: &Interval) -> bool {
        self.0.iter().all(|c| iv.contains(c))
    }

    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut lo = f64::NEG_INFINITY;
        let mut lo_closed = false;
        for c in &self.0 {
            if c.lo > lo || (c.lo == lo && lo_closed && !c.lo_closed) {
                out.push(Interval { lo, hi: c.lo, lo_closed, hi_closed: !c.lo_closed && c.lo.is_finite() });
            }
            lo = c.hi;
            lo_closed = !c.hi_closed && c.hi.is_finite();
        }
        if lo < f64::INFINITY {
            out.push(Interval { lo, hi: f64::INFINITY, lo_closed, hi_closed: false });
        }
        out.retain(|i| i.lo < i.hi || (i.lo_closed && i.hi_closed));
        IntervalSet(out)
    }
}

/// A null hypothesis `θ ∈ Θ0` for a scalar parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarHypothesis {
    LessEqual(f64),
    Equal(f64),
    GreaterThan(f64),
    Within(Interval),
    Union(Vec<ScalarHypothesis>),
}

impl ScalarHypothesis {
    pub fn to_set(&self) -> IntervalSet {
        let mut parts = Vec::new();
        self.collect(&mut parts);
        IntervalSet::from_intervals(parts)
    }

    fn collect(&self, parts: &mut Vec<Interval>) {
        match self {
            ScalarHypothesis::LessEqual(t) => parts.push(Interval { lo: f64::NEG_INFINITY, hi: *t, lo_closed: false, hi_closed: true }),
            ScalarHypothesis::Equal(t) => parts.push(Interval { lo: *t, hi: *t, lo_closed: true, hi_closed: true }),
            ScalarHypothesis::GreaterThan(t) => parts.push(Interval { lo: *t, hi: f64::INFINITY, lo_closed: false, hi_closed: false }),
            ScalarHypothesis::Within(iv) => parts.push(*iv),
            ScalarHypothesis::Union(hs) => hs.iter().for_each(|h| h.collect(parts)),
        }
    }

    /// Nonempty, not the whole line and free of NaN thresholds.
    pub fn validate(&self) -> Result<()> {
        let has_nan = match self {
            ScalarHypothesis::LessEqual(t) | ScalarHypothesis::Equal(t) | ScalarHypothesis::GreaterThan(t) => !t.is_finite(),
            _ => false,
        };
        let set = self.to_set();
        if has_nan || set.is_empty() || set.is_real_line() {
            Err(Error::InvalidConfig(format!("degenerate hypothesis {self:?}")))
        } else {
            Ok(())
        }
    }
}

/// Accept iff `region ⊆ H0`, reject iff `region ∩ H0 = ∅`.
pub fn region_decision(region: &Interval, h0: &ScalarHypothesis) -> Decision {
    let set = h0.to_set();
    if set.contains_interval(region) {
        Decision::Accept
    } else if set.is_disjoint_from(region) {
        Decision::Reject
    } else {
        Decision::Agnostic
    }
}

/// Inner and outer region estimates, `inner ⊆ outer`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NestedRegions {
    inner: Interval,
    outer: Interval,
}

impl NestedRegions {
    pub fn new(inner: Interval, outer: Interval) -> Result<Self> {
        if outer.contains(&inner) {
            Ok(Self { inner, outer })
        } else {
            Err(Error::InvalidConfig(format!("inner region {inner} is not inside {outer}")))
        }
    }

    pub fn inner(&self) -> &Interval {
        &self.inner
    }

    pub fn outer(&self) -> &Interval {
        &self.outer
    }
}

/// Accept iff `H0 ⊆ inner`, reject iff `outer ∩ H0 = ∅`.
pub fn nested_region_decision(regions: &NestedRegions, h0: &ScalarHypothesis) -> Decision {
    let set = h0.to_set();
    if set.is_within(&regions.inner) {
        Decision::Accept
    } else if set.is_disjoint_from(&regions.outer) {
        Decision::Reject
    } else {
        Decision::Agnostic
    }
}

fn check_level(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidLevel(format!("alpha = {alpha} must lie in (0, 0.5]")))
    }
}

/// `[X̄ - a1, X̄ - a2]` with `a1 = σ/√n Φ⁻¹(1-α)`, `a2 = σ/√n Φ⁻¹(α)`; coverage `1 - 2α`.
pub fn z_region(sample: &Sample, sigma: f64, alpha: f64) -> Result<Interval> {
    check_level(alpha)?;
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    let se = sigma / (sample.len() as f64).sqrt();
    let mean = sample.mean();
    Interval::closed(mean - se * norm_quantile_raw(1.0 - alpha), mean - se * norm_quantile_raw(alpha))
}

fn t_scale(sample: &Sample) -> Result<f64> {
    let s2 = sample.variance();
    if !(s2 > 0.0) {
        return Err(Error::DegenerateSample("sample variance is zero".into()));
    }
    Ok((s2 / sample.len() as f64).sqrt())
}

/// As [`z_region`] with the sample standard deviation and `t_{n-1}` quantiles.
pub fn t_region(sample: &Sample, alpha: f64) -> Result<Interval> {
    check_level(alpha)?;
    let scale = t_scale(sample)?;
    let df = (sample.len() - 1) as f64;
    let mean = sample.mean();
    Interval::closed(
        mean - scale * t_quantile_raw(1.0 - alpha, df)?,
        mean - scale * t_quantile_raw(alpha, df)?,
    )
}

/// Nested regions equivalent to the bilateral agnostic t-test: radii
/// `t_{n-1}((1+β)/2)·S/√n` (inner) and `t_{n-1}(1-α/2)·S/√n` (outer).
pub fn t_nested_regions(sample: &Sample, budget: ErrorBudget) -> Result<NestedRegions> {
    budget.require_coherent()?;
    let scale = t_scale(sample)?;
    let df = (sample.len() - 1) as f64;
    let mean = sample.mean();
    let r_in = scale * t_quantile_raw(0.5 * (1.0 + budget.beta()), df)?;
    let r_out = scale * t_quantile_raw(1.0 - 0.5 * budget.alpha(), df)?;
    NestedRegions::new(Interval::closed(mean - r_in, mean + r_in)?, Interval::closed(mean - r_out, mean + r_out)?)
}

/// Which implication a pair of decisions broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceRule {
    /// `H ⊆ H'` and `H` accepted, but `H'` not accepted.
    AcceptUpward,
    /// `H ⊆ H'` and `H'` rejected, but `H` not rejected.
    RejectDownward,
    /// `H` accepted but its complement not rejected.
    ComplementReject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub rule: CoherenceRule,
    /// Index of `H` in the input.
    pub first: usize,
    /// Index of `H'` (or the complement of `H`).
    pub second: usize,
}

/// Checks the inclusion-monotonicity consequences of logical coherence over
/// a collection of `(hypothesis, decision)` pairs.
pub fn check_coherence(decisions: &[(ScalarHypothesis, Decision)]) -> Vec<Violation> {
    let sets: Vec<IntervalSet> = decisions.iter().map(|(h, _)| h.to_set()).collect();
    let complements: Vec<IntervalSet> = sets.iter().map(IntervalSet::complement).collect();
    let mut out = Vec::new();
    for (i, (_, di)) in decisions.iter().enumerate() {
        for (j, (_, dj)) in decisions.iter().enumerate() {
            if i == j {
                continue;
            }
            if sets[i].is_subset_of(&sets[j]) {
                if *di == Decision::Accept && *dj != Decision::Accept {
                    out.push(Violation { rule: CoherenceRule::AcceptUpward, first: i, second: j });
                }
                if *dj == Decision::Reject && *di != Decision::Reject {
                    out.push(Violation { rule: CoherenceRule::RejectDownward, first: i, second: j });
                }
            }
            if *di == Decision::Accept && *dj != Decision::Reject && sets[j] == complements[i] {
                out.push(Violation { rule: CoherenceRule::ComplementReject, first: i, second: j });
            }
        }
    }
    out
}

/// Decides every hypothesis with [`region_decision`] and checks the result for coherence.
pub fn coherence_check(region: &Interval, hypotheses: &[ScalarHypothesis]) -> Result<Vec<Violation>> {
    for h in hypotheses {
        h.validate()?;
    }
    let decisions: Vec<(ScalarHypothesis, Decision)> =
        hypotheses.iter().map(|h| (h.clone(), region_decision(region, h))).collect();
    Ok(check_coherence(&decisions))
}
