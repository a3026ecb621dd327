//! Three-valued decisions, error budgets and the cut rules that produce them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::Probability;

/// Outcome of an agnostic test. Ordered `Accept < Agnostic < Reject`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decision {
    Accept,
    Agnostic,
    Reject,
}

impl Decision {
    pub const ALL: [Decision; 3] = [Decision::Accept, Decision::Agnostic, Decision::Reject];

    /// Numeric code: 0, ½ or 1.
    pub fn code(self) -> f64 {
        match self {
            Decision::Accept => 0.0,
            Decision::Agnostic => 0.5,
            Decision::Reject => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Accept => "accept",
            Decision::Agnostic => "agnostic",
            Decision::Reject => "reject",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Decision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "accept" | "0" => Ok(Decision::Accept),
            "agnostic" | "0.5" => Ok(Decision::Agnostic),
            "reject" | "1" => Ok(Decision::Reject),
            other => Err(Error::Domain(format!("unknown decision {other:?}"))),
        }
    }
}

/// Bounds `(alpha, beta)` on the type I and type II error probabilities.
///
/// Both must lie strictly inside `(0, 1)`. Whether `alpha + beta <= 1` is
/// required depends on the consumer; see [`ErrorBudget::require_coherent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    alpha: f64,
    beta: f64,
}

impl ErrorBudget {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidLevel(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Fails when `alpha + beta > 1`, where accept and reject regions would overlap.
    pub fn require_coherent(&self) -> Result<()> {
        let sum = self.alpha + self.beta;
        if sum > 1.0 {
            Err(Error::InvalidBudget { sum })
        } else {
            Ok(())
        }
    }
}

/// Accept when `T <= c0`, reject when `T > c1`, agnostic in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutRule {
    c0: f64,
    c1: f64,
}

impl CutRule {
    pub fn new(c0: f64, c1: f64) -> Result<Self> {
        if c0 <= c1 {
            Ok(Self { c0, c1 })
        } else {
            Err(Error::InvalidConfig(format!("cut rule needs c0 <= c1 (c0 = {c0}, c1 = {c1})")))
        }
    }

    /// A standard (two-decision) test: `c0 = c1 = c`.
    pub fn degenerate(c: f64) -> Result<Self> {
        Self::new(c, c)
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn decide(&self, t: f64) -> Decision {
        cut_decision(t, *self)
    }
}

/// Bilateral rule: reject outside `[c1l, c1r]`, accept inside `[c0l, c0r]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourCut {
    pub(crate) c1l: f64,
    pub(crate) c0l: f64,
    pub(crate) c0r: f64,
    pub(crate) c1r: f64,
}

impl FourCut {
    pub fn new(c1l: f64, c0l: f64, c0r: f64, c1r: f64) -> Result<Self> {
        if c1l <= c0l && c0l <= c0r && c0r <= c1r {
            Ok(Self { c1l, c0l, c0r, c1r })
        } else {
            Err(Error::InvalidConfig(format!(
                "four-cut rule needs c1l <= c0l <= c0r <= c1r, got ({c1l}, {c0l}, {c0r}, {c1r})"
            )))
        }
    }

    /// `(-reject, -accept, accept, reject)`.
    pub fn symmetric(accept: f64, reject: f64) -> Result<Self> {
        Self::new(-reject, -accept, accept, reject)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.c1l, self.c0l, self.c0r, self.c1r]
    }

    pub fn decide(&self, v: f64) -> Decision {
        four_cut_decision(v, *self)
    }
}

/// Probabilities of the three decisions at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionProbs {
    pub p_accept: f64,
    pub p_agnostic: f64,
    pub p_reject: f64,
}

impl DecisionProbs {
    /// Builds the triple from the accept and reject probabilities; agnostic is the remainder.
    pub fn from_accept_reject(p_accept: f64, p_reject: f64) -> Result<Self> {
        let ok = |p: f64| (0.0..=1.0).contains(&p);
        if !ok(p_accept) || !ok(p_reject) {
            return Err(Error::Numeric(format!(
                "decision probabilities outside [0, 1]: accept {p_accept}, reject {p_reject}"
            )));
        }
        let p_agnostic = 1.0 - p_accept - p_reject;
        if p_agnostic < -1e-12 {
            return Err(Error::Numeric(format!(
                "accept ({p_accept}) and reject ({p_reject}) probabilities exceed 1"
            )));
        }
        Ok(Self { p_accept, p_agnostic: p_agnostic.max(0.0), p_reject })
    }

    pub fn get(&self, d: Decision) -> f64 {
        match d {
            Decision::Accept => self.p_accept,
            Decision::Agnostic => self.p_agnostic,
            Decision::Reject => self.p_reject,
        }
    }

    /// Probability of the correct decisive outcome: accept under the null, reject otherwise.
    pub fn power(&self, in_null: bool) -> f64 {
        if in_null {
            self.p_accept
        } else {
            self.p_reject
        }
    }

    pub fn total(&self) -> f64 {
        self.p_accept + self.p_agnostic + self.p_reject
    }
}

/// Accept iff `t <= c0`; reject iff `t > c1`.
pub fn cut_decision(t: f64, rule: CutRule) -> Decision {
    if t <= rule.c0 {
        Decision::Accept
    } else if t > rule.c1 {
        Decision::Reject
    } else {
        Decision::Agnostic
    }
}

/// Reject iff `v < c1l` or `v > c1r`; accept iff `c0l <= v <= c0r`.
pub fn four_cut_decision(v: f64, cuts: FourCut) -> Decision {
    if v < cuts.c1l || v > cuts.c1r {
        Decision::Reject
    } else if cuts.c0l <= v && v <= cuts.c0r {
        Decision::Accept
    } else {
        Decision::Agnostic
    }
}

/// Agnostic test induced by a p-value: reject when `p < alpha`, accept when `p >= 1 - beta`.
pub fn pvalue_decision(p: Probability, budget: ErrorBudget) -> Result<Decision> {
    budget.require_coherent()?;
    let p = p.get();
    Ok(if p < budget.alpha() {
        Decision::Reject
    } else if p >= 1.0 - budget.beta() {
        Decision::Accept
    } else {
        Decision::Agnostic
    })
}

fn checked_cdf<F: Fn(f64) -> f64>(cdf_at: &F, x: f64) -> Result<f64> {
    let v = cdf_at(x);
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("cdf returned {v} at {x}")))
    }
}

/// Decision probabilities of a cut rule given the statistic's CDF at a fixed parameter.
pub fn decision_probs_from_cut<F: Fn(f64) -> f64>(cdf_at: F, rule: CutRule) -> Result<DecisionProbs> {
    let at_c0 = checked_cdf(&cdf_at, rule.c0)?;
    let at_c1 = checked_cdf(&cdf_at, rule.c1)?;
    DecisionProbs::from_accept_reject(at_c0, 1.0 - at_c1)
}

/// Decision probabilities of a four-cut rule for a continuous statistic.
pub fn decision_probs_from_four_cut<F: Fn(f64) -> f64>(cdf_at: F, cuts: FourCut) -> Result<DecisionProbs> {
    let [c1l, c0l, c0r, c1r] = cuts.as_array();
    let accept = checked_cdf(&cdf_at, c0r)? - checked_cdf(&cdf_at, c0l)?;
    let reject = checked_cdf(&cdf_at, c1l)? + (1.0 - checked_cdf(&cdf_at, c1r)?);
    DecisionProbs::from_accept_reject(accept.max(0.0), reject.min(1.0))
}
