//! Agnostic (three-decision) hypothesis tests.
//!
//! An agnostic test answers *accept*, *reject* or *remain agnostic*, which lets
//! it bound the type I error by `alpha` and the type II error by `beta` at the
//! same time. The crate is organised bottom-up:
//!
//! * [`specfun`]: normal, Student-t, noncentral-t and F distributions.
//! * [`decision`]: decisions, error budgets, cut rules and the p-value transform.
//! * [`procedures`]: closed-form z, t, regression, F, permutation and effect-size tests.
//! * [`regions`]: tests built from confidence regions and coherence checks.
//! * [`power`]: analytic decision-probability curves, selectable by name.
//! * [`sim`]: deterministic Monte Carlo verification harness and scenarios.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decision;
pub mod error;
pub mod power;
pub mod procedures;
pub mod regions;
pub mod sim;
pub mod specfun;

pub use decision::{CutRule, Decision, DecisionProbs, ErrorBudget, FourCut};
pub use error::{Error, Result};
pub use specfun::{DegreesOfFreedom, Probability};
