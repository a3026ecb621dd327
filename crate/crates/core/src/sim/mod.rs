//! Deterministic Monte Carlo verification.

mod consistency;
mod harness;
pub mod rng;
pub mod scenarios;
mod table;

pub use consistency::{
    boundary_nonconsistency_demo, build_consistency_schedule, consistency_run, default_rate, vanishing_budget_boundary,
    ConsistencySchedule, ScheduleRow,
};
pub use harness::{
    binomial_se, dominance_check, estimate_decision_probs, z_region_coverage, ConstantProcedure, DominanceReport,
    DominanceRow, McEstimate, NormalModel, SampleProcedure, SimConfig, TTestProcedure, ZRegionProcedure,
    ZTestProcedure,
};
pub use table::{write_csv, SimRow};
