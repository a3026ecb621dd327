use agnostic_core::sim::scenarios::{scenario, ScenarioOutcome};
use agnostic_core::Result;

/// Runs a named scenario; `replicates = None` uses its default.
pub fn cmd_simulate(name: &str, seed: u64, replicates: Option<u64>) -> Result<ScenarioOutcome> {
    let s = scenario(name)?;
    s.run(seed, replicates.unwrap_or_else(|| s.default_replicates()))
}
