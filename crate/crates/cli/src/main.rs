use std::path::PathBuf;
use std::process::ExitCode;

use agnostic_cli::data::load_csv;
use agnostic_cli::output::{render, Format};
use agnostic_cli::power::{self as power_cmd, PowerRequest};
use agnostic_cli::{cmd_power, cmd_regress, cmd_simulate, ReportRow};
use agnostic_core::power::{linear_grid, model_names, MeanSetting};
use agnostic_core::sim::scenarios::{scenario_names, DEFAULT_SEED};
use agnostic_core::sim::{write_csv, SimRow};
use agnostic_core::ErrorBudget;
use anyhow::{anyhow, Context, Result};
use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "agnostic", version, about = "Agnostic (accept / reject / remain agnostic) hypothesis tests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Levels {
    /// Type I error bound.
    #[arg(long, default_value_t = 0.05, value_parser = open_unit)]
    alpha: f64,
    /// Type II error bound.
    #[arg(long, default_value_t = 0.2, value_parser = open_unit)]
    beta: f64,
}

impl Levels {
    fn budget(&self) -> Result<ErrorBudget> {
        Ok(ErrorBudget::new(self.alpha, self.beta)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Agnostic test of every coefficient of a linear regression.
    Regress {
        /// CSV file with a header row.
        csv: PathBuf,
        #[arg(long)]
        response: String,
        #[command(flatten)]
        levels: Levels,
        /// Smallest relevant standardized effect (0 = plain bilateral test).
        #[arg(long = "effect-size", default_value_t = 0.25, value_parser = non_negative)]
        effect_size: f64,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Analytic decision probabilities over a parameter grid.
    Power {
        /// Test family; `effect_size` needs --data, --response and --coefficient.
        #[arg(long, value_parser = PossibleValuesParser::new(power_tests()))]
        test: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mu0: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        levels: Levels,
        /// lo:hi:steps
        #[arg(long, default_value = "-2:2:41", allow_hyphen_values = true, value_parser = parse_grid)]
        grid: Grid,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        response: Option<String>,
        /// Coefficient name for the effect-size curve.
        #[arg(long)]
        coefficient: Option<String>,
        #[arg(long = "effect-size", default_value_t = 0.25, value_parser = non_negative)]
        effect_size: f64,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Monte Carlo scenario; exits non-zero when a check falls outside its band.
    Simulate {
        #[arg(value_parser = PossibleValuesParser::new(scenario_names()))]
        scenario: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Replicates per cell (scenario default when omitted).
        #[arg(long)]
        reps: Option<u64>,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
}

#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

fn power_tests() -> Vec<&'static str> {
    let mut names = model_names();
    names.push("effect_size");
    names
}

fn open_unit(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v < 1.0 => Ok(v),
        _ => Err(format!("'{s}' is not a probability in (0, 1)")),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a non-negative number")),
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(format!("grid '{s}' is not lo:hi:steps"));
    };
    let lo: f64 = lo.parse().map_err(|_| format!("bad grid start '{lo}'"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad grid end '{hi}'"))?;
    let steps: usize = steps.parse().map_err(|_| format!("bad grid step count '{steps}'"))?;
    linear_grid(lo, hi, steps).map(Grid).map_err(|e| e.to_string())
}

fn sim_cells(r: &SimRow) -> Vec<String> {
    let p = r.probs;
    vec![
        r.n.to_string(),
        r.theta.to_string(),
        format!("{:.5}", p.p_accept),
        format!("{:.5}", p.p_agnostic),
        format!("{:.5}", p.p_reject),
        format!("{:.5}", r.se),
    ]
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Regress { csv, response, levels, effect_size, format } => {
            let (data, names) = load_csv(&csv, &response).with_context(|| format!("loading {}", csv.display()))?;
            let rows = cmd_regress(&data, &names, levels.budget()?, effect_size)?;
            let cells: Vec<Vec<String>> = rows.iter().map(ReportRow::cells).collect();
            print!("{}", render(&ReportRow::HEADER, &cells, format)?);
        }
        Command::Power { test, mu0, sigma, n, levels, grid, data, response, coefficient, effect_size, format } => {
            let setting = MeanSetting { mu0, sigma, n, budget: levels.budget()? };
            let rows = if test == "effect_size" {
                let path = data.ok_or_else(|| anyhow!("--test effect_size needs --data"))?;
                let response = response.ok_or_else(|| anyhow!("--test effect_size needs --response"))?;
                let coefficient = coefficient.ok_or_else(|| anyhow!("--test effect_size needs --coefficient"))?;
                let (data, names) = load_csv(&path, &response).with_context(|| format!("loading {}", path.display()))?;
                let j = names
                    .iter()
                    .position(|c| *c == coefficient)
                    .ok_or_else(|| anyhow!("no coefficient named '{coefficient}'"))?;
                cmd_power(PowerRequest::EffectSize { data: &data, coefficient: j, d_star: effect_size, setting }, &grid.0)?
            } else {
                cmd_power(PowerRequest::Mean { test: &test, setting }, &grid.0)?
            };
            let cells: Vec<Vec<String>> = rows.iter().map(power_cmd::cells).collect();
            print!("{}", render(&power_cmd::HEADER, &cells, format)?);
        }
        Command::Simulate { scenario, seed, reps, format } => {
            let outcome = cmd_simulate(&scenario, seed, reps)?;
            match format {
                Format::Csv => print!("{}", write_csv(&outcome.rows)),
                Format::Table => {
                    let cells: Vec<Vec<String>> = outcome.rows.iter().map(sim_cells).collect();
                    let header = ["n", "theta", "p_accept", "p_agnostic", "p_reject", "se"];
                    print!("{}", render(&header, &cells, format)?);
                }
            }
            for check in &outcome.checks {
                eprintln!("{} {}", if check.passed { "ok  " } else { "FAIL" }, check.label);
            }
            if !outcome.all_in_band() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
