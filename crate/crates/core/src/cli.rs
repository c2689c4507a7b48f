//! Command-line entry points: `run`, `sweep`, `sensitivity` and `verify`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::experiments::{
    extreme_battery, grid, sensitivity_suite, sweep, SensitivityPlan, Simulation, SweepParam,
};
use crate::io::{
    edges_csv, parse_config, sensitivity_csv, summary_json, sweep_csv, timeseries_csv,
    write_atomically, ConfigFile, RunReport,
};
use crate::model::Params;

#[derive(Debug, Parser)]
#[command(name = "affinet", version, about = "Affinity-driven social network simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one simulation and write its time series and summary.
    Run {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also write the final edge list to edges.csv.
        #[arg(long)]
        dump_edges: bool,
    },
    /// Vary one parameter over a range and aggregate final outputs.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        param: String,
        #[arg(long, requires_all = ["to", "step"], conflicts_with = "values")]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        /// Explicit comma-separated values instead of a range.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Sensitivity coefficients of final clustering and affinity spread.
    Sensitivity {
        #[command(flatten)]
        model: ModelArgs,
        /// Relative parameter changes.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.1,-0.05,0.05,0.1")]
        deltas: Vec<f64>,
        /// Replications per perturbed cell.
        #[arg(long, default_value_t = 20)]
        reps: usize,
        /// Replications of the unperturbed baseline.
        #[arg(long, default_value_t = 30)]
        baseline_reps: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the extreme-parameter scenarios and check their expected outcomes.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

/// Model parameter flags shared by every subcommand.
#[derive(Debug, Default, Args)]
pub struct ModelArgs {
    /// TOML file with any of the parameter keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub max_profiles: Option<usize>,
    #[arg(long)]
    pub max_network: Option<usize>,
    #[arg(long)]
    pub distortion: Option<f64>,
    #[arg(long)]
    pub max_change: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub aff_radius: Option<f64>,
    #[arg(long)]
    pub people_dead: Option<usize>,
}

impl ModelArgs {
    pub fn params(&self) -> Result<Params> {
        let overrides = ConfigFile {
            max_profiles: self.max_profiles,
            max_network: self.max_network,
            distortion: self.distortion,
            max_change: self.max_change,
            aff_radius: self.aff_radius,
            people_dead: self.people_dead,
            steps: self.steps,
            seed: self.seed,
        };
        parse_config(self.config.as_deref(), &overrides)
    }
}

pub fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run { model, out, dump_edges } => run_command(&model.params()?, &out, dump_edges),
        Command::Sweep { model, param, from, to, step, values, reps, out } => {
            let param: SweepParam = param.parse()?;
            let values = match (values, from, to, step) {
                (Some(v), ..) => v,
                (None, Some(f), Some(t), Some(s)) => grid(f, t, s)?,
                _ => {
                    return Err(Error::Sweep {
                        param: param.name().into(),
                        message: "give either --values or all of --from/--to/--step".into(),
                    })
                }
            };
            sweep_command(&model.params()?, param, &values, reps, &out)
        }
        Command::Sensitivity { model, deltas, reps, baseline_reps, out } => {
            let plan = SensitivityPlan { deltas, baseline_reps, cell_reps: reps, ..Default::default() };
            sensitivity_command(&model.params()?, &plan, &out)
        }
        Command::Verify { model, reps } => verify_command(&model.params()?, reps),
    }
}

pub fn run_command(params: &Params, out: &std::path::Path, dump_edges: bool) -> Result<ExitCode> {
    let (summary, net) = Simulation::new(params)?.run();
    let csv = timeseries_csv(&summary.time_series);
    let json = summary_json(&RunReport {
        seed: params.seed,
        steps: params.steps,
        params,
        final_row: &summary.final_row,
    });
    let edges = dump_edges.then(|| edges_csv(&net.edge_list()));
    let mut files: Vec<(&str, &[u8])> = vec![("timeseries.csv", csv.as_bytes()), ("summary.json", json.as_bytes())];
    if let Some(e) = &edges {
        files.push(("edges.csv", e.as_bytes()));
    }
    write_atomically(out, &files)?;
    Ok(ExitCode::SUCCESS)
}

pub fn sweep_command(
    params: &Params,
    param: SweepParam,
    values: &[f64],
    reps: usize,
    out: &std::path::Path,
) -> Result<ExitCode> {
    let result = sweep(params, param, values, reps, Executor::default())?;
    write_atomically(out, &[("sweep.csv", sweep_csv(&result).as_bytes())])?;
    Ok(ExitCode::SUCCESS)
}

pub fn sensitivity_command(params: &Params, plan: &SensitivityPlan, out: &std::path::Path) -> Result<ExitCode> {
    let table = sensitivity_suite(params, plan, Executor::default())?;
    write_atomically(out, &[("sensitivity.csv", sensitivity_csv(&table).as_bytes())])?;
    Ok(ExitCode::SUCCESS)
}

/// Prints one PASS/FAIL line per scenario; fails when any scenario does.
pub fn verify_command(params: &Params, reps: usize) -> Result<ExitCode> {
    let report = extreme_battery(params, reps, Executor::default())?;
    for s in &report.scenarios {
        let verdict = if s.passed() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:<42} clustering={:.4} std_affinity={:.4} density={:.4}",
            s.name, s.aggregates.clustering.mean, s.aggregates.std_affinity.mean, s.aggregates.density.mean
        );
        for c in s.checks.iter().filter(|c| !c.passed) {
            println!("     failed: {} ({})", c.name, c.detail);
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
