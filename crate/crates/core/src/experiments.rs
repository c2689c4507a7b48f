//! Replications, parameter sweeps, sensitivity analysis and the
//! extreme-scenario battery.
//!
//! Every experiment is a set of independent simulations, each with its own
//! network and random streams, dispatched through an [`Executor`]. Results
//! are gathered in cell/replication index order before any reduction.

use std::fmt;
use std::str::FromStr;

use crate::dynamics::{initialize, step, StepEvents};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::metrics::MetricsRow;
use crate::model::Params;
use crate::network::Network;
use crate::rng::{derive_seed, StreamSet};

/// Standard deviation of Uniform(0, 1).
pub const UNIFORM_STD: f64 = 0.288_675_134_594_812_9;

/// Per-step event tallies kept alongside the metrics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepTally {
    pub links_created: usize,
    pub promotions: usize,
    pub demotions: usize,
    pub severances: usize,
    pub deaths: usize,
}

impl From<&StepEvents> for StepTally {
    fn from(ev: &StepEvents) -> Self {
        StepTally {
            links_created: ev.links_created,
            promotions: ev.promotions,
            demotions: ev.demotions,
            severances: ev.severances,
            deaths: ev.deaths.len(),
        }
    }
}

/// A live simulation: parameters, state and random streams.
#[derive(Clone, Debug)]
pub struct Simulation {
    params: Params,
    streams: StreamSet,
    net: Network,
}

impl Simulation {
    pub fn new(params: &Params) -> Result<Self> {
        let mut streams = StreamSet::new(params.seed);
        let net = initialize(params, &mut streams)?;
        Ok(Simulation { params: params.clone(), streams, net })
    }

    /// Starts from a prepared network instead of a random initialization.
    pub fn from_network(params: &Params, net: Network) -> Result<Self> {
        params.validate().map_err(Error::InvalidParams)?;
        Ok(Simulation { params: params.clone(), streams: StreamSet::new(params.seed), net })
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn step(&mut self) -> StepEvents {
        step(&mut self.net, &self.params, &mut self.streams)
    }

    pub fn observe(&self) -> MetricsRow {
        MetricsRow::observe(&self.net).expect("a valid population is never empty")
    }

    /// Runs the remaining `params.steps` steps and summarizes them.
    pub fn run(mut self) -> (RunSummary, Network) {
        let steps = self.params.steps;
        let mut time_series = Vec::with_capacity(steps);
        let mut tallies = Vec::with_capacity(steps);
        let initial_row = self.observe();
        for _ in 0..steps {
            let ev = self.step();
            tallies.push(StepTally::from(&ev));
            time_series.push(self.observe());
        }
        let final_row = time_series.last().cloned().unwrap_or(initial_row.clone());
        let summary = RunSummary {
            seed: self.params.seed,
            params: self.params,
            initial_row,
            final_row,
            time_series,
            tallies,
        };
        (summary, self.net)
    }
}

/// The record of one full simulation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub params: Params,
    pub seed: u64,
    /// State before the first step.
    pub initial_row: MetricsRow,
    /// Last element of `time_series`, or `initial_row` when no steps ran.
    pub final_row: MetricsRow,
    /// One row per step.
    pub time_series: Vec<MetricsRow>,
    pub tallies: Vec<StepTally>,
}

pub fn run_simulation(params: &Params) -> Result<RunSummary> {
    Ok(Simulation::new(params)?.run().0)
}

/// Mean and sample standard deviation over replications (0 for one sample).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Aggregate {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

impl Aggregate {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let xs: Vec<f64> = values.into_iter().collect();
        let count = xs.len();
        if count == 0 {
            return Aggregate { mean: f64::NAN, std: f64::NAN, count };
        }
        let mean = xs.iter().sum::<f64>() / count as f64;
        let std = if count > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Aggregate { mean, std, count }
    }
}

/// Cross-replication aggregates of the final-row outputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutputAggregates {
    pub clustering: Aggregate,
    pub std_affinity: Aggregate,
    pub density: Aggregate,
    pub mean_net_size: Aggregate,
}

impl OutputAggregates {
    pub fn of(runs: &[RunSummary]) -> Self {
        let agg = |f: fn(&MetricsRow) -> f64| Aggregate::of(runs.iter().map(|r| f(&r.final_row)));
        OutputAggregates {
            clustering: agg(|r| r.clustering),
            std_affinity: agg(|r| r.std_affinity),
            density: agg(|r| r.density),
            mean_net_size: agg(|r| r.mean_net_size),
        }
    }

    pub fn get(&self, output: Output) -> Aggregate {
        match output {
            Output::Clustering => self.clustering,
            Output::StdAffinity => self.std_affinity,
            Output::Density => self.density,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Replications {
    pub runs: Vec<RunSummary>,
    pub aggregates: OutputAggregates,
}

/// One full simulation of `params` per seed, in seed order.
pub fn run_replications(params: &Params, seeds: &[u64], exec: Executor) -> Result<Replications> {
    if seeds.is_empty() {
        return Err(Error::NoSeeds);
    }
    params.validate().map_err(Error::InvalidParams)?;
    let runs = exec
        .map(seeds.len(), |i| run_simulation(&Params { seed: seeds[i], ..params.clone() }))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let aggregates = OutputAggregates::of(&runs);
    Ok(Replications { runs, aggregates })
}

/// Seeds `derive_seed(master, cell, 0..reps)`.
pub fn cell_seeds(master: u64, cell: u64, reps: usize) -> Vec<u64> {
    (0..reps as u64).map(|r| derive_seed(master, cell, r)).collect()
}

/// Outputs tracked by sweeps and sensitivity tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Clustering,
    StdAffinity,
    Density,
}

impl Output {
    pub fn name(self) -> &'static str {
        match self {
            Output::Clustering => "clustering",
            Output::StdAffinity => "std_affinity",
            Output::Density => "density",
        }
    }
}

/// Model parameters that experiments may vary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    MaxProfiles,
    MaxNetwork,
    Distortion,
    MaxChange,
    AffRadius,
    PeopleDead,
}

impl SweepParam {
    pub const ALL: [SweepParam; 6] = [
        SweepParam::MaxProfiles,
        SweepParam::MaxNetwork,
        SweepParam::Distortion,
        SweepParam::MaxChange,
        SweepParam::AffRadius,
        SweepParam::PeopleDead,
    ];

    pub const NAMES: [&'static str; 6] = [
        "max-profiles",
        "max-network",
        "distortion",
        "max-change",
        "aff-radius",
        "people-dead",
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }

    pub fn is_integer(self) -> bool {
        matches!(self, SweepParam::MaxProfiles | SweepParam::MaxNetwork | SweepParam::PeopleDead)
    }

    pub fn get(self, p: &Params) -> f64 {
        match self {
            SweepParam::MaxProfiles => p.max_profiles as f64,
            SweepParam::MaxNetwork => p.max_network as f64,
            SweepParam::Distortion => p.distortion,
            SweepParam::MaxChange => p.max_change,
            SweepParam::AffRadius => p.aff_radius,
            SweepParam::PeopleDead => p.people_dead as f64,
        }
    }

    /// `base` with this field set to `value`, validated.
    pub fn apply(self, base: &Params, value: f64) -> Result<Params> {
        let bad = |message: String| Error::Sweep { param: self.name().into(), message };
        let mut p = base.clone();
        if self.is_integer() {
            if !(value >= 0.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                return Err(bad(format!("{value} is not a non-negative integer")));
            }
            let v = value as usize;
            match self {
                SweepParam::MaxProfiles => p.max_profiles = v,
                SweepParam::MaxNetwork => p.max_network = v,
                _ => p.people_dead = v,
            }
        } else {
            match self {
                SweepParam::Distortion => p.distortion = value,
                SweepParam::MaxChange => p.max_change = value,
                _ => p.aff_radius = value,
            }
        }
        p.validate()
            .map_err(|v| bad(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))?;
        Ok(p)
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::NotSweepable(s.to_owned()))
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `from, from + step, ...` up to `to` inclusive (with a relative slack of
/// 1e-9 steps), each value computed as `from + i * step` to avoid drift.
pub fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    let bad = |message: &str| Error::Sweep { param: "grid".into(), message: message.into() };
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err(bad("bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if to < from {
        return Err(bad("`to` is below `from`"));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let v = from + i as f64 * step;
            // snap to 12 decimals so 0.1 + 3 * 0.05 prints as 0.25
            (v * 1e12).round() / 1e12
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub aggregates: OutputAggregates,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub param: SweepParam,
    pub reps: usize,
    pub rows: Vec<SweepRow>,
}

/// Runs `reps` replications of `base` for every value of `param`. Cell `c`
/// (the value's index) uses seeds `derive_seed(base.seed, c, r)`. All values
/// are validated before any simulation starts.
pub fn sweep(
    base: &Params,
    param: SweepParam,
    values: &[f64],
    reps: usize,
    exec: Executor,
) -> Result<SweepResult> {
    if reps == 0 && !values.is_empty() {
        return Err(Error::NoSeeds);
    }
    let cells = values
        .iter()
        .map(|&v| param.apply(base, v))
        .collect::<Result<Vec<_>>>()?;
    let runs = exec
        .map(cells.len() * reps, |k| {
            let (c, r) = (k / reps, k % reps);
            let seed = derive_seed(base.seed, c as u64, r as u64);
            run_simulation(&Params { seed, ..cells[c].clone() })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let rows = values
        .iter()
        .zip(runs.chunks(reps.max(1)))
        .map(|(&value, chunk)| SweepRow { value, aggregates: OutputAggregates::of(chunk) })
        .collect();
    Ok(SweepResult { param, reps, rows })
}

/// Why a sensitivity coefficient could not be computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Undefined {
    ZeroBaselineOutput,
    ZeroBaselineParam,
    NoParamChange,
}

impl Undefined {
    pub fn name(self) -> &'static str {
        match self {
            Undefined::ZeroBaselineOutput => "zero-baseline-output",
            Undefined::ZeroBaselineParam => "zero-baseline-param",
            Undefined::NoParamChange => "no-param-change",
        }
    }
}

/// Relative output change over relative parameter change.
pub fn sensitivity_coefficient(
    base_out: f64,
    new_out: f64,
    base_param: f64,
    new_param: f64,
) -> Result<f64, Undefined> {
    if base_out == 0.0 {
        return Err(Undefined::ZeroBaselineOutput);
    }
    if base_param == 0.0 {
        return Err(Undefined::ZeroBaselineParam);
    }
    if new_param == base_param {
        return Err(Undefined::NoParamChange);
    }
    Ok(((new_out - base_out) / base_out) / ((new_param - base_param) / base_param))
}

/// `base * (1 + delta)`, rounded for integer parameters to the nearest
/// integer with exact halves going away from `base`.
pub fn perturb(param: SweepParam, base: f64, delta: f64) -> f64 {
    let raw = base * (1.0 + delta);
    if !param.is_integer() {
        return raw;
    }
    let down = raw.floor();
    match (raw - down).partial_cmp(&0.5) {
        Some(std::cmp::Ordering::Less) => down,
        Some(std::cmp::Ordering::Greater) => down + 1.0,
        _ if raw < base => down,
        _ => down + 1.0,
    }
}

#[derive(Clone, Debug)]
pub struct SensitivityPlan {
    pub params: Vec<SweepParam>,
    pub deltas: Vec<f64>,
    pub baseline_reps: usize,
    pub cell_reps: usize,
}

impl Default for SensitivityPlan {
    fn default() -> Self {
        SensitivityPlan {
            params: vec![
                SweepParam::MaxNetwork,
                SweepParam::Distortion,
                SweepParam::MaxChange,
                SweepParam::AffRadius,
                SweepParam::PeopleDead,
            ],
            deltas: vec![-0.10, -0.05, 0.05, 0.10],
            baseline_reps: 30,
            cell_reps: 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CellStatus {
    Ok(f64),
    Undefined(Undefined),
    /// The perturbed value breaks a parameter constraint; nothing was run.
    Invalid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityRow {
    pub param: SweepParam,
    pub delta: f64,
    pub base_value: f64,
    pub new_value: f64,
    pub output: Output,
    pub base_output: f64,
    pub new_output: f64,
    pub status: CellStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityTable {
    pub baseline: Option<OutputAggregates>,
    pub rows: Vec<SensitivityRow>,
}

/// Sensitivity of final clustering and final affinity spread to relative
/// parameter changes.
///
/// The baseline and every cell use common random numbers: replication `r`
/// always runs with `derive_seed(base.seed, 0, r)`, so baseline and perturbed
/// runs differ only in the parameter. Zero deltas are dropped; a perturbed
/// value that rounds back to the baseline is still run and reported with
/// [`Undefined::NoParamChange`].
pub fn sensitivity_suite(base: &Params, plan: &SensitivityPlan, exec: Executor) -> Result<SensitivityTable> {
    let deltas: Vec<f64> = plan.deltas.iter().copied().filter(|&d| d != 0.0).collect();
    if deltas.is_empty() || plan.params.is_empty() {
        return Ok(SensitivityTable { baseline: None, rows: Vec::new() });
    }
    if plan.baseline_reps == 0 || plan.cell_reps == 0 {
        return Err(Error::NoSeeds);
    }
    base.validate().map_err(Error::InvalidParams)?;

    struct Cell {
        param: SweepParam,
        delta: f64,
        new_value: f64,
        params: Option<Params>,
    }
    let cells: Vec<Cell> = plan
        .params
        .iter()
        .flat_map(|&param| deltas.iter().map(move |&delta| (param, delta)))
        .map(|(param, delta)| {
            let new_value = perturb(param, param.get(base), delta);
            let params = param.apply(base, new_value).ok();
            Cell { param, delta, new_value, params }
        })
        .collect();

    let baseline = run_replications(base, &cell_seeds(base.seed, 0, plan.baseline_reps), exec)?.aggregates;
    let seeds = cell_seeds(base.seed, 0, plan.cell_reps);
    let reps = plan.cell_reps;
    let runnable: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].params.is_some()).collect();
    let runs = exec
        .map(runnable.len() * reps, |k| {
            let p = cells[runnable[k / reps]].params.as_ref().expect("runnable");
            run_simulation(&Params { seed: seeds[k % reps], ..p.clone() })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut per_cell: Vec<Option<OutputAggregates>> = vec![None; cells.len()];
    for (i, chunk) in runnable.iter().zip(runs.chunks(reps)) {
        per_cell[*i] = Some(OutputAggregates::of(chunk));
    }

    let mut rows = Vec::new();
    for (cell, agg) in cells.iter().zip(&per_cell) {
        for output in [Output::Clustering, Output::StdAffinity] {
            let base_output = baseline.get(output).mean;
            let base_value = cell.param.get(base);
            let (new_output, status) = match agg {
                None => (f64::NAN, CellStatus::Invalid),
                Some(a) => {
                    let new_output = a.get(output).mean;
                    let s = sensitivity_coefficient(base_output, new_output, base_value, cell.new_value);
                    (new_output, s.map_or_else(CellStatus::Undefined, CellStatus::Ok))
                }
            };
            rows.push(SensitivityRow {
                param: cell.param,
                delta: cell.delta,
                base_value,
                new_value: cell.new_value,
                output,
                base_output,
                new_output,
                status,
            });
        }
    }
    Ok(SensitivityTable { baseline: Some(baseline), rows })
}

/// One assertion inside a battery scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check { name: name.to_owned(), passed, detail }
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub name: &'static str,
    pub params: Params,
    pub aggregates: OutputAggregates,
    pub checks: Vec<Check>,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct BatteryReport {
    pub reps: usize,
    pub scenarios: Vec<ScenarioOutcome>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.scenarios.iter().all(ScenarioOutcome::passed)
    }
}

/// Largest tolerated distance between an affinity spread and [`UNIFORM_STD`]
/// in the scenarios that freeze affinities.
pub const UNIFORM_STD_BAND: f64 = 0.03;

/// Lower bound on mean final density when everyone accepts everyone.
pub const FULL_RADIUS_MIN_DENSITY: f64 = 0.40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scenario {
    Default,
    ZeroRadius,
    FullRadius,
    Frozen,
    FrozenNoDeaths,
    FullNetwork,
    Noiseless,
    NoiselessFrozen,
}

impl Scenario {
    const ALL: [Scenario; 8] = [
        Scenario::Default,
        Scenario::ZeroRadius,
        Scenario::FullRadius,
        Scenario::Frozen,
        Scenario::FrozenNoDeaths,
        Scenario::FullNetwork,
        Scenario::Noiseless,
        Scenario::NoiselessFrozen,
    ];

    fn name(self) -> &'static str {
        match self {
            Scenario::Default => "default",
            Scenario::ZeroRadius => "aff-radius=0",
            Scenario::FullRadius => "aff-radius=1",
            Scenario::Frozen => "max-change=0",
            Scenario::FrozenNoDeaths => "max-change=0,people-dead=0",
            Scenario::FullNetwork => "max-network=max-profiles-1",
            Scenario::Noiseless => "distortion=0",
            Scenario::NoiselessFrozen => "distortion=0,people-dead=0,max-change=0",
        }
    }

    fn params(self, base: &Params) -> Params {
        let b = base.clone();
        match self {
            Scenario::Default => b,
            Scenario::ZeroRadius => Params { aff_radius: 0.0, ..b },
            Scenario::FullRadius => Params { aff_radius: 1.0, ..b },
            Scenario::Frozen => Params { max_change: 0.0, ..b },
            Scenario::FrozenNoDeaths => Params { max_change: 0.0, people_dead: 0, ..b },
            Scenario::FullNetwork => Params { max_network: b.max_profiles - 1, ..b },
            Scenario::Noiseless => Params { distortion: 0.0, ..b },
            Scenario::NoiselessFrozen => Params { distortion: 0.0, people_dead: 0, max_change: 0.0, ..b },
        }
    }
}

/// Affinity statistics may only move on steps where someone was replaced.
fn frozen_check(runs: &[RunSummary]) -> Check {
    let mut moved = 0usize;
    for run in runs {
        let mut prev = &run.initial_row;
        for (row, tally) in run.time_series.iter().zip(&run.tallies) {
            let same = row.mean_affinity.to_bits() == prev.mean_affinity.to_bits()
                && row.std_affinity.to_bits() == prev.std_affinity.to_bits();
            if tally.deaths == 0 && !same {
                moved += 1;
            }
            prev = row;
        }
    }
    Check::new(
        "affinities change only through replacement",
        moved == 0,
        format!("{moved} death-free steps with moving affinity statistics"),
    )
}

fn uniform_spread_check(agg: &OutputAggregates) -> Check {
    let m = agg.std_affinity.mean;
    Check::new(
        "affinity std near uniform",
        (m - UNIFORM_STD).abs() <= UNIFORM_STD_BAND,
        format!("mean final std {m:.4} vs {UNIFORM_STD:.4} +/- {UNIFORM_STD_BAND}"),
    )
}

/// Runs every extreme scenario (plus the default reference) `reps` times from
/// `base` and checks each against its expected outcome. Scenario `i` uses
/// seeds `derive_seed(base.seed, i, r)`.
pub fn extreme_battery(base: &Params, reps: usize, exec: Executor) -> Result<BatteryReport> {
    if reps == 0 {
        return Err(Error::NoSeeds);
    }
    base.validate().map_err(Error::InvalidParams)?;
    let all: Vec<(Scenario, Params)> = Scenario::ALL.iter().map(|&s| (s, s.params(base))).collect();
    for (_, p) in &all {
        p.validate().map_err(Error::InvalidParams)?;
    }
    let runs = exec
        .map(all.len() * reps, |k| {
            let (c, r) = (k / reps, k % reps);
            let seed = derive_seed(base.seed, c as u64, r as u64);
            run_simulation(&Params { seed, ..all[c].1.clone() })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let groups: Vec<&[RunSummary]> = runs.chunks(reps).collect();
    let default_agg = OutputAggregates::of(groups[0]);

    let scenarios = all
        .iter()
        .zip(&groups)
        .map(|((scenario, params), group)| {
            let aggregates = OutputAggregates::of(group);
            let mut checks = Vec::new();
            match scenario {
                Scenario::Default => {}
                Scenario::ZeroRadius => {
                    let linked_steps = group
                        .iter()
                        .flat_map(|r| &r.time_series)
                        .filter(|row| row.tier_counts.iter().any(|&c| c > 0))
                        .count();
                    checks.push(Check::new(
                        "no links at any step",
                        linked_steps == 0,
                        format!("{linked_steps} steps with links"),
                    ));
                    checks.push(Check::new(
                        "final density is 0",
                        aggregates.density.mean == 0.0,
                        format!("{}", aggregates.density.mean),
                    ));
                }
                Scenario::FullRadius => {
                    let d = aggregates.density.mean;
                    checks.push(Check::new(
                        "final density above default",
                        d > default_agg.density.mean,
                        format!("{d:.4} vs default {:.4}", default_agg.density.mean),
                    ));
                    checks.push(Check::new(
                        "final density above 0.40",
                        d > FULL_RADIUS_MIN_DENSITY,
                        format!("{d:.4}"),
                    ));
                }
                Scenario::Frozen => checks.push(uniform_spread_check(&aggregates)),
                Scenario::FrozenNoDeaths | Scenario::NoiselessFrozen => {
                    checks.push(frozen_check(group));
                    checks.push(uniform_spread_check(&aggregates));
                }
                Scenario::FullNetwork | Scenario::Noiseless => {}
            }
            let bounded = group.iter().flat_map(|r| &r.time_series).all(|row| {
                (0.0..=1.0).contains(&row.density)
                    && (0.0..=1.0).contains(&row.clustering)
                    && (0.0..=1.0).contains(&row.mean_affinity)
            });
            checks.push(Check::new("metrics within bounds", bounded, String::new()));
            ScenarioOutcome { name: scenario.name(), params: params.clone(), aggregates, checks }
        })
        .collect();
    Ok(BatteryReport { reps, scenarios })
}
