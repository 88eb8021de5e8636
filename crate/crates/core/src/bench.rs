//! Experiment harness: fixed-budget tables, runtime-to-optimum curves, class
//! comparisons and ECDF curves, with CSV, metadata and gnuplot output.
//!
//! An experiment is a grid of cells `(n, class, t)` crossed with a list of
//! algorithms and a number of runs. Every run gets its own seed derived from
//! the experiment seed and its grid coordinates, so the result table is a pure
//! function of the spec regardless of thread scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aom::{sample_aom, sample_ts_aom, AomFunction, CountingOracle};
use crate::error::{Error, Result};
use crate::heuristics::{self, AlgorithmConfig, AlgorithmKind, RunRecord};
use crate::rng::{derive_seed, rng_from_seed};
use crate::transvection::ClassTag;

/// Default per-run evaluation cap of runtime experiments.
pub const DEFAULT_RUNTIME_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Best value reached within the budget.
    FixedBudget,
    /// Evaluations until the optimum is first evaluated.
    Runtime,
    /// Runtime on exactly two classes, reported side by side.
    ClassComparison,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstancePolicy {
    /// A new random instance for every run.
    #[default]
    Fresh,
    /// One instance per cell, shared by all runs and algorithms.
    Shared,
}

/// The function family a cell draws instances from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum InstanceClass {
    /// Uniform invertible matrix and uniform offset.
    General,
    /// Plain OneMax, no offset.
    OneMax,
    /// Transvection sequence of the given class, uniform offset.
    Sequence(ClassTag),
}

impl InstanceClass {
    pub fn uses_length(self) -> bool {
        matches!(self, InstanceClass::Sequence(_))
    }

    pub fn sample<R: rand::Rng + ?Sized>(
        self,
        n: usize,
        t: Option<usize>,
        rng: &mut R,
    ) -> Result<AomFunction> {
        match self {
            InstanceClass::General => Ok(sample_aom(n, rng)),
            InstanceClass::OneMax => Ok(AomFunction::onemax(n)),
            InstanceClass::Sequence(tag) => {
                let t = t.ok_or_else(|| {
                    Error::InvalidConfig(format!("class {tag} needs a sequence length"))
                })?;
                sample_ts_aom(n, t, tag, rng)
            }
        }
    }
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceClass::General => f.write_str("general"),
            InstanceClass::OneMax => f.write_str("onemax"),
            InstanceClass::Sequence(tag) => write!(f, "{tag}"),
        }
    }
}

impl FromStr for InstanceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "general" => Ok(InstanceClass::General),
            "onemax" => Ok(InstanceClass::OneMax),
            other => other.parse().map(InstanceClass::Sequence),
        }
    }
}

impl TryFrom<String> for InstanceClass {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<InstanceClass> for String {
    fn from(c: InstanceClass) -> String {
        c.to_string()
    }
}

/// A sequence length, either literal or `"half_n"` (`floor(n/2)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LengthSpec {
    Fixed(usize),
    Named(String),
}

impl LengthSpec {
    pub fn resolve(&self, n: usize) -> Result<usize> {
        match self {
            LengthSpec::Fixed(t) => Ok(*t),
            LengthSpec::Named(s) if s == "half_n" => Ok(n / 2),
            LengthSpec::Named(s) => Err(Error::InvalidConfig(format!(
                "unknown sequence length '{s}'"
            ))),
        }
    }
}

fn default_true() -> bool {
    true
}

fn default_name() -> String {
    "experiment".into()
}

/// A complete, self-describing experiment, usually read from TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default = "default_name")]
    pub name: String,
    pub kind: ExperimentKind,
    pub n_values: Vec<usize>,
    pub classes: Vec<InstanceClass>,
    /// Sequence lengths. Every class gets one cell per length; classes that
    /// take no length only record it.
    #[serde(default)]
    pub t_values: Vec<LengthSpec>,
    pub algorithms: Vec<AlgorithmKind>,
    /// Per-algorithm parameter overrides, keyed by algorithm name.
    #[serde(default)]
    pub overrides: BTreeMap<String, BTreeMap<String, toml::Value>>,
    pub runs: u64,
    /// Evaluation budget (fixed-budget) or per-run cap (runtime kinds).
    #[serde(default)]
    pub budget: Option<u64>,
    pub seed: u64,
    #[serde(default)]
    pub instance_policy: InstancePolicy,
    #[serde(default = "default_true")]
    pub stop_on_optimum: bool,
    #[serde(default)]
    pub record_trajectory: bool,
}

/// One grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub n: usize,
    pub class: InstanceClass,
    pub t: Option<usize>,
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec is serializable")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.n_values.is_empty() || self.classes.is_empty() || self.algorithms.is_empty() {
            return bad("n_values, classes and algorithms must be non-empty".into());
        }
        if self.n_values.contains(&0) {
            return bad("dimensions must be at least 1".into());
        }
        if self.kind == ExperimentKind::FixedBudget && self.budget.is_none() {
            return bad("fixed_budget experiments need a budget".into());
        }
        if self.kind == ExperimentKind::ClassComparison && self.classes.len() != 2 {
            return bad("class_comparison needs exactly two classes".into());
        }
        for key in self.overrides.keys() {
            let kind: AlgorithmKind = key.parse()?;
            if !self.algorithms.contains(&kind) {
                return bad(format!("overrides for unused algorithm {kind}"));
            }
        }
        for &kind in &self.algorithms {
            self.config_for(kind)?;
        }
        self.cells().map(|_| ())
    }

    fn uses_runtime(&self) -> bool {
        self.kind != ExperimentKind::FixedBudget
    }

    /// The effective configuration of one algorithm.
    pub fn config_for(&self, kind: AlgorithmKind) -> Result<AlgorithmConfig> {
        let mut config = AlgorithmConfig::new(kind, self.budget.unwrap_or(DEFAULT_RUNTIME_CAP));
        config.stop_on_optimum = self.stop_on_optimum || self.uses_runtime();
        config.record_trajectory = self.record_trajectory;
        if let Some(settings) = self.overrides.get(kind.as_str()) {
            for (key, value) in settings {
                let text = match value {
                    toml::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                config.set(key, &text)?;
            }
        }
        config.validate()?;
        Ok(config)
    }

    /// The grid in output order: by `n`, then `t`, then class.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let mut cells = Vec::new();
        for &n in &self.n_values {
            if self.t_values.is_empty() {
                for &class in &self.classes {
                    if class.uses_length() {
                        return Err(Error::InvalidConfig(format!(
                            "class {class} needs t_values"
                        )));
                    }
                    cells.push(Cell { n, class, t: None });
                }
                continue;
            }
            for spec in &self.t_values {
                let t = spec.resolve(n)?;
                for &class in &self.classes {
                    if let InstanceClass::Sequence(tag) = class {
                        tag.check_length(n, t)?;
                    }
                    cells.push(Cell {
                        n,
                        class,
                        t: Some(t),
                    });
                }
            }
        }
        Ok(cells)
    }
}

/// One run of one algorithm in one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRow {
    pub cell: Cell,
    pub algorithm: AlgorithmKind,
    pub run: u64,
    pub seed: u64,
    pub record: RunRecord,
    /// Runtime experiment that hit the cap before the optimum.
    pub censored: bool,
}

impl RunRow {
    /// Runtime for runtime kinds (the cap when censored).
    pub fn runtime(&self) -> u64 {
        self.record
            .evaluations_to_optimum
            .unwrap_or(self.record.evaluations)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub kind: ExperimentKind,
    pub rows: Vec<RunRow>,
}

/// Mean, median and sample standard deviation of one cell and algorithm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub class: String,
    pub t: Option<usize>,
    pub algorithm: String,
    pub metric: &'static str,
    pub runs: usize,
    pub censored: usize,
    pub mean: f64,
    pub median: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

/// Statistics of a sample, in the order the values are given.
pub fn describe(values: &[f64]) -> (f64, f64, f64) {
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };
    let sd = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (len - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, median, sd)
}

impl ResultTable {
    pub fn metric_name(&self) -> &'static str {
        match self.kind {
            ExperimentKind::FixedBudget => "best_value",
            _ => "runtime",
        }
    }

    pub fn metric(&self, row: &RunRow) -> f64 {
        match self.kind {
            ExperimentKind::FixedBudget => row.record.best_value as f64,
            _ => row.runtime() as f64,
        }
    }

    /// Rows of one cell and algorithm, in run order.
    pub fn group(&self, cell: &Cell, algorithm: AlgorithmKind) -> Vec<&RunRow> {
        self.rows
            .iter()
            .filter(|r| r.cell == *cell && r.algorithm == algorithm)
            .collect()
    }

    /// Metric values of one cell and algorithm, in run order.
    pub fn values(&self, cell: &Cell, algorithm: AlgorithmKind) -> Vec<f64> {
        self.group(cell, algorithm)
            .into_iter()
            .map(|r| self.metric(r))
            .collect()
    }

    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut keys: Vec<(Cell, AlgorithmKind)> = Vec::new();
        for r in &self.rows {
            if !keys.contains(&(r.cell, r.algorithm)) {
                keys.push((r.cell, r.algorithm));
            }
        }
        keys.into_iter()
            .map(|(cell, algorithm)| {
                let group = self.group(&cell, algorithm);
                let values: Vec<f64> = group.iter().map(|r| self.metric(r)).collect();
                let (mean, median, sd) = describe(&values);
                SummaryRow {
                    n: cell.n,
                    class: cell.class.to_string(),
                    t: cell.t,
                    algorithm: algorithm.to_string(),
                    metric: self.metric_name(),
                    runs: values.len(),
                    censored: group.iter().filter(|r| r.censored).count(),
                    mean,
                    median,
                    sd,
                    min: values.iter().copied().fold(f64::INFINITY, f64::min),
                    max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                }
            })
            .collect()
    }

    pub fn write_raw<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "n",
            "class",
            "t",
            "algorithm",
            "run",
            "seed",
            "best_value",
            "evaluations",
            "evaluations_to_best",
            "evaluations_to_optimum",
            "censored",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.cell.n.to_string(),
                r.cell.class.to_string(),
                r.cell.t.map(|t| t.to_string()).unwrap_or_default(),
                r.algorithm.to_string(),
                r.run.to_string(),
                r.seed.to_string(),
                r.record.best_value.to_string(),
                r.record.evaluations.to_string(),
                r.record.evaluations_to_best.to_string(),
                r.record
                    .evaluations_to_optimum
                    .map(|e| e.to_string())
                    .unwrap_or_default(),
                r.censored.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_summary<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in self.summary() {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Long-format trajectories: one line per improvement.
    pub fn write_trajectories<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "n",
            "class",
            "t",
            "algorithm",
            "run",
            "evaluation",
            "best_value",
        ])?;
        for r in &self.rows {
            let Some(trajectory) = &r.record.trajectory else {
                continue;
            };
            for &(evaluation, value) in trajectory {
                w.write_record([
                    r.cell.n.to_string(),
                    r.cell.class.to_string(),
                    r.cell.t.map(|t| t.to_string()).unwrap_or_default(),
                    r.algorithm.to_string(),
                    r.run.to_string(),
                    evaluation.to_string(),
                    value.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Side-by-side means of the two classes of a class comparison.
    pub fn write_comparison<W: Write>(&self, classes: &[InstanceClass], out: W) -> Result<()> {
        let [a, b] = classes else {
            return Err(Error::InvalidConfig("comparison needs two classes".into()));
        };
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "n",
            "t",
            "algorithm",
            "class_a",
            "mean_a",
            "class_b",
            "mean_b",
            "ratio_b_over_a",
        ])?;
        let summary = self.summary();
        for sa in summary.iter().filter(|s| s.class == a.to_string()) {
            let Some(sb) = summary.iter().find(|s| {
                s.class == b.to_string()
                    && s.n == sa.n
                    && s.t == sa.t
                    && s.algorithm == sa.algorithm
            }) else {
                continue;
            };
            w.write_record([
                sa.n.to_string(),
                sa.t.map(|t| t.to_string()).unwrap_or_default(),
                sa.algorithm.clone(),
                sa.class.clone(),
                sa.mean.to_string(),
                sb.class.clone(),
                sb.mean.to_string(),
                (sb.mean / sa.mean).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

const INSTANCE_STREAM: u64 = 0;

/// Runs the whole grid. Replications run in parallel; rows come back in
/// (cell, algorithm, run) order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ResultTable> {
    spec.validate()?;
    let cells = spec.cells()?;
    let configs: Vec<AlgorithmConfig> = spec
        .algorithms
        .iter()
        .map(|&k| spec.config_for(k))
        .collect::<Result<_>>()?;
    let instance_runs = match spec.instance_policy {
        InstancePolicy::Fresh => spec.runs,
        InstancePolicy::Shared => 1,
    };
    let instances: Vec<Vec<AomFunction>> = cells
        .par_iter()
        .enumerate()
        .map(|(ci, cell)| {
            (0..instance_runs)
                .map(|r| {
                    let seed = derive_seed(spec.seed, &[ci as u64, INSTANCE_STREAM, r]);
                    cell.class.sample(cell.n, cell.t, &mut rng_from_seed(seed))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let tasks: Vec<(usize, usize, u64)> = (0..cells.len())
        .flat_map(|ci| {
            (0..configs.len()).flat_map(move |ai| (0..spec.runs).map(move |r| (ci, ai, r)))
        })
        .collect();
    let runtime = spec.uses_runtime();
    let rows = tasks
        .into_par_iter()
        .map(|(ci, ai, r)| {
            let f = &instances[ci][(r % instance_runs) as usize];
            let seed = derive_seed(spec.seed, &[ci as u64, 1 + ai as u64, r]);
            let mut oracle = CountingOracle::new(f);
            let record = heuristics::run(&configs[ai], &mut oracle, &mut rng_from_seed(seed))?;
            Ok(RunRow {
                cell: cells[ci],
                algorithm: configs[ai].kind,
                run: r,
                seed,
                censored: runtime && record.evaluations_to_optimum.is_none(),
                record,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResultTable {
        kind: spec.kind,
        rows,
    })
}

fn check_kind(spec: &ExperimentSpec, kind: ExperimentKind) -> Result<ResultTable> {
    if spec.kind != kind {
        return Err(Error::InvalidConfig(format!(
            "expected a {kind:?} experiment"
        )));
    }
    run_experiment(spec)
}

pub fn fixed_budget(spec: &ExperimentSpec) -> Result<ResultTable> {
    check_kind(spec, ExperimentKind::FixedBudget)
}

pub fn runtime_curve(spec: &ExperimentSpec) -> Result<ResultTable> {
    check_kind(spec, ExperimentKind::Runtime)
}

pub fn class_comparison(spec: &ExperimentSpec) -> Result<ResultTable> {
    check_kind(spec, ExperimentKind::ClassComparison)
}

#[derive(Serialize)]
struct Metadata<'a> {
    software: String,
    cells: usize,
    rows: u64,
    spec: &'a ExperimentSpec,
    /// Effective parameters at the first dimension of the grid.
    parameters: BTreeMap<String, AlgorithmConfig>,
}

/// Sidecar metadata (TOML): the spec, effective algorithm parameters and version.
pub fn metadata(spec: &ExperimentSpec) -> Result<String> {
    let cells = spec.cells()?.len();
    let n = spec.n_values[0];
    let mut parameters = BTreeMap::new();
    for &kind in &spec.algorithms {
        let mut config = spec.config_for(kind)?;
        config.population_size = Some(config.population());
        config.mutation_rate = Some(config.mutation_rate_for(n));
        parameters.insert(kind.to_string(), config);
    }
    let meta = Metadata {
        software: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        cells,
        rows: cells as u64 * spec.algorithms.len() as u64 * spec.runs,
        spec,
        parameters,
    };
    toml::to_string(&meta).map_err(|e| Error::Io(e.to_string()))
}

/// A gnuplot script drawing mean +/- sd per algorithm, against `t` when the
/// spec sweeps lengths and against `n` otherwise.
pub fn plot_script(spec: &ExperimentSpec, table: &ResultTable) -> String {
    let by_t = spec.t_values.len() > 1;
    let mut script = format!(
        "set title \"{}\"\nset xlabel \"{}\"\nset ylabel \"{}\"\nset key outside\n",
        spec.name,
        if by_t { "t" } else { "n" },
        table.metric_name()
    );
    if table.kind != ExperimentKind::FixedBudget {
        script.push_str("set logscale y\n");
    }
    let mut series: Vec<(String, Vec<String>)> = Vec::new();
    for s in table.summary() {
        let label = format!("{} {}", s.algorithm, s.class);
        let x = if by_t { s.t.unwrap_or(0) } else { s.n };
        let line = format!("{x} {} {}", s.mean, s.sd);
        match series.iter_mut().find(|(l, _)| *l == label) {
            Some((_, lines)) => lines.push(line),
            None => series.push((label, vec![line])),
        }
    }
    for (i, (_, lines)) in series.iter().enumerate() {
        script.push_str(&format!("$s{i} << EOD\n{}\nEOD\n", lines.join("\n")));
    }
    let plots: Vec<String> = series
        .iter()
        .enumerate()
        .map(|(i, (label, _))| format!("$s{i} using 1:2:3 with yerrorlines title \"{label}\""))
        .collect();
    script.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    script
}

/// Writes `raw.csv`, `summary.csv`, `meta.toml` and `plot.gp` (plus
/// `trajectories.csv` and `comparison.csv` when relevant) into `dir`.
pub fn write_outputs(
    spec: &ExperimentSpec,
    table: &ResultTable,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut open = |name: &str| -> Result<fs::File> {
        let path = dir.join(name);
        let file = fs::File::create(&path)?;
        written.push(path);
        Ok(file)
    };
    table.write_raw(open("raw.csv")?)?;
    table.write_summary(open("summary.csv")?)?;
    open("meta.toml")?.write_all(metadata(spec)?.as_bytes())?;
    open("plot.gp")?.write_all(plot_script(spec, table).as_bytes())?;
    if spec.record_trajectory {
        table.write_trajectories(open("trajectories.csv")?)?;
    }
    if spec.kind == ExperimentKind::ClassComparison {
        table.write_comparison(&spec.classes, open("comparison.csv")?)?;
    }
    Ok(written)
}

/// One improvement step of one run, as stored in `trajectories.csv`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct TrajectoryPoint {
    pub n: usize,
    pub class: String,
    pub t: Option<usize>,
    pub algorithm: String,
    pub run: u64,
    pub evaluation: u64,
    pub best_value: usize,
}

pub fn read_trajectories<R: std::io::Read>(input: R) -> Result<Vec<TrajectoryPoint>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// Points `(evaluations, fraction of (run, target) pairs reached)` of one
/// algorithm's ECDF.
#[derive(Clone, Debug, PartialEq)]
pub struct EcdfCurve {
    pub algorithm: String,
    pub points: Vec<(u64, f64)>,
}

/// For each algorithm, the fraction of `(run, target)` pairs whose target was
/// reached within a given number of evaluations. Runs are identified by
/// `(n, class, t, run)`.
pub fn ecdf(points: &[TrajectoryPoint], targets: &[usize]) -> Result<Vec<EcdfCurve>> {
    if points.is_empty() {
        return Err(Error::InvalidConfig("no trajectories recorded".into()));
    }
    if targets.is_empty() {
        return Err(Error::InvalidConfig("no targets given".into()));
    }
    type RunKey = (usize, String, Option<usize>, u64);
    let mut runs: BTreeMap<String, BTreeMap<RunKey, Vec<(u64, usize)>>> = BTreeMap::new();
    for p in points {
        runs.entry(p.algorithm.clone())
            .or_default()
            .entry((p.n, p.class.clone(), p.t, p.run))
            .or_default()
            .push((p.evaluation, p.best_value));
    }
    let mut curves = Vec::new();
    for (algorithm, per_run) in runs {
        let total = (per_run.len() * targets.len()) as f64;
        let mut hits: Vec<u64> = Vec::new();
        for trajectory in per_run.values() {
            for &target in targets {
                if let Some(&(e, _)) = trajectory.iter().find(|&&(_, v)| v >= target) {
                    hits.push(e);
                }
            }
        }
        hits.sort_unstable();
        let mut points = Vec::new();
        for (i, &e) in hits.iter().enumerate() {
            if hits.get(i + 1) != Some(&e) {
                points.push((e, (i + 1) as f64 / total));
            }
        }
        curves.push(EcdfCurve { algorithm, points });
    }
    Ok(curves)
}

pub fn write_ecdf<W: Write>(curves: &[EcdfCurve], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["algorithm", "evaluations", "fraction"])?;
    for c in curves {
        for &(e, frac) in &c.points {
            w.write_record([c.algorithm.clone(), e.to_string(), frac.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}
