//! Black-box search heuristics: random search, local search, simulated
//! annealing, evolutionary algorithms and estimation-of-distribution
//! algorithms.
//!
//! Every algorithm runs against an [`Oracle`] through a [`Tracker`], which
//! enforces the evaluation budget, records the best point and optionally
//! stops as soon as the optimum `n` is observed.

mod eda;
mod evolutionary;
mod local;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aom::Oracle;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AlgorithmKind {
    RandomSearch,
    RandomLocalSearch,
    HillClimbing,
    SimulatedAnnealing,
    OnePlusOneEa,
    TenPlusOneEa,
    Genetic,
    Umda,
    Pbil,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 9] = [
        AlgorithmKind::RandomSearch,
        AlgorithmKind::RandomLocalSearch,
        AlgorithmKind::HillClimbing,
        AlgorithmKind::SimulatedAnnealing,
        AlgorithmKind::OnePlusOneEa,
        AlgorithmKind::TenPlusOneEa,
        AlgorithmKind::Genetic,
        AlgorithmKind::Umda,
        AlgorithmKind::Pbil,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmKind::RandomSearch => "rs",
            AlgorithmKind::RandomLocalSearch => "rls",
            AlgorithmKind::HillClimbing => "hc",
            AlgorithmKind::SimulatedAnnealing => "sa",
            AlgorithmKind::OnePlusOneEa => "ea1+1",
            AlgorithmKind::TenPlusOneEa => "ea10+1",
            AlgorithmKind::Genetic => "ga",
            AlgorithmKind::Umda => "umda",
            AlgorithmKind::Pbil => "pbil",
        }
    }

    /// Population size used when the config leaves it unset.
    pub fn default_population(self) -> usize {
        match self {
            AlgorithmKind::TenPlusOneEa => 10,
            AlgorithmKind::Genetic | AlgorithmKind::Umda | AlgorithmKind::Pbil => 100,
            _ => 1,
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let aliases: &[(&str, AlgorithmKind)] = &[
            ("ea", AlgorithmKind::OnePlusOneEa),
            ("(1+1)ea", AlgorithmKind::OnePlusOneEa),
            ("(10+1)ea", AlgorithmKind::TenPlusOneEa),
        ];
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.as_str() == key)
            .or_else(|| aliases.iter().find(|(a, _)| *a == key).map(|&(_, k)| k))
            .ok_or_else(|| Error::Parse(format!("unknown algorithm '{s}'")))
    }
}

impl TryFrom<String> for AlgorithmKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<AlgorithmKind> for String {
    fn from(k: AlgorithmKind) -> String {
        k.as_str().to_string()
    }
}

/// Algorithm choice plus every tunable parameter. Parameters that a kind does
/// not use are ignored by it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    pub budget: u64,
    pub stop_on_optimum: bool,
    pub record_trajectory: bool,
    /// `None` selects [`AlgorithmKind::default_population`].
    pub population_size: Option<usize>,
    /// Per-bit flip probability; `None` selects `1/n`.
    pub mutation_rate: Option<f64>,
    pub crossover_rate: f64,
    pub tournament_size: usize,
    pub learning_rate: f64,
    pub initial_temperature: f64,
    pub cooling_factor: f64,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig {
            kind: AlgorithmKind::OnePlusOneEa,
            budget: 100_000,
            stop_on_optimum: true,
            record_trajectory: false,
            population_size: None,
            mutation_rate: None,
            crossover_rate: 0.8,
            tournament_size: 2,
            learning_rate: 0.1,
            initial_temperature: 1.0,
            cooling_factor: 0.999,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("bad value '{value}' for {key}")))
}

impl AlgorithmConfig {
    pub fn new(kind: AlgorithmKind, budget: u64) -> Self {
        AlgorithmConfig {
            kind,
            budget,
            ..Self::default()
        }
    }

    pub fn population(&self) -> usize {
        self.population_size
            .unwrap_or_else(|| self.kind.default_population())
    }

    pub fn mutation_rate_for(&self, n: usize) -> f64 {
        self.mutation_rate.unwrap_or(1.0 / n.max(1) as f64)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        let unit = |r: f64| (0.0..=1.0).contains(&r);
        if self.budget == 0 {
            return bad("budget must be at least 1");
        }
        if self.population() == 0 {
            return bad("population size must be at least 1");
        }
        if self.tournament_size == 0 {
            return bad("tournament size must be at least 1");
        }
        if !self.mutation_rate.is_none_or(unit) {
            return bad("mutation rate must lie in [0, 1]");
        }
        if !unit(self.crossover_rate) || !unit(self.learning_rate) {
            return bad("crossover and learning rates must lie in [0, 1]");
        }
        if !unit(self.cooling_factor)
            || self.initial_temperature.is_nan()
            || self.initial_temperature < 0.0
        {
            return bad("cooling factor must lie in [0, 1] and temperature be non-negative");
        }
        Ok(())
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "algorithm" | "kind" => self.kind = value.parse()?,
            "budget" => self.budget = parse_value(key, value)?,
            "stop_on_optimum" => self.stop_on_optimum = parse_value(key, value)?,
            "record_trajectory" => self.record_trajectory = parse_value(key, value)?,
            "population_size" => self.population_size = Some(parse_value(key, value)?),
            "mutation_rate" => self.mutation_rate = Some(parse_value(key, value)?),
            "crossover_rate" => self.crossover_rate = parse_value(key, value)?,
            "tournament_size" => self.tournament_size = parse_value(key, value)?,
            "learning_rate" => self.learning_rate = parse_value(key, value)?,
            "initial_temperature" => self.initial_temperature = parse_value(key, value)?,
            "cooling_factor" => self.cooling_factor = parse_value(key, value)?,
            _ => return Err(Error::Parse(format!("unknown setting '{key}'"))),
        }
        Ok(())
    }

    /// Parses a run file of `key = value` lines; `#` starts a comment.
    pub fn from_run_file(text: &str) -> Result<Self> {
        let mut config = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key = value", lineno + 1))
            })?;
            config.set(key.trim(), value.trim())?;
        }
        config.validate()?;
        Ok(config)
    }

    /// The effective parameters for dimension `n`, as `key = value` lines.
    pub fn describe(&self, n: usize) -> String {
        format!(
            "algorithm = {}\nbudget = {}\nstop_on_optimum = {}\nrecord_trajectory = {}\n\
             population_size = {}\nmutation_rate = {}\ncrossover_rate = {}\ntournament_size = {}\n\
             learning_rate = {}\ninitial_temperature = {}\ncooling_factor = {}\n",
            self.kind,
            self.budget,
            self.stop_on_optimum,
            self.record_trajectory,
            self.population(),
            self.mutation_rate_for(n),
            self.crossover_rate,
            self.tournament_size,
            self.learning_rate,
            self.initial_temperature,
            self.cooling_factor
        )
    }
}

/// Outcome of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    pub best_value: usize,
    pub best_point: BitVec,
    /// Evaluations consumed in total.
    pub evaluations: u64,
    /// 1-based index of the evaluation that first produced `best_value`.
    pub evaluations_to_best: u64,
    /// 1-based index of the first evaluation returning `n`.
    pub evaluations_to_optimum: Option<u64>,
    /// `(evaluation index, best-so-far value)` at every improvement.
    pub trajectory: Option<Vec<(u64, usize)>>,
}

/// Signal that a run must end: budget spent or optimum reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stop;

/// Algorithms loop until the tracker stops them.
pub(crate) type Outcome = std::result::Result<std::convert::Infallible, Stop>;

/// Budget-enforcing wrapper shared by all algorithms.
pub struct Tracker<'o, O: Oracle + ?Sized> {
    oracle: &'o mut O,
    budget: u64,
    stop_on_optimum: bool,
    used: u64,
    best: Option<(usize, BitVec, u64)>,
    hit_optimum: Option<u64>,
    trajectory: Option<Vec<(u64, usize)>>,
}

impl<'o, O: Oracle + ?Sized> Tracker<'o, O> {
    pub fn new(oracle: &'o mut O, config: &AlgorithmConfig) -> Self {
        Tracker {
            oracle,
            budget: config.budget,
            stop_on_optimum: config.stop_on_optimum,
            used: 0,
            best: None,
            hit_optimum: None,
            trajectory: config.record_trajectory.then(Vec::new),
        }
    }

    pub fn dim(&self) -> usize {
        self.oracle.dim()
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    /// Evaluates `x`, or returns [`Stop`] if the budget is already spent or
    /// this evaluation hits the optimum with early stopping enabled.
    pub fn evaluate(&mut self, x: &BitVec) -> std::result::Result<usize, Stop> {
        if self.used >= self.budget {
            return Err(Stop);
        }
        let value = self.oracle.evaluate(x);
        self.used += 1;
        if self.best.as_ref().is_none_or(|(b, _, _)| value > *b) {
            self.best = Some((value, x.clone(), self.used));
            if let Some(t) = &mut self.trajectory {
                t.push((self.used, value));
            }
        }
        if value == self.oracle.dim() && self.hit_optimum.is_none() {
            self.hit_optimum = Some(self.used);
            if self.stop_on_optimum {
                return Err(Stop);
            }
        }
        Ok(value)
    }

    pub fn finish(self) -> RunRecord {
        let n = self.oracle.dim();
        let (best_value, best_point, evaluations_to_best) =
            self.best.unwrap_or((0, BitVec::zeros(n), 0));
        RunRecord {
            best_value,
            best_point,
            evaluations: self.used,
            evaluations_to_best,
            evaluations_to_optimum: self.hit_optimum,
            trajectory: self.trajectory,
        }
    }
}

/// Flips each bit of `x` independently with probability `rate`.
pub(crate) fn mutate<R: rand::Rng + ?Sized>(x: &BitVec, rate: f64, rng: &mut R) -> BitVec {
    let mut y = x.clone();
    for i in 0..y.len() {
        if rng.random_bool(rate) {
            y.flip(i);
        }
    }
    y
}

/// Runs one algorithm until the budget is spent (or the optimum is hit with
/// `stop_on_optimum`).
pub fn run<O, R>(config: &AlgorithmConfig, oracle: &mut O, rng: &mut R) -> Result<RunRecord>
where
    O: Oracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    config.validate()?;
    if oracle.dim() == 0 {
        return Err(Error::InvalidConfig("dimension must be at least 1".into()));
    }
    let mut tracker = Tracker::new(oracle, config);
    let t = &mut tracker;
    let Err(Stop) = match config.kind {
        AlgorithmKind::RandomSearch => local::random_search(t, rng),
        AlgorithmKind::RandomLocalSearch => local::random_local_search(t, rng),
        AlgorithmKind::HillClimbing => local::hill_climbing(t, rng),
        AlgorithmKind::SimulatedAnnealing => local::simulated_annealing(config, t, rng),
        AlgorithmKind::OnePlusOneEa => evolutionary::one_plus_one(config, t, rng),
        AlgorithmKind::TenPlusOneEa => evolutionary::mu_plus_one(config, t, rng),
        AlgorithmKind::Genetic => evolutionary::genetic(config, t, rng),
        AlgorithmKind::Umda => eda::umda(config, t, rng),
        AlgorithmKind::Pbil => eda::pbil(config, t, rng),
    };
    Ok(tracker.finish())
}
