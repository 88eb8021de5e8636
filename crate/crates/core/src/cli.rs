//! Command-line front end of the `aom` binary.
//!
//! Exit codes: 0 success (optimum reached for solvers), 1 usage or I/O error,
//! 2 class or range violation, 3 budget or cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng as _;

use crate::aom::{AomFunction, CountingOracle};
use crate::bench::{self, ExperimentSpec, InstanceClass};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::km::{km_maximize, KmMode, KmParams, KmReport};
use crate::rng::rng_from_seed;
use crate::solvers::{self, SolveResult};
use crate::spectrum::{analytic_spectrum, aom_walsh_transform, MAX_BRUTE_FORCE_DIM};

#[derive(Debug, Parser)]
#[command(
    name = "aom",
    version,
    about = "Affine OneMax generators, solvers and benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        /// general, onemax, or a transvection class tag
        #[arg(long, default_value = "general")]
        class: String,
        /// Sequence length for transvection classes
        #[arg(long)]
        t: Option<usize>,
        /// Random seed; a fresh one is drawn and printed if omitted
        #[arg(long)]
        seed: Option<u64>,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the optimum to stderr
        #[arg(long)]
        reveal_optimum: bool,
    },
    /// Evaluate an instance at a point.
    Eval {
        #[arg(long)]
        instance: PathBuf,
        /// Point as a 0/1 string
        #[arg(long)]
        x: String,
    },
    /// Dump the Walsh spectrum of an instance.
    Spectrum {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumMode::Analytic)]
        mode: SpectrumMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize an instance with an exact solver or the Fourier learner.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        solver: SolverChoice,
        /// Sequence length for ft_enum (read from the instance if omitted)
        #[arg(long)]
        t: Option<usize>,
        /// Evaluation cap for ft_enum
        #[arg(long, default_value_t = 100_000_000)]
        cap: u64,
        #[command(flatten)]
        km: KmArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize an instance with the Fourier learner.
    KmSolve {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        km: KmArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment described by a TOML spec.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Override the seed of the spec
        #[arg(long)]
        seed: Option<u64>,
    },
    /// ECDF curves from a trajectories CSV.
    Ecdf {
        #[arg(long)]
        trajectories: PathBuf,
        /// Comma-separated target values (default: 1..=n)
        #[arg(long, value_delimiter = ',')]
        targets: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    Analytic,
    Bruteforce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    #[value(name = "f1_0")]
    F1NoOffset,
    #[value(name = "f1")]
    F1,
    #[value(name = "ft_delta")]
    FtDelta,
    #[value(name = "ft_enum")]
    FtEnum,
    #[value(name = "km")]
    Km,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KmPreset {
    Practical,
    Exact,
    Theoretical,
}

#[derive(Clone, Debug, clap::Args)]
pub struct KmArgs {
    #[arg(long, value_enum, default_value_t = KmPreset::Practical)]
    pub preset: KmPreset,
    /// Failure probability for the theoretical preset
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    #[arg(long)]
    pub m1: Option<u64>,
    #[arg(long)]
    pub m2: Option<u64>,
    #[arg(long)]
    pub m3: Option<u64>,
    /// Attempts before giving up
    #[arg(long, default_value_t = 10)]
    pub max_attempts: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl KmArgs {
    fn mode(&self, n: usize) -> Result<KmMode> {
        let base = match self.preset {
            KmPreset::Exact => {
                if self.m1.or(self.m2).or(self.m3).is_some() {
                    return Err(Error::InvalidConfig(
                        "sample counts do not apply to the exact preset".into(),
                    ));
                }
                return Ok(KmMode::Exact);
            }
            KmPreset::Practical => KmParams::practical(n),
            KmPreset::Theoretical => KmParams::theoretical(n, self.delta)?,
        };
        let params = KmParams::new(
            n,
            self.m1.unwrap_or(base.m1),
            self.m2.unwrap_or(base.m2),
            self.m3.unwrap_or(base.m3),
            base.delta,
        )?;
        Ok(KmMode::Sampled(params))
    }
}

/// Maps library errors to the documented exit codes.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) | Error::NotFound(_) => 3,
        Error::ClassViolation(_)
        | Error::LengthOutOfRange { .. }
        | Error::ClassConstraint(_)
        | Error::TooLarge { .. }
        | Error::DimensionMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::SingularMatrix
        | Error::NotBijective(_)
        | Error::DegenerateTransvection(_) => 2,
        Error::Parse(_) | Error::InvalidConfig(_) | Error::Io(_) => 1,
    }
}

fn resolve_seed(seed: Option<u64>, err: &mut dyn Write) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None => {
            let s = rand::rng().random();
            writeln!(err, "seed {s}")?;
            Ok(s)
        }
    }
}

fn read_instance(path: &Path) -> Result<AomFunction> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    text.parse()
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

/// Outcome of a command that completed without a library error.
enum Outcome {
    Done,
    /// A solver finished but did not reach the optimum.
    Suboptimal,
}

fn solve_report(f: &AomFunction, result: &SolveResult, solver: &str) -> String {
    format!(
        "solver {solver}\n{result}value {}\n",
        f.value(&result.solution)
    )
}

fn km_report(f: &AomFunction, report: &KmReport, attempts: u64, total: u64) -> String {
    let value = report.candidate.as_ref().map(|c| f.value(c).to_string());
    format!(
        "solver km\n{report}attempts {attempts}\ntotal_evaluations {total}\nvalue {}\n",
        value.unwrap_or_else(|| "none".into())
    )
}

fn run_km(f: &AomFunction, args: &KmArgs, err: &mut dyn Write) -> Result<String> {
    let mode = args.mode(f.n())?;
    let mut rng = rng_from_seed(resolve_seed(args.seed, err)?);
    let mut oracle = CountingOracle::new(f);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let report = km_maximize(&mut oracle, &mode, &mut rng);
        if report.success || attempts >= args.max_attempts {
            let text = km_report(f, &report, attempts, oracle.eval_count());
            if !report.success {
                err.write_all(text.as_bytes())?;
                return Err(Error::NotFound(format!("{attempts} attempts failed")));
            }
            return Ok(text);
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Gen {
            n,
            class,
            t,
            seed,
            out,
            reveal_optimum,
        } => {
            let class: InstanceClass = class.parse()?;
            if class.uses_length() && t.is_none() {
                return Err(Error::InvalidConfig(format!("class {class} needs --t")));
            }
            if n == 0 {
                return Err(Error::InvalidConfig("--n must be at least 1".into()));
            }
            let seed = resolve_seed(seed, stderr)?;
            let f = class.sample(n, t, &mut rng_from_seed(seed))?;
            emit(&out, &f.to_string(), stdout)?;
            if reveal_optimum {
                writeln!(stderr, "optimum {}", f.optimum())?;
            }
        }
        Command::Eval { instance, x } => {
            let f = read_instance(&instance)?;
            let x: BitVec = x.parse()?;
            writeln!(stdout, "{}", f.evaluate(&x)?)?;
        }
        Command::Spectrum {
            instance,
            mode,
            out,
        } => {
            let f = read_instance(&instance)?;
            let spectrum = match mode {
                SpectrumMode::Analytic => analytic_spectrum(&f),
                SpectrumMode::Bruteforce => {
                    if f.n() > MAX_BRUTE_FORCE_DIM {
                        return Err(Error::TooLarge {
                            n: f.n(),
                            max: MAX_BRUTE_FORCE_DIM,
                        });
                    }
                    aom_walsh_transform(&f)?
                }
            };
            emit(&out, &spectrum.to_string(), stdout)?;
        }
        Command::Solve {
            instance,
            solver,
            t,
            cap,
            km,
            out,
        } => {
            let f = read_instance(&instance)?;
            if solver == SolverChoice::Km {
                let text = run_km(&f, &km, stderr)?;
                emit(&out, &text, stdout)?;
                return Ok(Outcome::Done);
            }
            let mut oracle = CountingOracle::new(&f);
            let (name, result) = match solver {
                SolverChoice::F1NoOffset => ("f1_0", solvers::solve_f1_0(&mut oracle)?),
                SolverChoice::F1 => ("f1", solvers::solve_f1(&mut oracle)?),
                SolverChoice::FtDelta => ("ft_delta", solvers::solve_ft_delta(&mut oracle)?),
                SolverChoice::FtEnum => {
                    let t = t
                        .or_else(|| f.provenance().map(|s| s.len()))
                        .ok_or_else(|| Error::InvalidConfig("ft_enum needs --t".into()))?;
                    ("ft_enum", solvers::solve_ft_enumerate(&mut oracle, t, cap)?)
                }
                SolverChoice::Km => unreachable!("handled above"),
            };
            emit(&out, &solve_report(&f, &result, name), stdout)?;
            if f.value(&result.solution) != f.n() {
                return Ok(Outcome::Suboptimal);
            }
        }
        Command::KmSolve { instance, km, out } => {
            let f = read_instance(&instance)?;
            let text = run_km(&f, &km, stderr)?;
            emit(&out, &text, stdout)?;
        }
        Command::Bench { spec, out, seed } => {
            let text = fs::read_to_string(&spec)
                .map_err(|e| Error::Io(format!("{}: {e}", spec.display())))?;
            let mut spec = ExperimentSpec::from_toml(&text)?;
            if let Some(seed) = seed {
                spec.seed = seed;
            }
            let table = bench::run_experiment(&spec)?;
            for path in bench::write_outputs(&spec, &table, &out)? {
                writeln!(stdout, "{}", path.display())?;
            }
            let censored = table.rows.iter().filter(|r| r.censored).count();
            if censored > 0 {
                writeln!(stderr, "{censored} runs hit the evaluation cap")?;
            }
        }
        Command::Ecdf {
            trajectories,
            targets,
            out,
        } => {
            let file = fs::File::open(&trajectories)
                .map_err(|e| Error::Io(format!("{}: {e}", trajectories.display())))?;
            let points = bench::read_trajectories(file)?;
            let targets = if targets.is_empty() {
                let n = points.iter().map(|p| p.n).max().unwrap_or(0);
                (1..=n).collect()
            } else {
                targets
            };
            let curves = bench::ecdf(&points, &targets)?;
            let mut buf = Vec::new();
            bench::write_ecdf(&curves, &mut buf)?;
            emit(
                &out,
                &String::from_utf8(buf).expect("csv output is UTF-8"),
                stdout,
            )?;
        }
    }
    Ok(Outcome::Done)
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Suboptimal) => {
            let _ = writeln!(stderr, "error: solution is not optimal");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
