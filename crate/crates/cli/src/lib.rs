//! `formalis` command-line frontend.
//!
//! Every subcommand prints one JSON [`Report`] on stdout. Exit status is 0
//! when the computation finished (also when the property under test fails),
//! 2 on malformed input, 3 on a violated precondition and 4 when a resource
//! cap stops the computation.

mod cache;
mod commands;
mod report;
mod reproduce;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use formalis::Engine;
use serde_json::Value;

pub use cache::DirCache;
pub use report::{Exit, Failure, Report};
pub use reproduce::EXAMPLES;

#[derive(Parser, Debug)]
#[command(
    name = "formalis",
    version,
    about = "Exact algebra on ideal towers, closures and Pfaff forms"
)]
pub struct Cli {
    /// Directory for cached reduced bases.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Print `"timing_ms": null` so reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Worker threads for parallel sub-experiments.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Ring for polynomial and series inputs.
#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Comma-separated variable names.
    #[arg(long)]
    pub vars: Option<String>,
    /// Comma-separated invertible variables.
    #[arg(long)]
    pub invertible: Option<String>,
    /// Series variable.
    #[arg(long)]
    pub series: Option<String>,
}

/// A one-form given by components, or the Jouanolou form.
#[derive(Args, Debug, Clone)]
pub struct FormArgs {
    /// Use the Jouanolou form of this degree.
    #[arg(long, conflicts_with_all = ["w", "m"])]
    pub jouanolou: Option<u32>,
    /// Declared degree of the components.
    #[arg(long)]
    pub m: Option<u32>,
    /// The three components, in x, y, z (repeat three times).
    #[arg(long, num_args = 1, value_name = "POLY", allow_hyphen_values = true)]
    pub w: Vec<String>,
}

/// The series `f`, given directly or by a coefficient rule.
#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    /// Series text in the ring (default ring: x invertible, y, series t).
    #[arg(long, conflicts_with = "rule", allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Coefficient rule for `y + Σ a_i x^-i t^i`: factorial, square:B,
    /// const:C or list:a1,a2,…
    #[arg(long)]
    pub rule: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and print a polynomial, or parse and validate a tower file.
    Parse {
        #[arg(long, conflicts_with = "tower", allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        tower: Option<PathBuf>,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Reduced Gröbner basis.
    Gb {
        /// Generator (repeatable).
        #[arg(long = "gen", value_name = "POLY", allow_hyphen_values = true)]
        gens: Vec<String>,
        /// grevlex, lex or elim:K (first K variables eliminated).
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Closure of V(J) ⊆ D(f) at one level of a tower.
    Closure {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long = "j", value_name = "POLY", allow_hyphen_values = true)]
        j: Vec<String>,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Levelwise closures of a chain of open pieces.
    PseudoClosure {
        #[arg(long)]
        tower: PathBuf,
        /// JSON list of {"f": POLY, "j": [POLY, …]}, one per level.
        #[arg(long, conflicts_with_all = ["f", "j"])]
        pieces: Option<PathBuf>,
        /// Same piece at every level: D(f).
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long = "j", value_name = "POLY", allow_hyphen_values = true)]
        j: Vec<String>,
    },
    /// Witness search for the candidate-adic topology.
    AdicTest {
        #[arg(long)]
        tower: PathBuf,
        /// Generator of the candidate ideal (repeatable).
        #[arg(long, value_name = "POLY", required = true, allow_hyphen_values = true)]
        candidate: Vec<String>,
        #[arg(long, default_value_t = formalis::towers::DEFAULT_NMAX)]
        nmax: u32,
    },
    /// Cofinality with a maximal ideal, or a stabilized intersection.
    Chevalley {
        #[arg(long)]
        tower: PathBuf,
        /// Generator of the maximal ideal (default: all variables).
        #[arg(long = "max-ideal", value_name = "POLY", allow_hyphen_values = true)]
        max_ideal: Vec<String>,
        #[arg(long, default_value_t = formalis::towers::DEFAULT_NMAX)]
        nmax: u32,
    },
    /// Inverse of f up to t^n, modulo t^N.
    Invert {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long = "N")]
        order: u32,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Contraction of (f, t^N) to the polynomial model ring.
    LineClosure {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long = "N")]
        order: u32,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// The series y + Σ a_i x^-i t^i for a coefficient rule.
    Counterexample {
        #[arg(long, default_value = "factorial")]
        rule: String,
        #[arg(long = "N")]
        order: u32,
    },
    /// The d, e, D, E sequences of a series g.
    DeProfile {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long = "N")]
        order: u32,
    },
    /// Greedy search for a polynomial multiple of f.
    SearchMultiple {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        seed: String,
        #[arg(long = "N")]
        order: u32,
    },
    /// The closure chain J_N of (f) and its projections.
    SaturationProfile {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        nmax: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
    /// Homogeneity, Euler relation and integrability of a form.
    PfaffCheck {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Homogeneous algebraic solutions of a given degree.
    Darboux {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Jet of the smooth separatrix through a point.
    Separatrix {
        #[command(flatten)]
        form: FormArgs,
        /// Base point a,b,c.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long = "N")]
        order: u32,
    },
    /// Separatrix jets along a line through the origin, over ℚ(w).
    Family {
        #[command(flatten)]
        form: FormArgs,
        /// Direction a,b,c.
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long = "N")]
        order: u32,
    },
    /// Rerun a bundled example and compare with its golden values.
    Reproduce {
        /// One of the bundled example names, or `all`.
        name: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Gb { .. } => "gb",
            Command::Closure { .. } => "closure",
            Command::PseudoClosure { .. } => "pseudo-closure",
            Command::AdicTest { .. } => "adic-test",
            Command::Chevalley { .. } => "chevalley",
            Command::Invert { .. } => "invert",
            Command::LineClosure { .. } => "line-closure",
            Command::Counterexample { .. } => "counterexample",
            Command::DeProfile { .. } => "de-profile",
            Command::SearchMultiple { .. } => "search-multiple",
            Command::SaturationProfile { .. } => "saturation-profile",
            Command::PfaffCheck { .. } => "pfaff-check",
            Command::Darboux { .. } => "darboux",
            Command::Separatrix { .. } => "separatrix",
            Command::Family { .. } => "family",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

/// What the process should print and return.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Installs the stderr logger configured by `FORMALIS_LOG`
/// (`quiet`, `info` or `debug`; default `quiet`).
pub fn init_logging() {
    let level = match std::env::var("FORMALIS_LOG").as_deref() {
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        Ok("trace") => log::LevelFilter::Trace,
        Ok("warn") => log::LevelFilter::Warn,
        _ => log::LevelFilter::Off,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .try_init();
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Parse as i32 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut engine = Engine::default();
    if let Some(dir) = &cli.cache {
        match DirCache::open(dir) {
            Ok(c) => engine = engine.with_cache(Arc::new(c)),
            Err(e) => {
                let f = Failure::Input(format!("cannot open cache directory {}: {e}", dir.display()));
                return failed(cli, Value::Null, f, None);
            }
        }
    }
    let start = Instant::now();
    let out = commands::dispatch(&engine, &cli.command);
    let elapsed = (!cli.no_timing).then(|| start.elapsed().as_millis() as u64);
    match out {
        Ok(done) => {
            let report = Report {
                command: cli.command.name().to_string(),
                inputs: done.inputs,
                result: done.result,
                caveats: done.caveats,
                timing_ms: elapsed,
            };
            Outcome {
                code: Exit::Ok as i32,
                stdout: report.to_json(),
                stderr: String::new(),
            }
        }
        Err((inputs, f)) => failed(cli, inputs, f, elapsed),
    }
}

fn failed(cli: &Cli, inputs: Value, f: Failure, timing: Option<u64>) -> Outcome {
    let report = Report {
        command: cli.command.name().to_string(),
        inputs,
        result: serde_json::json!({ "error": f.to_value() }),
        caveats: vec![],
        timing_ms: timing,
    };
    Outcome {
        code: f.exit() as i32,
        stdout: report.to_json(),
        stderr: format!("formalis: {f}\n"),
    }
}
