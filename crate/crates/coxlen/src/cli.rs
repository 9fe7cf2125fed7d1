//! Argument parsing and command dispatch.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use coxlen_core::reflength::{self, Oracle};
use coxlen_core::{CoxeterSystem, GroupSpec, SearchLimits};
use serde_json::json;

use crate::cache::ResultCache;
use crate::commands::{self, ReflenOptions, Session, Suite, VerifyOptions};
use crate::error::CliError;
use crate::input::{one_based, parse_group, parse_word};
use crate::parallel::Engine;
use crate::report::{render, Envelope, Format, GroupInfo, Report};

#[derive(Debug, Parser)]
#[command(name = "coxlen", version, about = "Word problem and reflection length in Coxeter groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    #[arg(long, default_value_t = SearchLimits::DEFAULT_MAX_ORBIT, global = true)]
    pub max_orbit: usize,
    #[arg(long, default_value_t = SearchLimits::DEFAULT_MAX_SUBSETS, global = true)]
    pub max_subsets: u64,
    #[arg(long, default_value_t = SearchLimits::DEFAULT_MAX_CACHE, global = true)]
    pub max_cache: usize,
    /// Worker threads for the deletion-set scan (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSONL result cache; defaults to $COXLEN_CACHE.
    #[arg(long, env = "COXLEN_CACHE", global = true)]
    pub cache: Option<PathBuf>,
}

/// Group spec: universal:<n>, single:<n>:<k>, triangle:<p>:<q>:<r>, an inline
/// JSON matrix {"rank":n,"matrix":[[..]]} (0 = ∞) or @file.json.
#[derive(Debug, Args)]
pub struct GroupArg {
    #[arg(short, long)]
    pub group: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a word by nil- and braid-moves.
    Reduce {
        #[command(flatten)]
        group: GroupArg,
        /// Generators such as "1 2 1 3" or power syntax "(123)^4 1 2".
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
    },
    /// Reflection length of a word.
    Reflen {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        /// List every minimal deletion set with its lower bound.
        #[arg(long)]
        all: bool,
        /// Show the colex-least deletion set and its reflections.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = Oracle::Matrix)]
        oracle: Oracle,
    },
    /// Reflection lengths of powers of the Coxeter element s_1⋯s_n.
    PowersTable {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        min: usize,
        /// Append s_1⋯s_r to every power.
        #[arg(short, long, default_value_t = 0)]
        r: usize,
    },
    /// Lower and upper bounds for (s_1⋯s_n)^λ s_1⋯s_r in a single braided group.
    Bounds {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short, long)]
        lambda: usize,
        #[arg(short, long)]
        r: usize,
        /// Also compute the reflection length.
        #[arg(long)]
        exact: bool,
    },
    /// Look for a letter whose deletion lowers both l_R and l_Rn by one.
    ConjectureScan {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short, long, allow_hyphen_values = true, required_unless_present = "generate")]
        word: Option<String>,
        /// Scan this many generated twisted palindromes instead.
        #[arg(long, conflicts_with = "word")]
        generate: Option<usize>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run a built-in check suite.
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Include the slower table rows.
        #[arg(long)]
        extended: bool,
    },
}

/// Output text and exit code of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let limits = SearchLimits {
        max_orbit: g.max_orbit,
        max_subsets: g.max_subsets,
        max_cache: g.max_cache,
        ..SearchLimits::default()
    };
    if limits.max_orbit == 0 || limits.max_subsets == 0 || limits.max_cache == 0 {
        return Err(CliError::Input("limits must be positive".into()));
    }
    let threads = match g.threads {
        Some(0) => return Err(CliError::Input("--threads must be at least 1".into())),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let engine = Engine::new(limits, threads).map_err(|e| CliError::Input(e.to_string()))?;
    let cache = match &g.cache {
        Some(path) => ResultCache::open(path, limits.max_cache)?,
        None => ResultCache::in_memory(limits.max_cache),
    };
    let mut session = Session::new(engine, cache);
    let out = Emitter { format: g.format, start: Instant::now() };

    match &cli.command {
        Command::Reduce { group, word } => {
            let (spec, sys) = parse_group(&group.group)?;
            let w = parse_word(word, &sys)?;
            let report = commands::reduce(&mut session, &sys, &w)?;
            Ok(out.emit("reduce", &spec, &sys, json!({ "word": one_based(&w) }), &report, &session))
        }
        Command::Reflen { group, word, all, witness, oracle } => {
            let (spec, sys) = parse_group(&group.group)?;
            let w = parse_word(word, &sys)?;
            let opts = ReflenOptions { all: *all, witness: *witness, oracle: *oracle };
            let report = commands::reflen(&mut session, &sys, &w, opts)?;
            let input = json!({ "word": one_based(&w), "all": all, "witness": witness, "oracle": oracle.to_string() });
            Ok(out.emit("reflen", &spec, &sys, input, &report, &session))
        }
        Command::PowersTable { group, max, min, r } => {
            let (spec, sys) = parse_group(&group.group)?;
            if *r > sys.rank() {
                return Err(CliError::Input(format!("suffix length {r} exceeds rank {}", sys.rank())));
            }
            let report = commands::powers_table(&mut session, &sys, *min..=*max, *r)?;
            let input = json!({ "min": min, "max": max, "r": r });
            Ok(out.emit("powers-table", &spec, &sys, input, &report, &session))
        }
        Command::Bounds { group, lambda, r, exact } => {
            let (spec, sys) = parse_group(&group.group)?;
            let report = commands::bounds(&mut session, &sys, *lambda, *r, *exact)?;
            let input = json!({ "lambda": lambda, "r": r, "exact": exact });
            Ok(out.emit("bounds", &spec, &sys, input, &report, &session))
        }
        Command::ConjectureScan { group, word, generate, depth, seed } => {
            let (spec, sys) = parse_group(&group.group)?;
            let (words, input) = match (word, generate) {
                (Some(text), _) => {
                    let w = parse_word(text, &sys)?;
                    let input = json!({ "word": one_based(&w) });
                    (vec![w], input)
                }
                (None, Some(count)) => {
                    let words = reflength::generate_twisted_palindromes(sys.rank(), *depth, *seed, *count)?;
                    (words, json!({ "generate": count, "depth": depth, "seed": seed }))
                }
                (None, None) => unreachable!("clap requires --word or --generate"),
            };
            let report = commands::conjecture_scan(&mut session, &sys, &words)?;
            Ok(out.emit("conjecture-scan", &spec, &sys, input, &report, &session))
        }
        Command::Verify { group, suite, cases, seed, extended } => {
            let (spec, sys) = parse_group(&group.group)?;
            let default_cases = if *suite == Suite::Twisted { 1000 } else { 500 };
            let opts = VerifyOptions { cases: cases.unwrap_or(default_cases), seed: *seed, extended: *extended };
            let report = commands::verify(&mut session, &sys, *suite, opts)?;
            let input = json!({ "suite": suite, "cases": opts.cases, "seed": seed, "extended": extended });
            Ok(out.emit("verify", &spec, &sys, input, &report, &session))
        }
    }
}

struct Emitter {
    format: Format,
    start: Instant,
}

impl Emitter {
    fn emit<R: Report>(
        &self,
        command: &str,
        spec: &GroupSpec,
        sys: &CoxeterSystem,
        input: serde_json::Value,
        report: &R,
        session: &Session,
    ) -> Outcome {
        let mut stats = session.stats();
        stats.elapsed_ms = self.start.elapsed().as_secs_f64() * 1e3;
        let envelope = Envelope {
            command: command.to_string(),
            group: Some(GroupInfo::new(spec, sys)),
            input,
            result: serde_json::to_value(report).expect("report serializes"),
            stats,
        };
        Outcome { text: render(self.format, &envelope, report), exit_code: if report.passed() { 0 } else { 1 } }
    }
}
