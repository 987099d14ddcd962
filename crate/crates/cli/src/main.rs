//! `crossfam`: bounds, shifting, predicates, extremal search and verification
//! suites for cross-t-intersecting uniform families.
//!
//! Exit codes: 0 when the command succeeds and every checked property holds,
//! 1 when a property is violated or a counterexample is found, 2 on usage,
//! input or guard errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crossfam::bounds::{k_bound, n0_threshold, pair_bound, threshold_applicable};
use crossfam::compression::{
    compress_pair_to_fixpoint, compress_to_fixpoint, left_compression_violation,
};
use crossfam::intersection::{cross_violation, t_intersection_violation};
use crossfam::search::{verify_theorem, SearchMode, SearchOptions};
use crossfam::setcore::{read_family, write_family};
use crossfam::verify::{parse_grid, replay, Counterexample, Outcome, SuiteKind, SuiteOptions};
use crossfam::{Family, Params, VERSION};

#[derive(Parser)]
#[command(
    name = "crossfam",
    version,
    about = "Exact tools for cross-t-intersecting uniform families"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CROSSFAM_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the threshold n₀(r, s, t).
    N0 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the product bound and whether n clears the threshold.
    Bound {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        json: bool,
    },
    /// Compress a family, or a pair jointly, to the left-compressed fixpoint.
    Compress {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: PathBuf,
        /// Second family, compressed jointly with the first.
        #[arg(long)]
        pair: Option<PathBuf>,
        /// Accepted for symmetry with `check`; compression does not use it.
        #[arg(long)]
        t: Option<usize>,
        /// Write the first result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the second result here.
        #[arg(long)]
        pair_output: Option<PathBuf>,
        /// Write the JSON trace of changing steps here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a predicate on one family or a pair.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum)]
        mode: CheckMode,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Maximise the product of family sizes and compare with the bound.
    Search {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value = "closure")]
        mode: SearchMode,
        /// List every optimal tuple (up to --witness-limit) instead of one.
        #[arg(long)]
        all_optima: bool,
        /// Override the mode's size guard.
        #[arg(long)]
        guard: Option<u128>,
        #[arg(long, default_value_t = 10_000)]
        witness_limit: usize,
        /// Also evaluate tuples containing empty families.
        #[arg(long)]
        include_empty: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification suite over a parameter grid.
    Verify {
        #[arg(long)]
        suite: SuiteKind,
        /// `default`, `default-tiny`, or entries like `n=2..6,r=1,s=1,t=1;n=3,k=1:1:1,t=1`.
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long, default_value_t = crossfam::verify::DEFAULT_SEED)]
        seed: u64,
        /// Search mode for theorem instances.
        #[arg(long, default_value = "closure")]
        mode: SearchMode,
        #[arg(long)]
        guard: Option<u128>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-run a counterexample record (or the one inside a suite report).
    Replay {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    n: usize,
    #[arg(long, required_unless_present = "k_uniformities")]
    r: Option<usize>,
    #[arg(long, required_unless_present = "k_uniformities")]
    s: Option<usize>,
    #[arg(long)]
    t: usize,
    /// Uniformities of a k-family instance, e.g. `1,1,2`.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["r", "s"])]
    k_uniformities: Option<Vec<usize>>,
}

impl Instance {
    fn params(&self) -> Result<Params> {
        Ok(match (&self.k_uniformities, self.r, self.s) {
            (Some(list), _, _) => Params::k_ary(self.n, list.clone(), self.t)?,
            (None, Some(r), Some(s)) => Params::pair(self.n, r, s, self.t)?,
            _ => bail!("give --r and --s, or --k-uniformities"),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    TIntersecting,
    Cross,
    Compressed,
}

fn load(path: &Path, n: usize) -> Result<Family> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_family(&text, n).with_context(|| format!("parsing {}", path.display()))
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes `value` to `path` if given, otherwise to stdout.
fn emit(path: Option<&Path>, value: &Value) -> Result<()> {
    match path {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8> {
    let threads = cli.threads;
    match cli.command {
        Command::N0 { r, s, t, json } => {
            let n0 = n0_threshold(r, s, t)?;
            if json {
                emit(
                    None,
                    &json!({ "r": r, "s": s, "t": t, "n0": n0, "version": VERSION }),
                )?;
            } else {
                println!("{n0}");
            }
            Ok(0)
        }
        Command::Bound { instance, json } => {
            let params = instance.params()?;
            let bound = if params.is_pair() {
                pair_bound(&params)?
            } else {
                k_bound(params.n(), params.uniformities(), params.t())?
            };
            let (a, b) = params.top_two();
            let n0 = n0_threshold(a, b, params.t())?;
            let applicable = threshold_applicable(&params);
            if json {
                emit(
                    None,
                    &json!({
                        "params": params,
                        "bound": bound,
                        "n0": n0,
                        "threshold_applicable": applicable,
                        "version": VERSION,
                    }),
                )?;
            } else {
                println!("bound {bound}");
                println!("n0 {n0}");
                println!("applicable {applicable}");
            }
            Ok(0)
        }
        Command::Compress {
            n,
            input,
            pair,
            t: _,
            output,
            pair_output,
            trace,
        } => {
            let a = load(&input, n)?;
            let (outputs, steps) = match pair {
                Some(path) => {
                    let b = load(&path, n)?;
                    let (ca, cb, tr) = compress_pair_to_fixpoint(&a, &b)?;
                    (vec![ca, cb], tr)
                }
                None => {
                    if pair_output.is_some() {
                        bail!("--pair-output needs --pair");
                    }
                    let (ca, tr) = compress_to_fixpoint(&a);
                    (vec![ca], tr)
                }
            };
            let targets = [output, pair_output];
            for (k, (family, target)) in outputs.iter().zip(&targets).enumerate() {
                let text = write_family(family);
                match target {
                    Some(path) => fs::write(path, text)
                        .with_context(|| format!("writing {}", path.display()))?,
                    None => {
                        if outputs.len() > 1 {
                            println!("# family {}", k + 1);
                        }
                        print!("{text}");
                    }
                }
            }
            if let Some(path) = trace {
                let mut value = serde_json::to_value(&steps)?;
                value["version"] = json!(VERSION);
                write_json(&path, &value)?;
            }
            Ok(0)
        }
        Command::Check {
            n,
            t,
            mode,
            input,
            pair,
            json,
        } => {
            let a = load(&input, n)?;
            let need_t = || t.context("this check needs --t");
            let value = match mode {
                CheckMode::TIntersecting => {
                    let t = need_t()?;
                    let witness = t_intersection_violation(&a, t);
                    json!({
                        "property": "t-intersecting",
                        "n": n,
                        "t": t,
                        "holds": witness.is_none(),
                        "witness": witness,
                    })
                }
                CheckMode::Cross => {
                    let t = need_t()?;
                    let path = pair.as_deref().context("cross check needs --pair")?;
                    let b = load(path, n)?;
                    let witness = cross_violation(&a, &b, t)?;
                    json!({
                        "property": "cross-t-intersecting",
                        "n": n,
                        "t": t,
                        "holds": witness.is_none(),
                        "witness": witness,
                    })
                }
                CheckMode::Compressed => {
                    let mut families = vec![a];
                    if let Some(path) = &pair {
                        families.push(load(path, n)?);
                    }
                    let found = families
                        .iter()
                        .enumerate()
                        .find_map(|(k, f)| left_compression_violation(f).map(|v| (k, v)));
                    json!({
                        "property": "compressed",
                        "n": n,
                        "holds": found.is_none(),
                        "family": found.map(|(k, _)| k + 1),
                        "index": found.map(|(_, (idx, _))| idx),
                        "witness": found.map(|(_, (_, set))| set),
                    })
                }
            };
            let holds = value["holds"] == json!(true);
            let mut value = value;
            value["version"] = json!(VERSION);
            emit(json.as_deref(), &value)?;
            if json.is_some() {
                println!("{}", if holds { "holds" } else { "violated" });
            }
            Ok(code(holds))
        }
        Command::Search {
            instance,
            mode,
            all_optima,
            guard,
            witness_limit,
            include_empty,
            json,
        } => {
            let params = instance.params()?;
            let options = SearchOptions {
                guard,
                threads,
                witness_limit,
                include_empty,
            };
            let (verdict, report) = verify_theorem(&params, mode, &options)?;
            let listed: Vec<_> = if all_optima {
                report.witnesses.clone()
            } else {
                report.witnesses.iter().take(1).cloned().collect()
            };
            let value = json!({
                "params": params,
                "mode": report.mode,
                "optimum": report.optimum,
                "bound": verdict.bound,
                "bound_holds": verdict.bound_holds,
                "bound_tight": verdict.bound_tight,
                "witness_count": report.witness_count,
                "witnesses": listed,
                "witnesses_complete": report.witnesses_complete,
                "witnesses_truncated": report.witnesses_truncated,
                "common_t_per_witness": report.common_t_per_witness,
                "uniqueness": verdict.uniqueness,
                "exact_star_witness_set": verdict.exact_star_witness_set,
                "threshold_applicable": verdict.threshold_applicable,
                "nodes_explored": report.nodes_explored,
                "seed": Value::Null,
                "version": VERSION,
            });
            emit(json.as_deref(), &value)?;
            if json.is_some() {
                println!(
                    "optimum {} bound {} witnesses {}",
                    report.optimum, verdict.bound, report.witness_count
                );
            }
            let violated = verdict.threshold_applicable
                && (!verdict.confirms_theorem() || verdict.exact_star_witness_set == Some(false));
            Ok(code(!violated))
        }
        Command::Verify {
            suite,
            grid,
            seed,
            mode,
            guard,
            json,
        } => {
            let grid = parse_grid(suite, &grid)?;
            let options = SuiteOptions {
                seed,
                mode,
                search: SearchOptions {
                    guard,
                    threads,
                    ..SearchOptions::default()
                },
            };
            let report = crossfam::verify::run_suite(suite, &grid, &options)?;
            let mut value = serde_json::to_value(&report)?;
            value["mode"] = json!(mode);
            value["version"] = json!(VERSION);
            emit(json.as_deref(), &value)?;
            if json.is_some() || !report.passed() {
                eprintln!(
                    "{}: {}/{} cases passed in {} ms",
                    report.suite, report.cases_passed, report.cases_run, report.wall_time_ms
                );
            }
            Ok(code(report.passed()))
        }
        Command::Replay { input } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let value: Value = serde_json::from_str(&text)?;
            let record = match value.get("counterexample") {
                Some(Value::Null) => bail!("report has no counterexample"),
                Some(inner) => inner.clone(),
                None => value,
            };
            let cx: Counterexample =
                serde_json::from_value(record).context("not a counterexample record")?;
            let options = SuiteOptions {
                search: SearchOptions {
                    threads,
                    ..SearchOptions::default()
                },
                ..SuiteOptions::default()
            };
            let outcome = replay(&cx, &options)?;
            let value = match &outcome {
                Outcome::Pass { hits } => json!({ "suite": cx.suite, "holds": true, "hits": hits }),
                Outcome::Fail { index, detail } => json!({
                    "suite": cx.suite,
                    "holds": false,
                    "index": index,
                    "detail": detail,
                }),
            };
            emit(None, &value)?;
            Ok(code(outcome.is_pass()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
