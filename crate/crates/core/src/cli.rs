//! Command-line front end.
//!
//! Objects are loaded from workspace files (see [`crate::json`]) and named
//! on the command line. Put object names before `-w`, since `-w` takes every
//! following argument as a file: `kantorovich distance p q -w ws.json`.
//!
//! Exit status: 0 on success, 1 when a law check fails, 2 on usage, parse
//! or validation errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gen::SizeBudget;
use crate::json::{self, Workspace};
use crate::laws;
use crate::measure::{pushforward, Measure};
use crate::monad::expectation;
use crate::rational;
use crate::structure::{convolve, independent_maps, is_independent, is_independent_family, marginals, product, Law};
use crate::transport::wasserstein;

#[derive(Parser, Debug)]
#[command(name = "kantorovich", version, about = "Exact Kantorovich monad computations on finite metric spaces")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct WorkspaceArgs {
    /// Workspace files, merged left to right.
    #[arg(short = 'w', long = "workspace", num_args = 1.., required = true)]
    workspace: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load the workspace and check every object's invariants.
    Validate {
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Wasserstein-1 distance between two measures.
    Distance {
        p: String,
        q: String,
        /// Also print the optimal coupling and the dual witness as JSON.
        #[arg(short, long)]
        verbose: bool,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Product joint p ⊗ q.
    Product {
        p: String,
        q: String,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Both marginals of a measure on a tensor space.
    Marginals {
        r: String,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Whether a joint is the product of its marginals.
    Independent {
        r: String,
        /// Number of factors of a left-nested tensor.
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Whether two maps out of a law's space are independent under the law.
    IndependentMaps {
        /// Measure serving as the law.
        #[arg(long)]
        law: String,
        f1: String,
        f2: String,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Convolution p ∗ q over an internal monoid.
    Convolve {
        #[arg(long)]
        monoid: String,
        p: String,
        q: String,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Expectation E mu of a nested measure.
    Expect {
        mu: String,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Pushforward f_* p.
    Pushforward {
        f: String,
        p: String,
        #[command(flatten)]
        ws: WorkspaceArgs,
    },
    /// Run the law checker, or replay one instance with --law and --instance.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        /// Restrict to these law ids.
        #[arg(long = "law")]
        law: Vec<String>,
        /// Instance file to replay; needs exactly one --law.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = SizeBudget::default().max_points)]
        max_points: usize,
        #[arg(long, default_value_t = SizeBudget::default().max_denominator)]
        max_denominator: i64,
    },
}

/// Runs the program on `args` (including the program name) with the
/// process's standard streams.
pub fn main(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`main`] with explicit output streams.
pub fn run(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, code: 0 })
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn measure_text(p: &Measure) -> String {
    p.space()
        .points()
        .iter()
        .zip(p.weights())
        .map(|(l, w)| format!("{l}\t{}\n", rational::format(w)))
        .collect()
}

fn measure_out(json: bool, p: &Measure) -> String {
    if json {
        pretty(&json::measure_to_json(p))
    } else {
        measure_text(p)
    }
}

fn load(ws: &WorkspaceArgs) -> Result<Workspace> {
    Workspace::load(&ws.workspace)
}

fn execute(cli: &Cli) -> Result<Output> {
    let as_json = cli.json;
    match &cli.command {
        Command::Validate { ws } => {
            let w = load(ws)?;
            let counts = json!({
                "spaces": w.spaces.len(),
                "maps": w.maps.len(),
                "functionals": w.functionals.len(),
                "measures": w.measures.len(),
                "nested": w.nested.len(),
                "doubly_nested": w.doubly_nested.len(),
                "monoids": w.monoids.len(),
                "points": w.points.len(),
            });
            if as_json {
                ok(pretty(&json!({ "valid": true, "counts": counts })))
            } else {
                let parts: Vec<String> = counts
                    .as_object()
                    .expect("object")
                    .iter()
                    .map(|(k, v)| format!("{v} {k}"))
                    .collect();
                ok(format!("valid: {}\n", parts.join(", ")))
            }
        }
        Command::Distance { p, q, verbose, ws } => {
            let w = load(ws)?;
            let (p, q) = (w.measure(p)?, w.measure(q)?);
            let t = wasserstein(p, q)?;
            let value = rational::format(&t.value);
            if !*verbose && !as_json {
                return ok(format!("{value}\n"));
            }
            let mut obj = Map::new();
            obj.insert("distance".into(), Value::String(value));
            if *verbose {
                let space = p.space();
                let mut coupling = Map::new();
                for (i, row) in t.plan.rows().iter().enumerate() {
                    let row: Map<String, Value> = row
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| **x != rational::int(0))
                        .map(|(j, x)| (space.label(j).to_string(), json::rational_to_json(x)))
                        .collect();
                    if !row.is_empty() {
                        coupling.insert(space.label(i).to_string(), Value::Object(row));
                    }
                }
                obj.insert("coupling".into(), Value::Object(coupling));
                obj.insert("witness".into(), json::functional_to_json(t.witness.potential()));
            }
            ok(pretty(&Value::Object(obj)))
        }
        Command::Product { p, q, ws } => {
            let w = load(ws)?;
            ok(measure_out(as_json, &product(w.measure(p)?, w.measure(q)?)))
        }
        Command::Marginals { r, ws } => {
            let w = load(ws)?;
            let (a, b) = marginals(w.measure(r)?)?;
            if as_json {
                ok(pretty(&json!({ "left": json::measure_to_json(&a), "right": json::measure_to_json(&b) })))
            } else {
                ok(format!("left\n{}right\n{}", measure_text(&a), measure_text(&b)))
            }
        }
        Command::Independent { r, arity, ws } => {
            let w = load(ws)?;
            let r = w.measure(r)?;
            let answer = if *arity == 2 { is_independent(r)? } else { is_independent_family(r, *arity)? };
            if as_json {
                ok(pretty(&json!({ "independent": answer })))
            } else {
                ok(format!("{answer}\n"))
            }
        }
        Command::IndependentMaps { law, f1, f2, ws } => {
            let w = load(ws)?;
            let s = Law::new(w.measure(law)?.clone());
            let result = independent_maps(&s, w.map(f1)?, w.map(f2)?)?;
            if as_json {
                ok(pretty(&json!({
                    "independent": result.independent,
                    "tupling_is_short": result.tupling_is_short,
                })))
            } else {
                ok(format!(
                    "independent: {}\ntupling is short: {}\n",
                    result.independent, result.tupling_is_short
                ))
            }
        }
        Command::Convolve { monoid, p, q, ws } => {
            let w = load(ws)?;
            ok(measure_out(as_json, &convolve(w.measure(p)?, w.measure(q)?, w.monoid(monoid)?)?))
        }
        Command::Expect { mu, ws } => {
            let w = load(ws)?;
            ok(measure_out(as_json, &expectation(w.nested(mu)?)))
        }
        Command::Pushforward { f, p, ws } => {
            let w = load(ws)?;
            ok(measure_out(as_json, &pushforward(w.map(f)?, w.measure(p)?)?))
        }
        Command::Laws {
            seed,
            cases,
            law,
            instance,
            max_points,
            max_denominator,
        } => {
            if let Some(path) = instance {
                let [id] = law.as_slice() else {
                    return Err(Error::Parse("--instance needs exactly one --law".into()));
                };
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let value: Value = serde_json::from_str(&text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let verdict = laws::check_law(id, value)?;
                let code = i32::from(!verdict.holds);
                let text = if as_json {
                    pretty(&serde_json::to_value(&verdict).expect("verdicts serialize"))
                } else {
                    match &verdict.failure {
                        None => format!("{id}: holds ({} checks)\n", verdict.checks),
                        Some(f) => format!("{id}: fails: {}\n  lhs = {}\n  rhs = {}\n", f.check, f.lhs, f.rhs),
                    }
                };
                return Ok(Output { text, code });
            }
            if *max_points < 1 || *max_denominator < 1 {
                return Err(Error::Parse("--max-points and --max-denominator must be positive".into()));
            }
            let defaults = SizeBudget::default();
            let budget = SizeBudget {
                max_points: *max_points,
                min_points: defaults.min_points.min(*max_points),
                max_denominator: *max_denominator,
                ..defaults
            };
            let ids: Vec<&str> = law.iter().map(String::as_str).collect();
            let cases = usize::try_from(*cases).map_err(|_| Error::Parse("--cases too large".into()))?;
            let report = laws::run_laws(*seed, cases, &budget, &ids)?;
            let code = i32::from(!report.all_passed);
            let text = if as_json { pretty(&report.to_json()) } else { laws::summary(&report) };
            Ok(Output { text, code })
        }
    }
}
