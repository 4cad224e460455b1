//! `ti` — exact calculator for tensor invariants: Δ-polynomial evaluation,
//! signed Latin-hypercube counts, highest-weight-vector constructions, and
//! Kronecker coefficients at rectangular partitions.

mod config;
mod fixtures;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use config::{resolve, FlagOverrides, OutputFormat, RunConfig};
use tinv_core::delta::{
    delta_eval, delta_eval_cost, delta_eval_unit, fundamental_table, fundamental_table_reduced,
};
use tinv_core::exterior::{is_highest_weight, wedge_power};
use tinv_core::kronecker::{
    delta_degree, g_recursive, g_rect, g_rect_kernel, kronecker_char_cached, CoefficientCache,
    DegreeOutcome,
};
use tinv_core::latin::{
    alon_tarsi, alon_tarsi_from_prefix, count_latin, enumerate_magic_sets, split_prefixes,
    MagicSet, PartialLatinHypercube,
};
use tinv_core::partition::Partition;
use tinv_core::{BalancedTable, Error, Hypermatrix, Result};

/// Monomial count above which `delta eval` refuses to run without
/// --allow-large.
const DELTA_EVAL_COST_LIMIT: f64 = 1e8;

/// Cube sizes k^d above this need --allow-large for a full Alon–Tarsi sum.
const AT_CELL_LIMIT: u64 = 27;

#[derive(Parser)]
#[command(
    name = "ti",
    version,
    about = "Exact tensor-invariant calculator (hyperdeterminants, Latin hypercubes, \
             highest-weight vectors, Kronecker coefficients)"
)]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Globals {
    /// TOML config file (flags and env variables override it)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format: json, csv, or plain
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Coefficient cache file (JSON lines, append-only)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Largest partition size the character pipeline will attempt
    #[arg(long, global = true)]
    max_partition_size: Option<u64>,
    /// Largest weight-space basis the kernel pipeline will attempt
    #[arg(long, global = true)]
    max_basis_size: Option<usize>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Permit computations past the built-in feasibility guards
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Δ-polynomial evaluation and index-table constructions
    #[command(subcommand)]
    Delta(DeltaCmd),
    /// Latin hypercubes, magic sets, and Alon–Tarsi numbers
    #[command(subcommand)]
    Latin(LatinCmd),
    /// Highest-weight vectors in the exterior algebra
    #[command(subcommand)]
    Hwv(HwvCmd),
    /// Kronecker coefficients at rectangular partitions
    #[command(subcommand)]
    Kron(KronCmd),
    /// Bundled reference tables and their reproduction runner
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand)]
enum DeltaCmd {
    /// Evaluate the invariant of a balanced table at a tensor
    Eval {
        /// Balanced table as JSON, or @file
        #[arg(long)]
        table: String,
        /// Tensor as JSON {"shape":[...],"entries":[{"idx":[...],"num":"..","den":".."}]}, or @file
        #[arg(long)]
        tensor: String,
    },
    /// Evaluate the invariant at the n×…×n unit tensor
    EvalUnit {
        /// Balanced table as JSON, or @file
        #[arg(long)]
        table: String,
        #[arg(short)]
        n: u32,
    },
    /// Print the fundamental d×k^d table (columns = all of [k]^d)
    Fundamental {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: u8,
        /// Drop the constant columns
        #[arg(long)]
        reduced: bool,
    },
    /// Concatenate two balanced tables (columns side by side, or rows stacked)
    Concat {
        /// Left/top table as JSON, or @file
        #[arg(long)]
        left: String,
        /// Right/bottom table as JSON, or @file
        #[arg(long)]
        right: String,
        /// Stack rows instead of joining columns
        #[arg(long)]
        vertical: bool,
    },
}

#[derive(Subcommand)]
enum LatinCmd {
    /// Count partial Latin hypercubes on a magic set
    Count {
        /// Magic set as JSON {"k":K,"d":D,"cells":[[...],...]}, or @file; default: full cube
        #[arg(long = "type")]
        set: Option<String>,
        #[arg(short, required_unless_present = "set")]
        d: Option<usize>,
        #[arg(short, required_unless_present = "set")]
        k: Option<u8>,
    },
    /// Signed count (Alon–Tarsi number) on a magic set or the full cube
    At {
        /// Magic set as JSON, or @file; default: full cube
        #[arg(long = "type")]
        set: Option<String>,
        #[arg(short, required_unless_present = "set")]
        d: Option<usize>,
        #[arg(short, required_unless_present = "set")]
        k: Option<u8>,
        /// Print the work shards at this prefix depth instead of computing
        #[arg(long)]
        split_depth: Option<usize>,
        /// Sum only the shard below this value prefix, e.g. "[1,2]"
        #[arg(long)]
        prefix: Option<String>,
    },
    /// All sign statistics of one partial Latin hypercube
    Signs {
        /// Hypercube as JSON {"k":K,"d":D,"cells":[...],"values":[...]}, or @file
        #[arg(long)]
        cube: String,
    },
    /// Enumerate the magic sets of [k]^d with uniform slice marginal n
    MagicSets {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: u8,
        #[arg(short)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum HwvCmd {
    /// n-th wedge power of the hyperdeterminantal form (n=1 is the form itself)
    Omega {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: u8,
        #[arg(short, default_value_t = 1)]
        n: u32,
        /// Also verify that every raising operator annihilates the result
        #[arg(long)]
        check_hwv: bool,
        /// Print every term as a JSON line {"cells":[...],"coeff":"..."}
        #[arg(long)]
        expand: bool,
    },
    /// Verify the highest-weight property of the n-th wedge power
    Check {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: u8,
        #[arg(short)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum KronCmd {
    /// Kronecker coefficient of explicit partitions
    G {
        /// Partitions as a JSON array of arrays, e.g. "[[2,2],[2,2],[2,2]]"
        #[arg(long)]
        parts: String,
    },
    /// g_d(n,k): coefficient at d copies of the n×k rectangle
    Rect {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        /// char (symmetric-group characters), kernel (raising-operator
        /// nullspace), or recursive (chain over intermediate partitions)
        #[arg(long, default_value = "char")]
        method: String,
    },
    /// Smallest degree of a nonzero invariant of n×…×n tensors (d factors)
    Degree {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: u32,
    },
    /// Reproduce one bundled coefficient table (alias of `fixtures run`)
    Table {
        #[arg(long)]
        fixture: String,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List the bundled reference tables
    List,
    /// Recompute a table's in-budget cells and compare (all tables if omitted)
    Run { name: Option<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget(_) => ExitCode::from(2),
                Error::Internal(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let flags = FlagOverrides {
        max_partition_size: cli.globals.max_partition_size,
        max_basis_size: cli.globals.max_basis_size,
        cache_path: cli.globals.cache.clone(),
        format: cli.globals.format,
        threads: cli.globals.threads,
        allow_large: cli.globals.allow_large,
    };
    let cfg = resolve(cli.globals.config.as_ref(), &flags)?;
    if let Some(t) = cfg.threads {
        // ignore the error if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let cache = match &cfg.cache_path {
        Some(p) => CoefficientCache::open(p)?,
        None => CoefficientCache::in_memory(),
    };

    match cli.command {
        Command::Delta(cmd) => run_delta(cmd, &cfg),
        Command::Latin(cmd) => run_latin(cmd, &cfg),
        Command::Hwv(cmd) => run_hwv(cmd, &cfg),
        Command::Kron(cmd) => run_kron(cmd, &cfg, &cache),
        Command::Fixtures(cmd) => run_fixtures(cmd, &cfg, &cache),
    }
}

// ---------------------------------------------------------------- input

/// `@path` reads a file; anything else is taken as inline text.
fn read_input(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(arg.to_string()),
    }
}

fn parse_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = read_input(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// Parse and re-validate a balanced table (deserialization alone does not
/// check the row balance invariant).
fn parse_table(arg: &str, what: &str) -> Result<BalancedTable> {
    let t: BalancedTable = parse_json(arg, what)?;
    BalancedTable::new(t.shape, t.rows).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

// ---------------------------------------------------------------- output

/// Flatten a JSON value to (dotted-path, scalar) pairs in document order.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let path = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&path, val, out);
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), val, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn emit(format: OutputFormat, mut value: Value) {
    if let Value::Object(map) = &mut value {
        map.insert("schema".to_string(), json!(1));
    }
    match format {
        OutputFormat::Json => println!("{value}"),
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            flatten("", &value, &mut rows);
            println!("field,value");
            for (path, v) in rows {
                let quoted = if v.contains(',') || v.contains('"') {
                    format!("\"{}\"", v.replace('"', "\"\""))
                } else {
                    v
                };
                println!("{path},{quoted}");
            }
        }
        OutputFormat::Plain => {
            if let Some(v) = value.get("value") {
                match v {
                    Value::String(s) => println!("{s}"),
                    other => println!("{other}"),
                }
            } else {
                let mut rows = Vec::new();
                flatten("", &value, &mut rows);
                for (path, v) in rows {
                    if path != "schema" {
                        println!("{path}: {v}");
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------- delta

fn run_delta(cmd: DeltaCmd, cfg: &RunConfig) -> Result<ExitCode> {
    match cmd {
        DeltaCmd::Eval { table, tensor } => {
            let table = parse_table(&table, "table")?;
            let tensor: Hypermatrix = parse_json(&tensor, "tensor")?;
            let cost = delta_eval_cost(&table);
            if cost > DELTA_EVAL_COST_LIMIT && !cfg.allow_large {
                return Err(Error::budget(format!(
                    "evaluation needs ~{cost:.2e} monomials; rerun with --allow-large"
                )));
            }
            let v = delta_eval(&table, &tensor)?;
            emit(
                cfg.format,
                json!({
                    "degree": table.num_cols(),
                    "value": v.to_string(),
                }),
            );
        }
        DeltaCmd::EvalUnit { table, n } => {
            let table = parse_table(&table, "table")?;
            let v = delta_eval_unit(&table, n)?;
            emit(
                cfg.format,
                json!({
                    "degree": table.num_cols(),
                    "n": n,
                    "value": v.to_string(),
                }),
            );
        }
        DeltaCmd::Fundamental { d, k, reduced } => {
            let t = if reduced {
                fundamental_table_reduced(d, k)
            } else {
                fundamental_table(d, k)
            };
            emit(
                cfg.format,
                json!({
                    "shape": t.shape,
                    "rows": t.rows,
                }),
            );
        }
        DeltaCmd::Concat {
            left,
            right,
            vertical,
        } => {
            let a = parse_table(&left, "left table")?;
            let b = parse_table(&right, "right table")?;
            let t = if vertical { a.vconcat(&b)? } else { a.hconcat(&b)? };
            emit(
                cfg.format,
                json!({
                    "shape": t.shape,
                    "rows": t.rows,
                }),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- latin

fn magic_set_arg(set: Option<&str>, d: Option<usize>, k: Option<u8>) -> Result<MagicSet> {
    match set {
        Some(text) => parse_json(text, "magic set"),
        None => {
            let d = d.ok_or_else(|| Error::domain("need -d with no --type"))?;
            let k = k.ok_or_else(|| Error::domain("need -k with no --type"))?;
            Ok(MagicSet::full_cube(d, k))
        }
    }
}

fn run_latin(cmd: LatinCmd, cfg: &RunConfig) -> Result<ExitCode> {
    match cmd {
        LatinCmd::Count { set, d, k } => {
            let t = magic_set_arg(set.as_deref(), d, k)?;
            let count = count_latin(&t);
            emit(
                cfg.format,
                json!({
                    "d": t.d(),
                    "k": t.k(),
                    "cells": t.len(),
                    "value": count.to_string(),
                }),
            );
        }
        LatinCmd::At {
            set,
            d,
            k,
            split_depth,
            prefix,
        } => {
            let t = magic_set_arg(set.as_deref(), d, k)?;
            if t.len() as u64 > AT_CELL_LIMIT && !cfg.allow_large {
                return Err(Error::budget(format!(
                    "{} cells exceed the default Alon–Tarsi limit of {AT_CELL_LIMIT}; \
                     rerun with --allow-large (shard the work with --split-depth/--prefix)",
                    t.len()
                )));
            }
            if let Some(depth) = split_depth {
                let prefixes = split_prefixes(&t, depth);
                emit(
                    cfg.format,
                    json!({
                        "d": t.d(),
                        "k": t.k(),
                        "depth": depth,
                        "prefixes": prefixes,
                    }),
                );
                return Ok(ExitCode::SUCCESS);
            }
            let (value, shard) = match prefix {
                Some(p) => {
                    let p: Vec<u8> = parse_json(&p, "prefix")?;
                    (alon_tarsi_from_prefix(&t, &p), Some(p))
                }
                None => (alon_tarsi(&t), None),
            };
            let mut out = json!({
                "d": t.d(),
                "k": t.k(),
                "cells": t.len(),
                "value": value.to_string(),
            });
            if let Some(p) = shard {
                out["prefix"] = json!(p);
            }
            emit(cfg.format, out);
        }
        LatinCmd::Signs { cube } => {
            let c: PartialLatinHypercube = parse_json(&cube, "hypercube")?;
            let d = c.magic_set().d();
            let directional: Vec<i8> = (1..=d)
                .map(|dir| c.directional_sign(dir))
                .collect::<Result<_>>()?;
            emit(
                cfg.format,
                json!({
                    "directional": directional,
                    "full": c.full_sign(),
                    "symbol": c.symbol_sign(),
                    "set_sign": c.magic_set().sign(),
                }),
            );
        }
        LatinCmd::MagicSets { d, k, n } => {
            let sets = enumerate_magic_sets(d, k, n);
            emit(
                cfg.format,
                json!({
                    "d": d,
                    "k": k,
                    "n": n,
                    "count": sets.len(),
                }),
            );
            for s in &sets {
                println!(
                    "{}",
                    serde_json::to_string(s).map_err(|e| Error::Internal(e.to_string()))?
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- hwv

fn run_hwv(cmd: HwvCmd, cfg: &RunConfig) -> Result<ExitCode> {
    match cmd {
        HwvCmd::Omega {
            d,
            k,
            n,
            check_hwv,
            expand,
        } => {
            let v = wedge_power(d, k, n)?;
            let mut out = json!({
                "d": d,
                "k": k,
                "n": n,
                "grade": v.grade(),
                "num_terms": v.num_terms(),
            });
            if check_hwv {
                out["highest_weight"] = json!(is_highest_weight(&v)?);
            }
            emit(cfg.format, out);
            if expand {
                for (cells, coeff) in v.terms() {
                    let cells: Vec<&Vec<u8>> = cells.iter().map(|c| &c.0).collect();
                    println!(
                        "{}",
                        json!({"cells": cells, "coeff": coeff.to_string()})
                    );
                }
            }
        }
        HwvCmd::Check { d, k, n } => {
            let v = wedge_power(d, k, n)?;
            let hw = is_highest_weight(&v)?;
            emit(
                cfg.format,
                json!({
                    "d": d,
                    "k": k,
                    "n": n,
                    "num_terms": v.num_terms(),
                    "highest_weight": hw,
                }),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- kron

fn run_kron(cmd: KronCmd, cfg: &RunConfig, cache: &CoefficientCache) -> Result<ExitCode> {
    match cmd {
        KronCmd::G { parts } => {
            let raw: Vec<Vec<u32>> = parse_json(&parts, "parts")?;
            let parts: Vec<Partition> =
                raw.into_iter().map(Partition::new).collect::<Result<_>>()?;
            let v = kronecker_char_cached(&parts, cfg.max_partition_size, cache)?;
            emit(cfg.format, json!({ "value": v.to_string() }));
        }
        KronCmd::Rect { d, n, k, method } => {
            let v = match method.as_str() {
                "char" => g_rect(d, n, k, cfg.max_partition_size, cache)?,
                "kernel" => {
                    let k8 = u8::try_from(k)
                        .map_err(|_| Error::domain("kernel method needs k <= 255"))?;
                    g_rect_kernel(d, n, k8, cfg.max_basis_size)?
                }
                "recursive" => g_recursive(d, n, k, cfg.max_partition_size, cache)?,
                other => {
                    return Err(Error::domain(format!(
                        "unknown method {other:?} (char|kernel|recursive)"
                    )))
                }
            };
            emit(
                cfg.format,
                json!({
                    "d": d,
                    "n": n,
                    "k": k,
                    "method": method,
                    "value": v.to_string(),
                }),
            );
        }
        KronCmd::Degree { d, n } => match delta_degree(d, n, cfg.max_partition_size, cache)? {
            DegreeOutcome::Degree(m) => {
                emit(
                    cfg.format,
                    json!({
                        "d": d,
                        "n": n,
                        "degree": m,
                        "ratio": m / n as u64,
                        "status": "found",
                    }),
                );
            }
            DegreeOutcome::Inconclusive { largest_size_tried } => {
                emit(
                    cfg.format,
                    json!({
                        "d": d,
                        "n": n,
                        "status": "inconclusive",
                        "largest_size_tried": largest_size_tried,
                    }),
                );
                return Ok(ExitCode::from(2));
            }
        },
        KronCmd::Table { fixture } => {
            return run_fixtures(
                FixturesCmd::Run {
                    name: Some(fixture),
                },
                cfg,
                cache,
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- fixtures

fn run_fixtures(
    cmd: FixturesCmd,
    cfg: &RunConfig,
    cache: &CoefficientCache,
) -> Result<ExitCode> {
    match cmd {
        FixturesCmd::List => {
            let list: Vec<Value> = fixtures::all_fixtures()
                .iter()
                .map(|f| {
                    json!({
                        "name": f.name,
                        "description": f.description,
                        "cells": f.expected.len(),
                    })
                })
                .collect();
            emit(cfg.format, json!({ "fixtures": list }));
            Ok(ExitCode::SUCCESS)
        }
        FixturesCmd::Run { name } => {
            let chosen = match name {
                Some(n) => vec![fixtures::find(&n)?],
                None => fixtures::all_fixtures(),
            };
            let mut total_failures = 0usize;
            for f in &chosen {
                let report = fixtures::run(f, cfg.max_partition_size, cache)?;
                total_failures += report.failures;
                emit(cfg.format, report.json);
            }
            if total_failures > 0 {
                eprintln!("error: {total_failures} fixture cell(s) disagree");
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}
