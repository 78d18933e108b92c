//! `cliquepath`: constructions, containment checks, exact extremal numbers
//! and witness extraction from the command line.
//!
//! Exit status is 0 on success, 1 on domain errors (malformed graph6,
//! parameters outside a construction's domain, exhausted budgets) and 2 on
//! usage errors.

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use cliquepath::constructions::{clique_path, extremal_candidate, friendship, turan, ExtremalVariant};
use cliquepath::containment::contains;
use cliquepath::extremal::{
    ex_range, records_to_csv, records_to_json, verify_theorem, verify_to_csv, verify_to_json, ExtremalConfig,
};
use cliquepath::graph6::{from_graph6, to_graph6};
use cliquepath::pipeline::{extract_witness_with, PipelineConfig, DEFAULT_FALLBACK_CAP};
use cliquepath::{Error, Graph, PatternSpec, SearchOptions, Witness};
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "cliquepath", version, about = "Extremal graph experiments on clique-paths")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named graph as graph6 or DOT.
    Construct(ConstructArgs),
    /// Report whether each input graph contains a pattern.
    Check(CheckArgs),
    /// Exact ex(n, H) over a range of orders.
    Ex(ExArgs),
    /// Structural witness extraction for P_{k,r}.
    Extract(ExtractArgs),
    /// Compare exact ex(n, P_{k,r}) with the construction's edge count.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// T_{n,r}: complete r-partite graph on n vertices.
    Turan,
    /// P_{k,r}.
    CliquePath,
    /// F_{k,r}: k copies of K_r sharing one vertex.
    Friendship,
    /// G_{n,k,r}.
    Extremal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Largest,
    Smallest,
}

impl From<Variant> for ExtremalVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Largest => ExtremalVariant::LargestPart,
            Variant::Smallest => ExtremalVariant::SmallestPart,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Dot,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Which part of G_{n,k,r} receives the extra edge when k is even.
    #[arg(long, value_enum, default_value = "largest")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// `clique-path:k,r`, `friendship:k,r`, `clique:r` or `graph6:<string>`.
    #[arg(long, value_parser = parse_pattern)]
    pattern: PatternSpec,
    /// graph6 file with one graph per line, or `-` for standard input.
    #[arg(long)]
    input: String,
    /// Validate this witness (check or extract output) against the single input graph instead of searching.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    node_budget: Option<u64>,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest order searched.
    #[arg(long, env = "CLIQUEPATH_CAP", default_value_t = cliquepath::extremal::DEFAULT_EXTREMAL_CAP)]
    cap: usize,
    /// Abort after generating this many graphs.
    #[arg(long)]
    budget: Option<u64>,
    /// Abort after this many milliseconds.
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Disable edge-floor pruning.
    #[arg(long)]
    no_edge_floor: bool,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings in JSON output.
    #[arg(long, requires = "json")]
    timings: bool,
}

impl SearchArgs {
    fn config(&self) -> ExtremalConfig {
        ExtremalConfig {
            cap: self.cap,
            node_budget: self.budget,
            time_budget: self.time_budget_ms.map(Duration::from_millis),
            jobs: self.jobs,
            edge_floor: !self.no_edge_floor,
        }
    }
}

#[derive(Args)]
struct ExArgs {
    #[arg(long, value_parser = parse_pattern)]
    pattern: PatternSpec,
    /// `A..B`, `A..=B` (both inclusive) or a single order.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    /// graph6 file with one graph per line, or `-` for standard input.
    #[arg(long)]
    input: String,
    /// Orders up to which a failed structural route falls back to exact search.
    #[arg(long, default_value_t = DEFAULT_FALLBACK_CAP)]
    fallback_cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[command(flatten)]
    search: SearchArgs,
}

fn parse_pattern(s: &str) -> Result<PatternSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn usage_error(kind: ErrorKind, msg: &str) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn required(value: Option<usize>, flag: &str, family: &str) -> usize {
    value.unwrap_or_else(|| {
        usage_error(ErrorKind::MissingRequiredArgument, &format!("--{flag} is required for --family {family}"))
    })
}

fn read_text(input: &str) -> Result<String, String> {
    let mut text = String::new();
    if input == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| format!("reading standard input: {e}"))?;
    } else {
        text = std::fs::read_to_string(input).map_err(|e| format!("reading {input}: {e}"))?;
    }
    Ok(text)
}

fn read_graphs(input: &str) -> Result<Vec<Graph>, String> {
    read_text(input)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| from_graph6(l.as_bytes()).map_err(|e| format!("{input}, graph {}: {e}", i + 1)))
        .collect()
}

/// Accepts a bare witness, `CONTAINS <witness>` or an object with a `witness` field.
fn read_witness(path: &PathBuf) -> Result<Witness, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let body = text.trim();
    let body = body.strip_prefix("CONTAINS").unwrap_or(body).trim();
    let mut value: serde_json::Value =
        serde_json::from_str(body).map_err(|e| format!("{}: not JSON: {e}", path.display()))?;
    if let Some(inner) = value.get_mut("witness") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| format!("{}: not a witness: {e}", path.display()))
}

fn construct(args: &ConstructArgs) -> Result<String, String> {
    let name = args.family.to_possible_value().expect("no skipped variants").get_name().to_owned();
    let g = match args.family {
        Family::Turan => turan(required(args.n, "n", &name), required(args.r, "r", &name)),
        Family::CliquePath => clique_path(required(args.k, "k", &name), required(args.r, "r", &name)),
        Family::Friendship => friendship(required(args.k, "k", &name), required(args.r, "r", &name)),
        Family::Extremal => extremal_candidate(
            required(args.n, "n", &name),
            required(args.k, "k", &name),
            required(args.r, "r", &name),
            args.variant.into(),
        ),
    }
    .map_err(|e| e.to_string())?;
    Ok(match args.format {
        Format::Graph6 => format!("{}\n", to_graph6(&g)),
        Format::Dot => g.to_dot(),
    })
}

fn check(args: &CheckArgs) -> Result<String, String> {
    let graphs = read_graphs(&args.input)?;
    if let Some(path) = &args.witness {
        let [g] = graphs.as_slice() else {
            return Err(format!("--witness needs exactly one input graph, found {}", graphs.len()));
        };
        let w = read_witness(path)?;
        if w.pattern != args.pattern {
            return Err(format!("witness is for {}, not {}", w.pattern, args.pattern));
        }
        w.validate(g).map_err(|e| e.to_string())?;
        return Ok("VALID\n".into());
    }
    let opts = SearchOptions { node_budget: args.node_budget };
    let mut out = String::new();
    for g in &graphs {
        match contains(g, &args.pattern, &opts).map_err(|e| e.to_string())? {
            None => out.push_str("FREE\n"),
            Some(w) => {
                out.push_str("CONTAINS ");
                out.push_str(&serde_json::to_string(&w).expect("witness serializes"));
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON value serializes");
    s.push('\n');
    s
}

fn ex(args: &ExArgs) -> Result<String, String> {
    let records = ex_range(args.n.clone(), &args.pattern, &args.search.config()).map_err(|e| e.to_string())?;
    Ok(if args.search.json {
        json_line(&records_to_json(&records, args.search.timings))
    } else {
        records_to_csv(&records)
    })
}

fn extract(args: &ExtractArgs) -> Result<String, String> {
    let config = PipelineConfig { fallback_cap: args.fallback_cap };
    let mut out = String::new();
    for g in read_graphs(&args.input)? {
        let extraction = extract_witness_with(&g, args.k, args.r, &config).map_err(|e| e.to_string())?;
        out.push_str(&serde_json::to_string(&extraction).expect("extraction serializes"));
        out.push('\n');
    }
    Ok(out)
}

fn verify(args: &VerifyArgs) -> Result<String, String> {
    let rows = verify_theorem(args.n.clone(), args.k, args.r, &args.search.config()).map_err(|e| e.to_string())?;
    Ok(if args.search.json { json_line(&verify_to_json(&rows)) } else { verify_to_csv(&rows) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Check(a) => check(a),
        Command::Ex(a) => ex(a),
        Command::Extract(a) => extract(a),
        Command::Verify(a) => verify(a),
    };
    let written = result.and_then(|text| match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| format!("writing output: {e}")),
    });
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
