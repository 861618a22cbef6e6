//! Batch experiment harness over the library: palette density experiments,
//! structure checks, constructions, reduced-graph builders and algorithm
//! demos, with explicit seeds and machine-readable output.
//!
//! Exit codes: 0 success, 2 property violation (generator bug), 3 cap
//! exceeded, 4 input or format error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use turan_core::comb;
use turan_core::constructions::{
    random_linear_candidate, split_construction_14, split_construction_pi, GridVertexMap,
};
use turan_core::descriptive::{
    enumerate_sequences, graph_admits_with_twins, is_head_tail_mixing, DescriptiveSequence,
    OrderSearchOptions, RandomizedSearch, SequenceFilter,
};
use turan_core::hypergraph::{
    check_locally_dense_with_cap, rgraph_from_json, rgraph_to_json, DensityMode, DensityQuery,
    RGraph, DEFAULT_EXHAUSTIVE_CAP,
};
use turan_core::order::VertexOrder;
use turan_core::palettes::{
    generate, head_tail_palette, palette_from_json, roles_palette,
    verify_generation, Palette,
};
use turan_core::quasilinear::{is_consistent_graph, twin_structure};
use turan_core::rat::{rat_u, Rational};
use turan_core::reduced::{blowup, counterexample_k4, reduced_from_json, reduced_to_json};
use turan_core::seeding::derive_seed;
use turan_core::Error as CoreError;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "turan", version, about = "Workbench for quasi-linear hypergraph experiments")]
struct Cli {
    /// Master seed; every randomized step derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Worker threads for trial-level parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Raises the exhaustive-search caps (subset scans, ordering searches).
    #[arg(long, global = true)]
    cap_override: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate palette graphs over many seeds and measure densities.
    Densify(DensifyArgs),
    /// Structure report: quasi-linearity, consistency, head-tail-mixing,
    /// admitted descriptive sequences.
    CheckF(CheckFArgs),
    /// Run one of the hypergraph constructions.
    Construct(ConstructArgs),
    /// Reduced-graph builders and density queries.
    #[command(subcommand)]
    Reduced(ReducedCommand),
    /// Demos of the standalone combinatorial algorithms.
    #[command(subcommand)]
    Utils(UtilsCommand),
}

#[derive(Args)]
struct DensifyArgs {
    /// Palette JSON file.
    #[arg(long, conflicts_with = "named")]
    palette: Option<PathBuf>,
    /// Named palette, e.g. "head-tail:3" or "roles:4".
    #[arg(long)]
    named: Option<String>,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 30)]
    trials: u64,
    /// Local-density target d as a rational ("1/27"); palette density when omitted.
    #[arg(long)]
    local_d: Option<String>,
    /// Local-density slack eps as a rational.
    #[arg(long, default_value = "1/4")]
    local_eps: String,
    /// Random subsets examined per size class in the local check.
    #[arg(long, default_value_t = 2000)]
    local_samples: usize,
    /// Skip the per-trial generator soundness re-check.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args)]
struct CheckFArgs {
    /// Hypergraph JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Normalize unsorted edges instead of rejecting them.
    #[arg(long)]
    lenient: bool,
    /// Above the ordering-search cap, probe this many random orders instead
    /// of skipping (results are declared non-exhaustive).
    #[arg(long)]
    randomized: Option<u64>,
    /// Specific descriptive sequences to test for admission (checked even
    /// above the cap).
    #[arg(long, value_delimiter = ',')]
    sigma: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructMode {
    Split14,
    Splitpi,
    LinearCandidate,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    mode: ConstructMode,
    /// Input hypergraph JSON (split modes).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    lenient: bool,
    /// Vertex count (linear-candidate mode).
    #[arg(long)]
    n: Option<usize>,
    /// Uniformity (linear-candidate mode).
    #[arg(long)]
    r: Option<usize>,
    /// Grid side and dimension, e.g. "9,2" (splitpi mode).
    #[arg(long)]
    grid: Option<String>,
    /// Comma-separated descriptive sequences, one per grid axis.
    #[arg(long, value_delimiter = ',')]
    sigmas: Vec<String>,
}

#[derive(Subcommand)]
enum ReducedCommand {
    /// Materialize the k-blowup of a palette.
    Blowup(BlowupArgs),
    /// Exact constituent densities of the power-set counterexample.
    Counterexample(CounterexampleArgs),
    /// Minimum constituent density of a reduced-graph file.
    MinDensity(MinDensityArgs),
}

#[derive(Args)]
struct BlowupArgs {
    #[arg(long, conflicts_with = "named")]
    palette: Option<PathBuf>,
    #[arg(long)]
    named: Option<String>,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long)]
    k: usize,
    /// Specific index tuple "0,1,2,3"; all constituents when omitted.
    #[arg(long)]
    tuple: Option<String>,
}

#[derive(Args)]
struct MinDensityArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum UtilsCommand {
    /// Monotone subsequence of exactly t terms.
    Monotone {
        /// Comma-separated distinct integers.
        #[arg(long)]
        seq: String,
        #[arg(long)]
        t: usize,
    },
    /// Interval-splitting greedy on disjoint sets.
    ImoSplit {
        /// Sets as semicolon-separated comma lists, e.g. "1,2;3,4".
        #[arg(long)]
        sets: String,
        /// All labels smallest-first under the order, e.g. "1,3,2,4,0".
        #[arg(long)]
        order: String,
    },
    /// Monochromatic m-subset under a seeded random coloring.
    MonoSubset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        colors: u64,
    },
    /// Randomized greedy packing of near-disjoint r-subsets.
    Packing {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::GeneratorBug(_)) => 2,
            CliError::Core(CoreError::CapExceeded(_)) => 3,
            _ => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Densify(args) => run_densify(cli, args),
        Command::CheckF(args) => run_check(cli, args),
        Command::Construct(args) => run_construct(cli, args),
        Command::Reduced(cmd) => run_reduced(cli, cmd),
        Command::Utils(cmd) => run_utils(cli, cmd),
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn meta(cli: &Cli, config: serde_json::Value) -> serde_json::Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command_line(),
        "seed": cli.seed,
        "config": config,
    })
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn parse_rational(text: &str) -> CliResult<Rational> {
    let parse_u64 = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| CliError::Usage(format!("cannot parse {s:?} as an integer")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_u64(den)?;
            if den == 0 {
                return Err(CliError::Usage("zero denominator".into()));
            }
            Ok(rat_u(parse_u64(num)?, den))
        }
        None => Ok(rat_u(parse_u64(text)?, 1)),
    }
}

fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_f64(r: &Rational) -> f64 {
    turan_core::rat::rational_to_f64(r)
}

fn load_palette(
    palette: &Option<PathBuf>,
    named: &Option<String>,
) -> CliResult<(Palette, String)> {
    match (palette, named) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            Ok((palette_from_json(&text)?, path.display().to_string()))
        }
        (None, Some(spec)) => {
            let (kind, r) = spec
                .split_once(':')
                .ok_or_else(|| CliError::Usage("expected NAME:R, e.g. roles:3".into()))?;
            let r: usize = r
                .parse()
                .map_err(|_| CliError::Usage(format!("bad uniformity in {spec:?}")))?;
            let p = match kind {
                "head-tail" => head_tail_palette(r)?,
                "roles" => roles_palette(r)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown palette {other:?}; use head-tail or roles"
                    )))
                }
            };
            Ok((p, spec.clone()))
        }
        _ => Err(CliError::Usage("exactly one of --palette or --named is required".into())),
    }
}

fn load_graph(path: &PathBuf, lenient: bool) -> CliResult<RGraph> {
    let text = std::fs::read_to_string(path)?;
    Ok(rgraph_from_json(&text, lenient)?)
}

fn parse_sigmas(texts: &[String]) -> CliResult<Vec<DescriptiveSequence>> {
    texts.iter().map(|t| Ok(DescriptiveSequence::parse(t)?)).collect()
}

// ---------------------------------------------------------------------------
// densify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TrialRow {
    trial: u64,
    trial_seed: u64,
    n: usize,
    edges: usize,
    global_density: String,
    global_density_float: f64,
    worst_local_density: String,
    worst_local_density_float: f64,
    locally_dense: bool,
}

fn run_densify(cli: &Cli, args: &DensifyArgs) -> CliResult<()> {
    use rayon::prelude::*;

    let (palette, palette_name) = load_palette(&args.palette, &args.named)?;
    let d = match &args.local_d {
        Some(text) => parse_rational(text)?,
        None => palette.density(),
    };
    let eps = parse_rational(&args.local_eps)?;

    let rows: Vec<TrialRow> = (0..args.trials)
        .into_par_iter()
        .map(|trial| -> Result<TrialRow, CliError> {
            let trial_seed = derive_seed(cli.seed, trial);
            let (g, phi) = generate(&palette, args.n, trial_seed)?;
            if !args.no_verify {
                verify_generation(&palette, &g, &phi)?;
            }
            let query = DensityQuery {
                d: d.clone(),
                eps: eps.clone(),
                mode: DensityMode::Sampled {
                    trials: args.local_samples,
                    seed: derive_seed(trial_seed, 1),
                },
            };
            let cap = cli.cap_override.unwrap_or(DEFAULT_EXHAUSTIVE_CAP);
            let report = check_locally_dense_with_cap(&g, &query, cap)?;
            let global = g.global_density();
            let worst = report.worst_density.unwrap_or_else(|| rat_u(1, 1));
            Ok(TrialRow {
                trial,
                trial_seed,
                n: args.n,
                edges: g.edge_count(),
                global_density: rational_str(&global),
                global_density_float: rational_f64(&global),
                worst_local_density: rational_str(&worst),
                worst_local_density_float: rational_f64(&worst),
                locally_dense: report.holds,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let floats: Vec<f64> = rows.iter().map(|r| r.global_density_float).collect();
    let mean = floats.iter().sum::<f64>() / floats.len().max(1) as f64;
    let min = floats.iter().cloned().fold(f64::INFINITY, f64::min);
    let var = floats.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
        / floats.len().max(1) as f64;
    let stddev = var.sqrt();

    let config = json!({
        "palette": palette_name,
        "palette_density": rational_str(&palette.density()),
        "n": args.n,
        "trials": args.trials,
        "local_d": rational_str(&d),
        "local_eps": rational_str(&eps),
        "local_samples": args.local_samples,
        "verify": !args.no_verify,
    });

    match cli.format {
        OutputFormat::Json => {
            let doc = json!({
                "meta": meta(cli, config),
                "trials": rows,
                "summary": { "mean": mean, "min": min, "stddev": stddev },
            });
            emit(cli, &serde_json::to_string_pretty(&doc).unwrap())
        }
        OutputFormat::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record([
                "row",
                "schema_version",
                "tool_version",
                "command",
                "master_seed",
                "trial",
                "trial_seed",
                "n",
                "edges",
                "global_density",
                "global_density_float",
                "worst_local_density",
                "worst_local_density_float",
                "locally_dense",
                "mean",
                "min",
                "stddev",
            ])
            .unwrap();
            let head = [
                SCHEMA_VERSION.to_string(),
                env!("CARGO_PKG_VERSION").to_string(),
                command_line(),
                cli.seed.to_string(),
            ];
            for row in &rows {
                let mut record = vec!["trial".to_string()];
                record.extend(head.iter().cloned());
                record.extend([
                    row.trial.to_string(),
                    row.trial_seed.to_string(),
                    row.n.to_string(),
                    row.edges.to_string(),
                    row.global_density.clone(),
                    format!("{:.9}", row.global_density_float),
                    row.worst_local_density.clone(),
                    format!("{:.9}", row.worst_local_density_float),
                    row.locally_dense.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
                wtr.write_record(&record).unwrap();
            }
            let mut record = vec!["summary".to_string()];
            record.extend(head.iter().cloned());
            record.extend([
                String::new(),
                String::new(),
                args.n.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                format!("{mean:.9}"),
                format!("{min:.9}"),
                format!("{stddev:.9}"),
            ]);
            wtr.write_record(&record).unwrap();
            let bytes = wtr.into_inner().unwrap();
            emit(cli, std::str::from_utf8(&bytes).unwrap())
        }
    }
}

// ---------------------------------------------------------------------------
// check-f
// ---------------------------------------------------------------------------

fn run_check(cli: &Cli, args: &CheckFArgs) -> CliResult<()> {
    let g = load_graph(&args.input, args.lenient)?;
    let mut disclosures: Vec<String> = Vec::new();
    let cap = cli.cap_override.unwrap_or(10);
    let opts = OrderSearchOptions {
        cap,
        randomized: args
            .randomized
            .map(|samples| RandomizedSearch { samples, seed: cli.seed }),
    };

    let mut report = json!({
        "meta": meta(cli, json!({
            "input": args.input.display().to_string(),
            "lenient": args.lenient,
            "cap": cap,
            "randomized": args.randomized,
        })),
        "r": g.r(),
        "n": g.n(),
        "edges": g.edge_count(),
    });
    let obj = report.as_object_mut().unwrap();

    match twin_structure(&g) {
        Err(violation) => {
            obj.insert("quasi_linear".into(), json!(false));
            obj.insert("violation".into(), json!(violation.to_string()));
        }
        Ok(ts) => {
            obj.insert("quasi_linear".into(), json!(true));
            obj.insert("twin_pairs".into(), json!(ts.pairs().len()));

            match is_consistent_graph(&g, &opts) {
                Ok(rep) => {
                    obj.insert("consistent".into(), json!(rep.consistent));
                    obj.insert("consistent_exhaustive".into(), json!(rep.exhaustive));
                    if let Some(w) = rep.witness {
                        obj.insert("consistency_witness".into(), json!(w.sorted_labels()));
                    }
                }
                Err(CoreError::CapExceeded(msg)) => disclosures.push(msg),
                Err(e) => return Err(e.into()),
            }

            match is_head_tail_mixing(&g, &opts) {
                Ok(rep) => {
                    obj.insert("head_tail_mixing".into(), json!(rep.mixing));
                    obj.insert("mixing_exhaustive".into(), json!(rep.exhaustive));
                    if let Some(w) = rep.witness_ordering {
                        obj.insert("mixing_witness".into(), json!(w.sorted_labels()));
                    }
                }
                Err(CoreError::CapExceeded(msg)) => disclosures.push(msg),
                Err(e) => return Err(e.into()),
            }

            // Admission: every sequence of the right order when the instance
            // is small, otherwise only the explicitly requested ones.
            let mut to_check: Vec<DescriptiveSequence> = Vec::new();
            if g.n() <= cap {
                to_check = enumerate_sequences(g.r(), SequenceFilter::All)?;
            } else if args.sigma.is_empty() {
                disclosures.push(format!(
                    "admission enumeration skipped: n = {} exceeds cap {cap}; \
                     pass --sigma to test specific sequences",
                    g.n()
                ));
            }
            to_check.extend(parse_sigmas(&args.sigma)?);
            to_check.sort();
            to_check.dedup();
            if !to_check.is_empty() {
                let mut admitted = Vec::new();
                for sigma in &to_check {
                    if graph_admits_with_twins(&g, &ts, sigma)?.is_some() {
                        admitted.push(sigma.to_string());
                    }
                }
                obj.insert("admitted_sequences".into(), json!(admitted));
                obj.insert(
                    "sequences_checked".into(),
                    json!(to_check.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
                );
            }
        }
    }
    obj.insert("cap_disclosures".into(), json!(disclosures));
    emit(cli, &serde_json::to_string_pretty(&report).unwrap())
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

fn run_construct(cli: &Cli, args: &ConstructArgs) -> CliResult<()> {
    match args.mode {
        ConstructMode::LinearCandidate => {
            let n = args.n.ok_or_else(|| CliError::Usage("--n required".into()))?;
            let r = args.r.ok_or_else(|| CliError::Usage("--r required".into()))?;
            let rep = random_linear_candidate(n, r, cli.seed)?;
            let config = json!({
                "mode": "linear-candidate",
                "n": n,
                "r": r,
                "p": rational_str(&rep.p),
                "p_float": rep.p_float,
                "removed_count": rep.removed_count,
            });
            emit(cli, &rgraph_to_json(&rep.graph, Some(meta(cli, config))))
        }
        ConstructMode::Split14 => {
            let input =
                args.input.as_ref().ok_or_else(|| CliError::Usage("--in required".into()))?;
            let hp = load_graph(input, args.lenient)?;
            let out = split_construction_14(&hp)?;
            let config = json!({
                "mode": "split14",
                "input": input.display().to_string(),
                "input_edges": hp.edge_count(),
                "provenance": out.provenance,
            });
            emit(cli, &rgraph_to_json(&out.graph, Some(meta(cli, config))))
        }
        ConstructMode::Splitpi => {
            let input =
                args.input.as_ref().ok_or_else(|| CliError::Usage("--in required".into()))?;
            let hp = load_graph(input, args.lenient)?;
            let grid_spec = args
                .grid
                .as_ref()
                .ok_or_else(|| CliError::Usage("--grid m,d required".into()))?;
            let (m, d) = grid_spec
                .split_once(',')
                .and_then(|(m, d)| Some((m.parse().ok()?, d.parse().ok()?)))
                .ok_or_else(|| CliError::Usage("--grid expects \"m,d\"".into()))?;
            let grid = GridVertexMap::new(m, d)?;
            if args.sigmas.is_empty() {
                return Err(CliError::Usage("--sigmas required for splitpi".into()));
            }
            let sigmas = parse_sigmas(&args.sigmas)?;
            let out = split_construction_pi(&hp, &grid, &sigmas)?;
            let config = json!({
                "mode": "splitpi",
                "input": input.display().to_string(),
                "input_edges": hp.edge_count(),
                "grid": { "m": m, "d": d },
                "sigmas": args.sigmas,
                "discarded_repeat_coordinate": out.discarded_repeat_coordinate,
                "discarded_no_labeling": out.discarded_no_labeling,
                "provenance": out.provenance,
            });
            emit(cli, &rgraph_to_json(&out.graph, Some(meta(cli, config))))
        }
    }
}

// ---------------------------------------------------------------------------
// reduced
// ---------------------------------------------------------------------------

fn run_reduced(cli: &Cli, cmd: &ReducedCommand) -> CliResult<()> {
    match cmd {
        ReducedCommand::Blowup(args) => {
            let (palette, name) = load_palette(&args.palette, &args.named)?;
            let rg = blowup(&palette, args.k)?;
            let config = json!({
                "palette": name,
                "k": args.k,
                "density": rational_str(&palette.density()),
            });
            emit(cli, &reduced_to_json(&rg, Some(meta(cli, config)))?)
        }
        ReducedCommand::Counterexample(args) => {
            let rg = counterexample_k4(args.k)?;
            let config = json!({ "k": args.k, "tuple": args.tuple });
            let body = match &args.tuple {
                Some(spec) => {
                    let tuple: Vec<usize> = spec
                        .split(',')
                        .map(|x| {
                            x.trim().parse::<usize>().map_err(|_| {
                                CliError::Usage(format!("bad tuple component {x:?}"))
                            })
                        })
                        .collect::<CliResult<Vec<_>>>()?;
                    let density = rg.constituent_density(&tuple)?;
                    json!({
                        "tuple": tuple,
                        "density": rational_str(&density),
                        "density_float": rational_f64(&density),
                    })
                }
                None => {
                    let min = rg.min_density()?;
                    json!({
                        "min_density": rational_str(&min),
                        "min_density_float": rational_f64(&min),
                        "part_size": rg.part_size(0, 1),
                    })
                }
            };
            let doc = json!({ "meta": meta(cli, config), "report": body });
            emit(cli, &serde_json::to_string_pretty(&doc).unwrap())
        }
        ReducedCommand::MinDensity(args) => {
            let text = std::fs::read_to_string(&args.input)?;
            let rg = reduced_from_json(&text)?;
            let min = rg.min_density()?;
            let doc = json!({
                "meta": meta(cli, json!({ "input": args.input.display().to_string() })),
                "min_density": rational_str(&min),
                "min_density_float": rational_f64(&min),
            });
            emit(cli, &serde_json::to_string_pretty(&doc).unwrap())
        }
    }
}

// ---------------------------------------------------------------------------
// utils
// ---------------------------------------------------------------------------

fn run_utils(cli: &Cli, cmd: &UtilsCommand) -> CliResult<()> {
    let doc = match cmd {
        UtilsCommand::Monotone { seq, t } => {
            let values: Vec<i64> = seq
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| CliError::Usage(format!("bad integer {x:?}")))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let result = comb::monotone_subsequence(&values, *t);
            json!({
                "meta": meta(cli, json!({ "seq": values, "t": t })),
                "result": result,
            })
        }
        UtilsCommand::ImoSplit { sets, order } => {
            let sets: Vec<Vec<usize>> = sets
                .split(';')
                .map(|part| {
                    part.split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| {
                            x.trim().parse::<usize>().map_err(|_| {
                                CliError::Usage(format!("bad element {x:?}"))
                            })
                        })
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            let labels: Vec<usize> = order
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("bad label {x:?}")))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let ord = VertexOrder::from_sorted_labels(&labels)?;
            let bs = comb::imo_split(&sets, &ord)?;
            json!({
                "meta": meta(cli, json!({ "sets": sets, "order": labels })),
                "result": bs,
            })
        }
        UtilsCommand::MonoSubset { n, r, m, colors } => {
            let (n, r, m, colors) = (*n, *r, *m, *colors);
            let seed = cli.seed;
            let coloring = move |e: &[usize]| -> u64 {
                let mut h = seed;
                for &v in e {
                    h = h.wrapping_mul(0x100000001b3).wrapping_add(v as u64 + 1);
                }
                h % colors
            };
            let result = comb::monochromatic_subset(n, r, m, &coloring);
            json!({
                "meta": meta(cli, json!({ "n": n, "r": r, "m": m, "colors": colors })),
                "result": result,
            })
        }
        UtilsCommand::Packing { size, r, restarts } => {
            let rep = comb::linear_packing(*size, *r, cli.seed, *restarts)?;
            json!({
                "meta": meta(cli, json!({ "size": size, "r": r, "restarts": restarts })),
                "family_size": rep.family.len(),
                "target": rep.target,
                "reached_target": rep.reached_target,
                "restarts_used": rep.restarts_used,
                "family": rep.family,
            })
        }
    };
    emit(cli, &serde_json::to_string_pretty(&doc).unwrap())
}
