use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mcs_cli::bench::{read_csv, render_report, run_benchmark, write_csv, BenchConfig};
use mcs_cli::cactus::{emit_cactus_data, write_cactus_csv};
use mcs_cli::generate::{random_graph, GraphSpec};
use mcs_cli::io::{format_solution, load_graph, load_solution, GraphFormat};
use mcs_cli::list::read_list;
use mcs_core::graph::{serialize_binary_graph, to_text, Graph};
use mcs_core::policy::{Heuristic, PolicyVariant, Thresholds};
use mcs_core::search::{solve, SolverConfig};
use mcs_core::verify::verify_solution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "mcs", version, about = "Maximum common (connected) induced subgraph solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print the summary line and the matched pairs.
    Solve(SolveArgs),
    /// Check a solution file; exit code 0 if valid, 1 otherwise.
    Verify(VerifyArgs),
    /// Run every instance of a list file under every variant.
    Bench(BenchArgs),
    /// Turn a benchmark CSV into cactus-plot series.
    Cactus(CactusArgs),
    /// Write a seeded random graph.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct GraphArgs {
    /// Pattern graph.
    g0: PathBuf,
    /// Target graph.
    g1: PathBuf,
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    labelled: bool,
    /// `bin` or `text`; inferred from the extension when absent.
    #[arg(long)]
    format: Option<GraphFormat>,
}

impl GraphArgs {
    fn load(&self) -> Result<(Graph, Graph)> {
        let one = |p: &Path| {
            let format = self.format.unwrap_or_else(|| GraphFormat::from_extension(p));
            load_graph(p, format, self.directed, self.labelled)
        };
        Ok((one(&self.g0)?, one(&self.g1)?))
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    connected: bool,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 1800.0)]
    timeout: f64,
    #[arg(long)]
    node_budget: Option<u64>,
    #[arg(long, default_value_t = Thresholds::default().short)]
    t_short: u64,
    #[arg(long, default_value_t = Thresholds::default().long)]
    t_long: u64,
    /// Solve with the two graphs exchanged.
    #[arg(long)]
    swap: bool,
}

impl SearchArgs {
    fn timeout(&self) -> Result<Duration> {
        Duration::try_from_secs_f64(self.timeout).context("invalid --timeout")
    }

    fn thresholds(&self) -> Thresholds {
        Thresholds { short: self.t_short, long: self.t_long }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    graphs: GraphArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, default_value = "lsm")]
    heuristic: Heuristic,
    /// Leaf union matching; defaults to on for lsm only.
    #[arg(long)]
    lum: Option<Switch>,
    /// Also write the pairs to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graphs: GraphArgs,
    solution: PathBuf,
    #[arg(long)]
    connected: bool,
}

#[derive(Args)]
struct BenchArgs {
    list: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    /// Comma-separated variants such as `mcsplit,rl,lsm+lum`.
    #[arg(long, value_delimiter = ',', default_value = "mcsplit,rl,sm,lsm+lum")]
    variants: Vec<PolicyVariant>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Instances every variant solves within this many seconds are easy.
    #[arg(long, default_value_t = 10.0)]
    easy_secs: f64,
    /// Skip instances flagged `directed` in the list.
    #[arg(long)]
    undirected_only: bool,
    /// Result CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write cactus series here.
    #[arg(long)]
    cactus: Option<PathBuf>,
}

#[derive(Args)]
struct CactusArgs {
    csv: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long)]
    directed: bool,
    /// Size of the label alphabet; 1 writes an unlabelled graph.
    #[arg(long, default_value_t = 1)]
    labels: u16,
    #[arg(long, default_value_t = 0)]
    leaves_min: usize,
    #[arg(long, default_value_t = 0)]
    leaves_max: usize,
    #[arg(long, default_value = "bin")]
    format: GraphFormat,
    out: PathBuf,
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let (g0, g1) = args.graphs.load()?;
    let variant = match args.lum {
        Some(s) => PolicyVariant::new(args.heuristic, matches!(s, Switch::On)),
        None => PolicyVariant::with_default_lum(args.heuristic),
    };
    let config = SolverConfig::new(variant)
        .connected(args.search.connected)
        .timeout(args.search.timeout()?)
        .node_budget(args.search.node_budget)
        .thresholds(args.search.thresholds());
    let (solution, stats) = if args.search.swap {
        let (s, st) = solve(&g1, &g0, &config)?;
        (s.swapped(), st)
    } else {
        solve(&g0, &g1, &config)?
    };
    let pairs = format_solution(&solution.pairs);
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "size={} completed={} nodes={} seconds={:.6} variant={} connected={}",
        solution.len(),
        stats.completed,
        stats.nodes_expanded,
        stats.wall_time.as_secs_f64(),
        variant,
        args.search.connected
    )?;
    out.write_all(pairs.as_bytes())?;
    out.flush()?;
    if let Some(path) = args.output {
        std::fs::write(&path, pairs).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let (g0, g1) = args.graphs.load()?;
    let pairs = load_solution(&args.solution)?;
    let report = verify_solution(&g0, &g1, &pairs, args.connected)?;
    let mut out = io::stdout().lock();
    if report.is_valid() {
        writeln!(out, "valid size={}", pairs.len())?;
        return Ok(ExitCode::SUCCESS);
    }
    for v in &report.violations {
        writeln!(out, "invalid {} {:?}", v.kind, v.pairs)?;
    }
    Ok(ExitCode::from(1))
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let mut records = read_list(&args.list)?;
    if args.undirected_only {
        records.retain(|r| !r.directed);
    }
    let config = BenchConfig {
        variants: args.variants.clone(),
        connected: args.search.connected,
        timeout: args.search.timeout()?,
        node_budget: args.search.node_budget,
        thresholds: args.search.thresholds(),
        jobs: args.jobs,
        swap: args.search.swap,
    };
    let rows = run_benchmark(&records, &config);
    write_csv(&rows, writer(args.out.as_deref())?)?;
    if let Some(path) = &args.cactus {
        write_cactus_csv(&emit_cactus_data(&rows), writer(Some(path))?)?;
    }
    eprint!("{}", render_report(&rows, &args.variants, args.easy_secs));
    Ok(ExitCode::SUCCESS)
}

fn cmd_cactus(args: CactusArgs) -> Result<ExitCode> {
    let file = File::open(&args.csv).with_context(|| format!("cannot open {}", args.csv.display()))?;
    let rows = read_csv(file)?;
    write_cactus_csv(&emit_cactus_data(&rows), writer(args.out.as_deref())?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    if !(0.0..=1.0).contains(&args.density) {
        bail!("--density must lie in [0, 1]");
    }
    let spec = GraphSpec::new(args.n, args.density)
        .directed(args.directed)
        .labels(args.labels)
        .leaves(args.leaves_min, args.leaves_max);
    let g = random_graph(&mut ChaCha8Rng::seed_from_u64(args.seed), &spec);
    let bytes = match args.format {
        GraphFormat::Bin => serialize_binary_graph(&g)?,
        GraphFormat::Text => to_text(&g).into_bytes(),
    };
    std::fs::write(&args.out, bytes).with_context(|| format!("cannot write {}", args.out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Cactus(a) => cmd_cactus(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
