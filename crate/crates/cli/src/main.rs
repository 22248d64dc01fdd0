//! Batch front end: solve one instance, bench a run matrix to CSV, or run
//! the exhaustive model checks. Everything on stdout is deterministic for a
//! fixed seed; wall-clock times go to stderr or the CSV time column.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use symbreak::models::{
    coloring_from_graph, efpa, format_grid, format_matrix, graph_coloring,
    graph_coloring_with_colors, magic_square, most_perfect_magic_square, GraphInstance,
    ModelBundle, VarNaming,
};
use symbreak::oracle::{inject_bad_generator, Verifier, DEFAULT_LEAF_BOUND};
use symbreak::perm::DEFAULT_GROUP_BOUND;
use symbreak::search::{Outcome, SearchConfig, ValHeuristic, VarHeuristic};
use symbreak::strategies::{
    run_model_restarts, run_sbds, run_static, RestartConfig, StrategyReport,
};

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "symbreak", version, disable_help_subcommand = true)]
/// Constraint solving with symmetry breaking that can itself be permuted:
/// post a canonical set, restart under random images of it, or prune
/// symmetric branches during one search.
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance and print the solution plus search stats.
    Solve(SolveArgs),
    /// Run instances × strategies × value orders × seeds, emitting CSV.
    Bench(BenchArgs),
    /// Enumerate solutions and group, then run every model check.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// One of: magic, most-perfect, efpa, coloring.
    #[arg(long)]
    model: String,
    /// Order of the square models.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated parameters: efpa takes v,q,lambda,d; coloring takes
    /// v,maxBlock,seed with an optional trailing color count; with --dimacs
    /// a single value giving the color count.
    #[arg(long)]
    params: Option<String>,
    /// Read the coloring graph from a DIMACS file ("c block ..." comments
    /// carry the block structure).
    #[arg(long)]
    dimacs: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// static, model-restarts, or sbds.
    #[arg(long, default_value = "static")]
    strategy: String,
    /// lex or random.
    #[arg(long, default_value = "lex")]
    value_order: String,
    /// Backtrack budget: per restart under model-restarts, total otherwise.
    #[arg(long)]
    cutoff: Option<u64>,
    /// Master seed; falls back to SYMBREAK_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance spec model:params, e.g. magic:5 or efpa:3,4,3,3. Repeat for
    /// each instance.
    #[arg(long = "instance", required = true)]
    instances: Vec<String>,
    /// Comma-separated subset of static,model-restarts,sbds.
    #[arg(long, default_value = "static,model-restarts,sbds")]
    strategies: String,
    /// Comma-separated subset of lex,random.
    #[arg(long, default_value = "lex,random")]
    value_orders: String,
    /// Comma-separated seed list; defaults to the master seed alone.
    #[arg(long)]
    seeds: Option<String>,
    /// Per-restart backtrack budget for model-restarts.
    #[arg(long)]
    cutoff: Option<u64>,
    /// Master seed; falls back to SYMBREAK_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Per-cell wall-clock limit in seconds; a timed-out cell still gets
    /// its row and the run continues.
    #[arg(long)]
    timeout: Option<f64>,
    /// CSV file; appends without a header when it already has content.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Corrupt the group with a non-symmetry first; the checks must then
    /// fail (negative control).
    #[arg(long)]
    inject_bad: bool,
}

#[derive(Copy, Clone, PartialEq)]
enum Strategy {
    Static,
    ModelRestarts,
    Sbds,
}

impl Strategy {
    fn parse(s: &str) -> Result<Strategy, String> {
        match s {
            "static" => Ok(Strategy::Static),
            "model-restarts" => Ok(Strategy::ModelRestarts),
            "sbds" => Ok(Strategy::Sbds),
            other => Err(format!(
                "unknown strategy '{other}' (expected static, model-restarts, or sbds)"
            )),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Strategy::Static => "static",
            Strategy::ModelRestarts => "model-restarts",
            Strategy::Sbds => "sbds",
        }
    }
}

#[derive(Copy, Clone, PartialEq)]
enum ValueOrder {
    Lex,
    Random,
}

impl ValueOrder {
    fn parse(s: &str) -> Result<ValueOrder, String> {
        match s {
            "lex" => Ok(ValueOrder::Lex),
            "random" => Ok(ValueOrder::Random),
            other => Err(format!("unknown value order '{other}' (expected lex or random)")),
        }
    }

    fn name(self) -> &'static str {
        match self {
            ValueOrder::Lex => "lex",
            ValueOrder::Random => "random",
        }
    }
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad integer '{p}'")))
        .collect()
}

fn build_bundle(m: &ModelArgs) -> Result<ModelBundle, String> {
    let need_n = || m.n.ok_or_else(|| format!("--model {} requires --n", m.model));
    match m.model.as_str() {
        "magic" => magic_square(need_n()?).map_err(|e| e.to_string()),
        "most-perfect" => most_perfect_magic_square(need_n()?).map_err(|e| e.to_string()),
        "efpa" => {
            let p = parse_usize_list(m.params.as_deref().ok_or("--model efpa requires --params")?)?;
            let [v, q, lambda, d] = p[..]
                .try_into()
                .map_err(|_| "efpa takes --params v,q,lambda,d".to_string())?;
            efpa(v, q, lambda, d).map_err(|e| e.to_string())
        }
        "coloring" => {
            if let Some(path) = &m.dimacs {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                let g = GraphInstance::from_dimacs(&text).map_err(|e| e.to_string())?;
                let colors = match m.params.as_deref() {
                    Some(p) => {
                        let list = parse_usize_list(p)?;
                        let [c] = list[..]
                            .try_into()
                            .map_err(|_| "with --dimacs, --params is the color count".to_string())?;
                        c
                    }
                    None => g.n,
                };
                coloring_from_graph(&g, colors).map_err(|e| e.to_string())
            } else {
                let p = parse_usize_list(
                    m.params.as_deref().ok_or("--model coloring requires --params")?,
                )?;
                match p[..] {
                    [v, max_block, seed] => {
                        graph_coloring(v, max_block, seed as u64).map_err(|e| e.to_string())
                    }
                    [v, max_block, seed, colors] => {
                        graph_coloring_with_colors(v, max_block, seed as u64, colors)
                            .map_err(|e| e.to_string())
                    }
                    _ => Err("coloring takes --params v,maxBlock,seed[,colors]".to_string()),
                }
            }
        }
        other => Err(format!(
            "unknown model '{other}' (expected magic, most-perfect, efpa, or coloring)"
        )),
    }
}

/// Instance spec "model:params" as used by bench rows.
fn bundle_from_spec(spec: &str) -> Result<ModelBundle, String> {
    let (model, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("instance spec '{spec}' is not model:params"))?;
    let args = match model {
        "magic" | "most-perfect" => ModelArgs {
            model: model.to_string(),
            n: Some(rest.parse().map_err(|_| format!("bad order '{rest}'"))?),
            params: None,
            dimacs: None,
        },
        _ => ModelArgs {
            model: model.to_string(),
            n: None,
            params: Some(rest.to_string()),
            dimacs: None,
        },
    };
    build_bundle(&args)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SYMBREAK_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("SYMBREAK_SEED is set to '{v}', not a number")),
        Err(_) => Ok(0),
    }
}

fn run_cell(
    bundle: &ModelBundle,
    strategy: Strategy,
    vo: ValueOrder,
    seed: u64,
    cutoff: Option<u64>,
    timeout: Option<f64>,
) -> StrategyReport {
    let deadline = timeout.map(|t| Instant::now() + Duration::from_secs_f64(t));
    let base = SearchConfig {
        var_heuristic: VarHeuristic::FixedOrder,
        val_heuristic: match vo {
            ValueOrder::Lex => ValHeuristic::LexMin,
            ValueOrder::Random => ValHeuristic::RandomOrder(seed),
        },
        cutoff: None,
        deadline,
        generators: Vec::new(),
    };
    match strategy {
        Strategy::Static => run_static(
            &bundle.csp,
            &bundle.sbc,
            &SearchConfig {
                cutoff,
                ..base
            },
        ),
        Strategy::ModelRestarts => run_model_restarts(
            &bundle.csp,
            &bundle.sbc,
            &bundle.group,
            &base,
            &RestartConfig {
                cutoff: cutoff.unwrap_or(1000),
                master_seed: seed,
                ..RestartConfig::default()
            },
        ),
        Strategy::Sbds => run_sbds(
            &bundle.csp,
            &bundle.group,
            &SearchConfig {
                cutoff,
                ..base
            },
        ),
    }
}

fn render_solution(bundle: &ModelBundle, a: &symbreak::Assignment) -> String {
    let offset = bundle.csp.value_offset;
    match bundle.naming {
        VarNaming::Grid(n) => format_grid(a, n, offset),
        VarNaming::Matrix { rows, cols } => format_matrix(a, rows, cols, offset),
        VarNaming::Plain => {
            let mut out = String::new();
            for i in 0..a.len() {
                out.push_str(&format!("{} = {}\n", bundle.naming.name(i), a.external(i, offset)));
            }
            out
        }
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<u8, String> {
    let bundle = build_bundle(&args.model)?;
    let strategy = Strategy::parse(&args.strategy)?;
    let vo = ValueOrder::parse(&args.value_order)?;
    let seed = resolve_seed(args.seed)?;
    let start = Instant::now();
    let report = run_cell(&bundle, strategy, vo, seed, args.cutoff, args.timeout);
    let secs = start.elapsed().as_secs_f64();

    let has_objective = bundle.csp.objective.is_some();
    let code = match &report.outcome {
        Outcome::Solution(a) => {
            print!("{}", render_solution(&bundle, a));
            if has_objective {
                let (_, v) = report.best.as_ref().expect("objective solution carries a value");
                println!("opt: {v}");
                println!("proved: {}", report.proved_optimal);
            }
            if !has_objective || report.proved_optimal {
                0
            } else {
                EXIT_BUDGET
            }
        }
        Outcome::Exhausted => {
            println!("no solution");
            EXIT_INFEASIBLE
        }
        Outcome::CutoffReached => {
            println!("budget exhausted");
            EXIT_BUDGET
        }
        Outcome::TimedOut => {
            println!("timed out");
            EXIT_BUDGET
        }
    };
    println!("backtracks: {}", report.stats.backtracks);
    if strategy == Strategy::ModelRestarts {
        println!("restarts: {}", report.restarts.len());
    }
    eprintln!("time: {secs:.3}s");
    Ok(code)
}

struct Cell {
    instance: String,
    strategy: Strategy,
    vo: ValueOrder,
    seed: u64,
}

/// Instance label for the CSV column. Params joined with dashes so the row
/// splits into exactly eight comma-separated fields.
fn csv_label(spec: &str) -> String {
    spec.replace(',', "-")
}

fn csv_row(cell: &Cell, bundle: &ModelBundle, report: &StrategyReport, secs: f64) -> String {
    let has_objective = bundle.csp.objective.is_some();
    let opt = match (&report.best, has_objective) {
        (Some((_, v)), true) => v.to_string(),
        _ => String::new(),
    };
    let proved = if has_objective {
        report.proved_optimal.to_string()
    } else {
        String::new()
    };
    format!(
        "{},{},{},{},{},{},{},{:.3}",
        csv_label(&cell.instance),
        cell.strategy.name(),
        cell.vo.name(),
        cell.seed,
        opt,
        proved,
        report.stats.backtracks,
        secs
    )
}

fn cmd_bench(args: &BenchArgs) -> Result<u8, String> {
    let strategies: Vec<Strategy> = args
        .strategies
        .split(',')
        .map(|s| Strategy::parse(s.trim()))
        .collect::<Result<_, _>>()?;
    let value_orders: Vec<ValueOrder> = args
        .value_orders
        .split(',')
        .map(|s| ValueOrder::parse(s.trim()))
        .collect::<Result<_, _>>()?;
    let master = resolve_seed(args.seed)?;
    let seeds: Vec<u64> = match &args.seeds {
        Some(list) => list
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| format!("bad seed '{p}'")))
            .collect::<Result<_, _>>()?,
        None => vec![master],
    };
    // validate the instance specs before spawning anything
    for spec in &args.instances {
        bundle_from_spec(spec)?;
    }

    let mut cells = Vec::new();
    for instance in &args.instances {
        for &strategy in &strategies {
            for &vo in &value_orders {
                for &seed in &seeds {
                    cells.push(Cell {
                        instance: instance.clone(),
                        strategy,
                        vo,
                        seed,
                    });
                }
            }
        }
    }

    let rows: Mutex<Vec<Option<String>>> = Mutex::new(vec![None; cells.len()]);
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(cells.len())
        .max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(i) else { break };
                let bundle = bundle_from_spec(&cell.instance).expect("spec validated above");
                let start = Instant::now();
                let report = run_cell(
                    &bundle,
                    cell.strategy,
                    cell.vo,
                    cell.seed,
                    args.cutoff,
                    args.timeout,
                );
                let secs = start.elapsed().as_secs_f64();
                rows.lock().unwrap()[i] = Some(csv_row(cell, &bundle, &report, secs));
            });
        }
    });

    let flag_line = format!(
        "# bench instances={} strategies={} valueOrders={} seeds={} cutoff={} timeout={}",
        args.instances.join(";"),
        strategies.iter().map(|s| s.name()).collect::<Vec<_>>().join(","),
        value_orders.iter().map(|v| v.name()).collect::<Vec<_>>().join(","),
        seeds.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
        args.cutoff.map_or("default".into(), |c| c.to_string()),
        args.timeout.map_or("none".into(), |t| t.to_string()),
    );
    let body: Vec<String> = rows
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every cell ran"))
        .collect();

    match &args.out {
        Some(path) => {
            let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            let mut f = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let mut write = |line: &str| writeln!(f, "{line}").map_err(|e| e.to_string());
            write(&flag_line)?;
            if fresh {
                write("instance,strategy,valueOrder,seed,opt,provedOptimal,backtracks,seconds")?;
            }
            for row in &body {
                write(row)?;
            }
        }
        None => {
            println!("{flag_line}");
            println!("instance,strategy,valueOrder,seed,opt,provedOptimal,backtracks,seconds");
            for row in &body {
                println!("{row}");
            }
        }
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, String> {
    let mut bundle = build_bundle(&args.model)?;
    if args.inject_bad {
        inject_bad_generator(&mut bundle);
    }
    let v = match Verifier::new(&bundle, DEFAULT_LEAF_BOUND, DEFAULT_GROUP_BOUND) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("verification setup failed: {e}");
            return Ok(EXIT_INFEASIBLE);
        }
    };
    print!("{}", v.report());
    for (kind, res) in v.check_all() {
        if let (false, Some((label, a))) = (res.pass, &res.counterexample) {
            let vals: Vec<i64> = (0..a.len())
                .map(|i| a.external(i, bundle.csp.value_offset))
                .collect();
            println!(
                "counterexample for {}: element {}, assignment {:?}",
                kind.name(),
                label,
                vals
            );
        }
    }
    Ok(if v.all_pass() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's own help/version output keeps exit status 0
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let run = match &cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Verify(a) => cmd_verify(a),
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
