use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vminor::bench::{bench_size, Algorithm, BenchConfig};
use vminor::circle::{eulerian_tour, multigraph_from_word, DoubleOccurrenceWord, MultiGraph};
use vminor::dh::{random_dh, GrowthWeights};
use vminor::dh_star::{solve_star, SolverOutcome};
use vminor::io::*;
use vminor::ksoet::{k_soet, KSoetOptions};
use vminor::oracle::{vertex_minor_bruteforce, BruteOptions};
use vminor::small::small_vertex_minor;
use vminor::soet::{random_cubic, reduce_cubham_to_starvm, triangular_expansion};
use vminor::stab::{verify_plan_report, DEFAULT_QUBIT_CAP};
use vminor::{Error, LabeledGraph, TransformationPlan, VertexId};

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 2;
const FAILURE: u8 = 3;

/// Environment variable overriding the default search budgets.
const BUDGET_ENV: &str = "VMINOR_BUDGET";

#[derive(Parser)]
#[command(name = "vminor", version, about = "Vertex-minor tools for graph states")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Output {
    /// Print Graphviz DOT instead of JSON where a graph is produced
    #[arg(long, global = true)]
    dot: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Brute-force vertex-minor test with a witness plan
    CheckVm {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Maximum number of measurement patterns to try
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Star vertex-minor on distance-hereditary graphs
    DhStar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        targets: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Connected targets on at most three vertices
    Small {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        target: Vec<String>,
        #[arg(long, value_enum, default_value = "star")]
        shape: SmallShape,
        #[command(flatten)]
        out: Output,
    },
    /// Search for a tour visiting the marked vertices as `s s`
    Ksoet {
        #[arg(long)]
        multigraph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        marked: Vec<String>,
        /// Path-search step budget
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Triangular expansion of a cubic graph
    Expand {
        #[arg(long)]
        cubic: PathBuf,
        /// Print the multigraph edge-list text
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Build the star vertex-minor instance for a cubic graph
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        #[arg(long)]
        cubic: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Random distance-hereditary graph with its construction trace
    GenDh {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leaf, false-twin and true-twin weights
        #[arg(long, value_delimiter = ',', num_args = 3)]
        weights: Option<Vec<f64>>,
        /// Print the edge-list text only
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Random simple cubic graph
    GenCubic {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check a plan on graph states over every measurement branch
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
        cap: usize,
    },
    /// Runtime sweep over random distance-hereditary graphs
    Bench {
        #[arg(long, value_enum, default_value = "dh-star")]
        algo: BenchAlgo,
        /// Comma list, or `a..b` / `a..b:step` (inclusive, step defaults to a)
        #[arg(long, default_value = "10..200")]
        sizes: String,
        /// Defaults to 100 for dh-star and 10 for brute
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 4)]
        targets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; defaults to the available parallelism
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Convert between graph, multigraph and word formats
    Convert {
        #[arg(long, conflicts_with_all = ["graph", "multigraph"])]
        word: Option<String>,
        #[arg(long, conflicts_with = "multigraph")]
        graph: Option<PathBuf>,
        #[arg(long)]
        multigraph: Option<PathBuf>,
        #[arg(long, value_enum)]
        to: ConvertTo,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SmallShape {
    Star,
    Triangle,
    Path,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    CubhamToStarvm,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchAlgo {
    DhStar,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertTo {
    /// Edge-list text of a simple graph (alternance graph for words)
    EdgeList,
    Json,
    Dot,
    /// Multigraph edge-list text
    Multigraph,
    /// Word of an Eulerian tour
    Word,
}

type CmdResult = Result<(Value, u8), Error>;

fn read(p: &Path) -> Result<String, Error> {
    std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

fn read_graph(p: &Path) -> Result<LabeledGraph, Error> {
    parse_graph(&read(p)?)
}

fn labels(v: &[String]) -> Result<Vec<VertexId>, Error> {
    v.iter().map(|s| s.trim().parse()).collect()
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok()?.parse().ok()
}

fn graph_or_dot(g: &LabeledGraph, dot: bool) -> Value {
    if dot {
        Value::String(graph_to_dot(g))
    } else {
        graph_to_json(g)
    }
}

fn plan_json(p: &TransformationPlan) -> Value {
    serde_json::to_value(&p.moves).expect("moves serialize")
}

fn check_vm(graph: &Path, target: &Path, budget: Option<u64>) -> CmdResult {
    let g = read_graph(graph)?;
    let t = read_graph(target)?;
    let mut opts = BruteOptions::default();
    if let Some(b) = budget.or_else(env_budget) {
        opts.budget = b;
    }
    match vertex_minor_bruteforce(&g, &t, &opts) {
        Ok(Some(plan)) => Ok((json!({"status": "yes", "plan": plan_json(&plan)}), YES)),
        Ok(None) => Ok((json!({"status": "no"}), NO)),
        Err(Error::BudgetExceeded) => Ok((json!({"status": "unknown", "reason": "budget exceeded"}), UNKNOWN)),
        Err(e) => Err(e),
    }
}

fn dh_star(graph: &Path, targets: &[String], dot: bool) -> CmdResult {
    let g = read_graph(graph)?;
    let t = labels(targets)?;
    if t.is_empty() {
        return Err(Error::InvalidTarget("no targets given".into()));
    }
    // the solver works on the component holding the first target
    let comp = g
        .connected_components()
        .into_iter()
        .find(|c| c.contains(&t[0]))
        .ok_or_else(|| Error::UnknownVertex(t[0].clone()))?;
    if let Some(v) = t.iter().find(|v| !comp.contains(v)) {
        g.idx(v)?;
        return Ok((json!({"status": "not-vertex-minor", "certified_dh": false, "reason": "targets in different components"}), NO));
    }
    let h = g.induced_subgraph(&comp)?;
    let verdict = solve_star(&h, &t)?;
    Ok(match verdict.outcome {
        SolverOutcome::Plan { plan, center } => {
            let mut out = json!({"status": "plan", "plan": plan_json(&plan), "center": center, "certified_dh": verdict.certified_dh});
            if dot {
                out["result"] = graph_or_dot(&plan.result_on_targets(&h)?, true);
            }
            (out, YES)
        }
        SolverOutcome::NotVertexMinor => (json!({"status": "not-vertex-minor", "certified_dh": verdict.certified_dh}), NO),
        SolverOutcome::UnknownNotDH => (json!({"status": "unknown-not-dh", "certified_dh": false}), UNKNOWN),
    })
}

fn small(graph: &Path, target: &[String], shape: SmallShape, dot: bool) -> CmdResult {
    let g = read_graph(graph)?;
    let t = labels(target)?;
    let tg = match (t.len(), shape) {
        (1, _) => LabeledGraph::new(t.clone()),
        (2, _) => LabeledGraph::path(&t),
        (3, SmallShape::Triangle) => LabeledGraph::complete(t.clone()),
        (3, SmallShape::Star) => LabeledGraph::star(t[0].clone(), t.iter().cloned()),
        (3, SmallShape::Path) => LabeledGraph::path(&t),
        (k, _) => return Err(Error::InvalidTarget(format!("expected 1 to 3 target vertices, got {k}"))),
    };
    match small_vertex_minor(&g, &tg) {
        Ok(plan) => Ok((json!({"status": "plan", "plan": plan_json(&plan), "target": graph_or_dot(&tg, dot)}), YES)),
        Err(Error::NotConnected) => Ok((json!({"status": "no", "reason": "targets in different components"}), NO)),
        Err(e) => Err(e),
    }
}

fn ksoet(path: &Path, marked: &[String], budget: Option<u64>) -> CmdResult {
    let f = parse_multigraph(&read(path)?)?;
    let m = labels(marked)?;
    let mut opts = KSoetOptions::default();
    if let Some(b) = budget.or_else(env_budget) {
        opts.step_budget = b;
    }
    match k_soet(&f, &m, &opts) {
        Ok(Some(w)) => {
            let word: Vec<String> = w.tour.word(&f).iter().map(|v| v.to_string()).collect();
            Ok((json!({"exists": true, "witness_word": word.join(" "), "order": w.order}), YES))
        }
        Ok(None) => Ok((json!({"exists": false}), NO)),
        Err(Error::BudgetExceeded) => Ok((json!({"exists": null, "reason": "budget exceeded"}), UNKNOWN)),
        Err(e) => Err(e),
    }
}

fn multigraph_json(f: &MultiGraph) -> Value {
    let edges: Vec<Value> = f.edges().iter().map(|e| json!([e.id, f.label(e.u), f.label(e.v)])).collect();
    json!({"vertices": f.vertices(), "edges": edges})
}

fn expand(cubic: &Path, text: bool, dot: bool) -> CmdResult {
    let r = read_graph(cubic)?;
    let e = triangular_expansion(&r)?;
    let out = if text {
        Value::String(write_multigraph(&e.graph))
    } else if dot {
        Value::String(multigraph_to_dot(&e.graph))
    } else {
        multigraph_json(&e.graph)
    };
    Ok((out, YES))
}

fn reduce(cubic: &Path, dot: bool) -> CmdResult {
    let r = read_graph(cubic)?;
    let inst = reduce_cubham_to_starvm(&r)?;
    let word: Vec<String> = inst.base_tour.word(&inst.expansion.graph).iter().map(|v| v.to_string()).collect();
    Ok((json!({"graph": graph_or_dot(&inst.graph, dot), "targets": inst.targets, "base_word": word.join(" ")}), YES))
}

fn gen_dh(n: usize, seed: u64, weights: Option<Vec<f64>>, text: bool, dot: bool) -> CmdResult {
    let w = match weights {
        Some(v) => GrowthWeights([v[0], v[1], v[2]]),
        None => GrowthWeights::default(),
    };
    if w.0.iter().any(|&x| x < 0.0 || !x.is_finite()) || w.0.iter().sum::<f64>() <= 0.0 {
        return Err(Error::Parse("weights must be non-negative with a positive sum".into()));
    }
    if n == 0 {
        return Err(Error::Parse("n must be positive".into()));
    }
    let (g, trace) = random_dh(n, &mut ChaCha8Rng::seed_from_u64(seed), w);
    if text {
        return Ok((Value::String(write_edge_list(&g)), YES));
    }
    Ok((json!({"graph": graph_or_dot(&g, dot), "trace": trace}), YES))
}

fn gen_cubic(n: usize, seed: u64, text: bool, dot: bool) -> CmdResult {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Parse("cubic graphs need an even n of at least 4".into()));
    }
    let g = random_cubic(n, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok((if text { Value::String(write_edge_list(&g)) } else { graph_or_dot(&g, dot) }, YES))
}

fn verify(graph: &Path, target: &Path, plan: &Path, cap: usize) -> CmdResult {
    let g = read_graph(graph)?;
    let t = read_graph(target)?;
    let p = parse_plan(&read(plan)?, &g, t.vertices())?;
    let r = verify_plan_report(&g, &t, &p, cap)?;
    let code = if r.ok { YES } else { NO };
    Ok((json!({"pass": r.ok, "branches": r.branches, "failure": r.failure}), code))
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Parse(format!("bad size list {s:?}"));
    if let Some((a, rest)) = s.split_once("..") {
        let (b, step) = rest.split_once(':').unwrap_or((rest, a));
        let (a, b, step): (usize, usize, usize) =
            (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?, step.parse().map_err(|_| bad())?);
        if step == 0 || a > b {
            return Err(bad());
        }
        Ok((a..=b).step_by(step).collect())
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    }
}

/// Prints one record per line as it finishes.
fn bench_cmd(algo: BenchAlgo, sizes: &str, trials: Option<usize>, targets: usize, seed: u64, threads: Option<usize>) -> Result<u8, Error> {
    let algorithm = match algo {
        BenchAlgo::DhStar => Algorithm::DhStar,
        BenchAlgo::Brute => Algorithm::Brute,
    };
    let cfg = BenchConfig {
        algorithm,
        sizes: parse_sizes(sizes)?,
        trials: trials.unwrap_or(if algorithm == Algorithm::Brute { 10 } else { 100 }),
        targets,
        seed,
        threads: threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
    };
    for &n in &cfg.sizes {
        println!("{}", serde_json::to_string(&bench_size(&cfg, n)?).expect("record serializes"));
    }
    Ok(YES)
}

fn convert(word: Option<String>, graph: Option<PathBuf>, multigraph: Option<PathBuf>, to: ConvertTo) -> CmdResult {
    let text = |s: String| Ok((Value::String(s), YES));
    if let Some(w) = word {
        let w = DoubleOccurrenceWord::parse(&w)?;
        let (f, _) = multigraph_from_word(&w);
        return match to {
            ConvertTo::Multigraph => text(write_multigraph(&f)),
            ConvertTo::EdgeList => text(write_edge_list(&w.alternance_graph())),
            ConvertTo::Json => Ok((graph_to_json(&w.alternance_graph()), YES)),
            ConvertTo::Dot => text(graph_to_dot(&w.alternance_graph())),
            ConvertTo::Word => text(w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")),
        };
    }
    if let Some(p) = multigraph {
        let f = parse_multigraph(&read(&p)?)?;
        return match to {
            ConvertTo::Multigraph => text(write_multigraph(&f)),
            ConvertTo::Json => Ok((multigraph_json(&f), YES)),
            ConvertTo::Dot => text(multigraph_to_dot(&f)),
            ConvertTo::Word | ConvertTo::EdgeList => {
                let t = eulerian_tour(&f)?;
                let w = t.dow(&f)?;
                if matches!(to, ConvertTo::Word) {
                    text(w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "))
                } else {
                    text(write_edge_list(&w.alternance_graph()))
                }
            }
        };
    }
    if let Some(p) = graph {
        let g = read_graph(&p)?;
        return match to {
            ConvertTo::EdgeList => text(write_edge_list(&g)),
            ConvertTo::Json => Ok((graph_to_json(&g), YES)),
            ConvertTo::Dot => text(graph_to_dot(&g)),
            _ => Err(Error::Parse("a simple graph converts only to edge-list, json or dot".into())),
        };
    }
    Err(Error::Parse("give one of --word, --graph or --multigraph".into()))
}

fn run(cli: Cli) -> Result<u8, Error> {
    let (out, code) = match cli.cmd {
        Cmd::CheckVm { graph, target, budget } => check_vm(&graph, &target, budget)?,
        Cmd::DhStar { graph, targets, out } => dh_star(&graph, &targets, out.dot)?,
        Cmd::Small { graph, target, shape, out } => small(&graph, &target, shape, out.dot)?,
        Cmd::Ksoet { multigraph, marked, budget } => ksoet(&multigraph, &marked, budget)?,
        Cmd::Expand { cubic, text, out } => expand(&cubic, text, out.dot)?,
        Cmd::Reduce { kind: ReduceKind::CubhamToStarvm, cubic, out } => reduce(&cubic, out.dot)?,
        Cmd::GenDh { n, seed, weights, text, out } => gen_dh(n, seed, weights, text, out.dot)?,
        Cmd::GenCubic { n, seed, text, out } => gen_cubic(n, seed, text, out.dot)?,
        Cmd::Verify { graph, target, plan, cap } => verify(&graph, &target, &plan, cap)?,
        Cmd::Bench { algo, sizes, trials, targets, seed, threads } => {
            return bench_cmd(algo, &sizes, trials, targets, seed, threads)
        }
        Cmd::Convert { word, graph, multigraph, to } => convert(word, graph, multigraph, to)?,
    };
    match out {
        Value::String(s) => print!("{s}{}", if s.ends_with('\n') { "" } else { "\n" }),
        v => println!("{}", serde_json::to_string_pretty(&v).expect("json")),
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { FAILURE } else { YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Error::BudgetExceeded) => {
            eprintln!("error: budget exceeded");
            ExitCode::from(UNKNOWN)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(FAILURE)
        }
    }
}
