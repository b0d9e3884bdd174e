use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphsearch::generators::{generate, Family, GeneratorSpec};
use graphsearch::graph::{dijkstra_all_pairs, Graph};
use graphsearch::harness::{
    emit_report, interactive_session, run_experiment, ExperimentConfig, GraphSource, ReportFormat, StrategyName,
    TargetSelection,
};
use graphsearch::oracle::{CorrectPolicy, LiePolicy};
use graphsearch::solver::{OptTable, QueryModel};
use graphsearch::{Error, Result};

#[derive(Parser)]
#[command(name = "graphsearch", version, about = "Target search on graphs by queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it in the text format.
    Gen {
        #[command(flatten)]
        spec: GenArgs,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a strategy over targets and trials and check its bound.
    ///
    /// Exits with status 0 iff no run exceeded its bound and the success gate passed.
    Run(RunArgs),
    /// Compute the optimal worst-case query count of a small graph (n ≤ 20).
    ///
    /// With --tree, also print one optimal decision tree, one node per line:
    /// `query <v>` / `query-edge <u> <v>` / `found <v>`, children indented two
    /// spaces and prefixed by the response, e.g. `on edge 1 2: query 2`.
    SolveOpt {
        graph: PathBuf,
        /// vertex, vertex-directed, distance-informed or edge-tree (default: vertex model for the graph).
        #[arg(long)]
        model: Option<QueryModel>,
        #[arg(long)]
        tree: bool,
    },
    /// Play the oracle yourself: answer `target`, `edge <u> <v>`,
    /// `edge <u> <v> dist <l>` or `side <u>` at each prompt.
    Interactive {
        graph: PathBuf,
        #[arg(long)]
        model: Option<QueryModel>,
        /// Write the transcript (one JSON object per query) here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Check graph files for format and validity errors.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Args, Clone, Default)]
struct GenArgs {
    /// path, star, complete-binary-tree, random-tree, grid, er-connected,
    /// directed-cycle, nest-cycle or random-strongly-connected.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
    #[arg(long, default_value_t = 1)]
    wmax: u64,
}

impl GenArgs {
    fn spec(&self) -> Result<GeneratorSpec> {
        let family = self.family.as_deref().ok_or_else(|| Error::Usage("--family is required".into()))?;
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::Usage(format!("--{name} is required for {family}")));
        let f = match family {
            "path" => Family::Path { n: need(self.n, "n")? },
            "star" => Family::Star { n: need(self.n, "n")? },
            "complete-binary-tree" => Family::CompleteBinaryTree { n: need(self.n, "n")? },
            "random-tree" => Family::RandomTree { n: need(self.n, "n")?, max_degree: need(self.max_degree, "max-degree")? },
            "grid" => Family::Grid { width: need(self.width, "width")?, height: need(self.height, "height")? },
            "er-connected" => Family::ErConnected { n: need(self.n, "n")?, m: need(self.m, "m")? },
            "directed-cycle" => Family::DirectedCycle { n: need(self.n, "n")? },
            "nest-cycle" => Family::NestCycle {
                c: need(self.c, "c")?,
                k: self.k.ok_or_else(|| Error::Usage("--k is required for nest-cycle".into()))?,
            },
            "random-strongly-connected" => Family::RandomStronglyConnected { n: need(self.n, "n")?, m: need(self.m, "m")? },
            other => return Err(Error::Usage(format!("unknown family `{other}`"))),
        };
        Ok(GeneratorSpec { family: f, seed: self.graph_seed, wmax: self.wmax })
    }
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment config; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Graph file (alternative to the generator flags).
    #[arg(long)]
    graph: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long)]
    strategy: Option<StrategyName>,
    #[arg(long)]
    correct_policy: Option<CorrectPolicy>,
    #[arg(long)]
    lie_policy: Option<LiePolicy>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    oracle_p: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// `all` or a sample size.
    #[arg(long)]
    targets: Option<TargetSelection>,
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Run trials on one thread.
    #[arg(long)]
    serial: bool,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let source = match (&self.graph, &self.gen.family) {
            (Some(_), Some(_)) => return Err(Error::Usage("give either --graph or --family, not both".into())),
            (Some(f), None) => Some(GraphSource::File { file: f.clone() }),
            (None, Some(_)) => Some(GraphSource::Generated(self.gen.spec()?)),
            (None, None) => None,
        };
        let mut c = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => {
                let graph = source.clone().ok_or_else(|| Error::Usage("need --config, --graph or --family".into()))?;
                let strategy = self.strategy.ok_or_else(|| Error::Usage("--strategy is required".into()))?;
                ExperimentConfig::new(graph, strategy)
            }
        };
        if let Some(s) = source {
            c.graph = s;
        }
        if let Some(s) = self.strategy {
            c.strategy = s;
        }
        if let Some(x) = self.correct_policy {
            c.correct_policy = x;
        }
        if let Some(x) = self.lie_policy {
            c.lie_policy = x;
        }
        c.p = self.p.or(c.p);
        c.oracle_p = self.oracle_p.or(c.oracle_p);
        c.delta = self.delta.or(c.delta);
        if let Some(t) = self.targets {
            c.targets = t;
        }
        if let Some(t) = self.trials {
            c.trials = t;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if self.serial {
            c.parallel = false;
        }
        c.json_out = self.json.clone().or(c.json_out);
        c.csv_out = self.csv.clone().or(c.csv_out);
        Ok(c)
    }
}

fn run(args: RunArgs) -> Result<bool> {
    let config = args.config()?;
    let report = run_experiment(&config)?;
    if let Some(p) = &config.json_out {
        emit_report(&report, ReportFormat::Json, p)?;
    }
    if let Some(p) = &config.csv_out {
        emit_report(&report, ReportFormat::Csv, p)?;
    }
    let a = &report.aggregates;
    println!(
        "{} on {}: runs={} max={} mean={:.3} p50={} p90={} p99={} success={:.4} (gate {:.4}) violations={}",
        report.strategy,
        report.graph_id,
        a.runs,
        a.max_queries,
        a.mean_queries,
        a.p50_queries,
        a.p90_queries,
        a.p99_queries,
        a.success_fraction,
        a.success_threshold,
        a.bound_violations
    );
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(report.passed())
}

fn solve(path: PathBuf, model: Option<QueryModel>, tree: bool) -> Result<bool> {
    let g = Graph::read_file(&path)?;
    let d = dijkstra_all_pairs(&g);
    let model = model.unwrap_or_else(|| QueryModel::vertex_for(&g));
    let mut table = OptTable::new(&g, &d, model)?;
    println!("OPT = {} ({model}, n = {})", table.root(), g.vertex_count());
    if tree {
        print!("{}", table.strategy_tree().to_text());
    }
    Ok(true)
}

fn interactive(path: PathBuf, model: Option<QueryModel>, transcript: Option<PathBuf>) -> Result<bool> {
    let g = Graph::read_file(&path)?;
    let model = model.unwrap_or_else(|| QueryModel::vertex_for(&g));
    let stdin = io::stdin();
    let out = interactive_session(&g, model, stdin.lock(), io::stdout())?;
    if let Some(p) = transcript {
        out.write_transcript(io::BufWriter::new(std::fs::File::create(p)?))?;
    }
    Ok(true)
}

fn validate(files: Vec<PathBuf>) -> bool {
    let mut ok = true;
    for f in files {
        match Graph::read_file(&f) {
            Ok(g) => println!(
                "{}: ok ({} n={} m={})",
                f.display(),
                if g.is_directed() { "directed" } else { "undirected" },
                g.vertex_count(),
                g.edge_count()
            ),
            Err(e) => {
                println!("{}: {e}", f.display());
                ok = false;
            }
        }
    }
    ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { spec, out } => spec.spec().and_then(|s| generate(&s)).and_then(|g| match out {
            Some(p) => g.write_file(p).map(|_| true),
            None => io::stdout().write_all(g.to_text().as_bytes()).map(|_| true).map_err(Error::from),
        }),
        Command::Run(args) => run(args),
        Command::SolveOpt { graph, model, tree } => solve(graph, model, tree),
        Command::Interactive { graph, model, transcript } => interactive(graph, model, transcript),
        Command::Validate { files } => Ok(validate(files)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
