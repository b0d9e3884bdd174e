//! Runs a strategy over targets × trials and checks every run against its bound.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{dijkstra_all_pairs, metadata, DistanceMatrix, Graph, GraphMetadata, Ratio};
use crate::oracle::{OracleState, SimOracle, TreeEdgeOracle};
use crate::rng::{derive_seed, fnv1a, rng_from};
use crate::strategy::{
    almost_undirected_search, deterministic_search, distance_informed_search, follow_edge_baseline,
    majority_repetitions, majority_tree_baseline, noisy_search, noisy_search_amortized, tree_edge_search,
    NoisyConfig, StrategyOutcome,
};

use super::bounds::{almost_undirected_bound, amortized_success, log2_floor, success_threshold, tree_edge_bound};
use super::config::{ExperimentConfig, StrategyName, TargetSelection};

/// A loaded graph with everything the strategies need.
pub struct Instance {
    pub id: String,
    pub graph: Graph,
    /// Absent for edge-query runs, which work on the tree alone.
    pub dist: Option<DistanceMatrix>,
    pub metadata: GraphMetadata,
}

impl Instance {
    pub fn new(id: impl Into<String>, graph: Graph, with_distances: bool) -> Self {
        let (dist, metadata) = if with_distances || !graph.is_tree() {
            let d = dijkstra_all_pairs(&graph);
            let m = metadata(&graph, &d);
            (Some(d), m)
        } else {
            (None, tree_metadata(&graph))
        };
        Instance { id: id.into(), graph, dist, metadata }
    }

    fn dist(&self) -> &DistanceMatrix {
        self.dist.as_ref().expect("distances computed for this strategy")
    }
}

/// Metadata of a tree without the all-pairs matrix: the diameter comes from
/// two weighted traversals and `c = 2` as for every undirected graph.
fn tree_metadata(tree: &Graph) -> GraphMetadata {
    let n = tree.vertex_count();
    let far = |s: usize| {
        let mut d = vec![u64::MAX; n];
        d[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &id in tree.out_arcs(x) {
                let a = tree.arc(id);
                if d[a.to] == u64::MAX {
                    d[a.to] = d[x] + a.weight;
                    stack.push(a.to);
                }
            }
        }
        (0..n).map(|v| (d[v], v)).max_by_key(|&(dv, v)| (dv, std::cmp::Reverse(v))).unwrap()
    };
    let (_, a) = far(0);
    let (diameter, _) = far(a);
    GraphMetadata {
        n,
        m: tree.edge_count(),
        max_degree: tree.max_degree(),
        diameter,
        cycle_constant: if n >= 2 { Some(Ratio::integer(2)) } else { None },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub graph_id: String,
    pub strategy: StrategyName,
    pub target: usize,
    pub trial: usize,
    pub seed: u64,
    pub query_count: usize,
    pub returned: Option<usize>,
    pub success: bool,
    /// Hard oracle-call cap (noisy strategies).
    pub budget: Option<u64>,
    pub bound: f64,
    pub bound_satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregates {
    pub runs: usize,
    pub max_queries: usize,
    pub mean_queries: f64,
    pub p50_queries: usize,
    pub p90_queries: usize,
    pub p99_queries: usize,
    pub success_fraction: f64,
    pub bound_violations: usize,
    /// Minimum success fraction for the statistical gate.
    pub success_threshold: f64,
    pub gate_passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub diameter: u64,
    pub cycle_constant: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub graph_id: String,
    pub strategy: StrategyName,
    pub correct_policy: String,
    pub lie_policy: String,
    pub p: Option<f64>,
    pub oracle_p: Option<f64>,
    pub delta: Option<f64>,
    pub master_seed: u64,
    pub metadata: ReportMetadata,
    pub aggregates: Aggregates,
    pub records: Vec<RunRecord>,
}

impl RunReport {
    /// Zero bound violations and the success gate met.
    pub fn passed(&self) -> bool {
        self.aggregates.bound_violations == 0 && self.aggregates.gate_passed
    }
}

/// Seed of one trial: SplitMix64 folding of `(master, FNV-1a(graph id), target, trial)`.
pub fn trial_seed(master: u64, graph_id: &str, target: usize, trial: usize) -> u64 {
    derive_seed(&[master, fnv1a(graph_id), target as u64, trial as u64])
}

fn needs_distances(s: StrategyName) -> bool {
    s != StrategyName::TreeEdge
}

/// Rejects strategy/graph combinations before any run starts.
pub fn check_compatible(config: &ExperimentConfig, inst: &Instance) -> Result<()> {
    let g = &inst.graph;
    let n = g.vertex_count();
    let fail = |msg: String| Err(Error::Config(format!("{} on {}: {msg}", config.strategy, inst.id)));
    match config.strategy {
        StrategyName::Deterministic if g.is_directed() => fail("needs an undirected graph".into()),
        StrategyName::TreeEdge if !g.is_tree() || !g.is_unweighted() => fail("needs an unweighted tree".into()),
        StrategyName::FollowEdge if g.is_directed() || !g.is_unweighted() => {
            fail("needs an unweighted undirected graph".into())
        }
        StrategyName::MajorityTree if !g.is_tree() => fail("needs a tree".into()),
        StrategyName::MajorityTree if config.delta.is_some_and(|d| d >= 1.0) => fail("needs delta < 1".into()),
        StrategyName::Noisy | StrategyName::NoisyAmortized if g.is_directed() => {
            fail("needs an undirected graph".into())
        }
        StrategyName::Noisy => {
            NoisyConfig::new(n, config.p.unwrap_or(0.75), config.delta.unwrap_or(0.0))
                .map(|_| ())
                .or_else(|e| fail(e.to_string()))
        }
        StrategyName::NoisyAmortized if n >= 2 && config.delta.unwrap_or(0.0) < 1.0 / (n as f64).log2() => {
            fail("needs delta ≥ 1/log₂ n".into())
        }
        _ => Ok(()),
    }
}

/// The query-count bound attached to a record; `budget` is the run's own cap
/// for the noisy strategies.
pub fn record_bound(config: &ExperimentConfig, md: &GraphMetadata, budget: Option<u64>) -> f64 {
    let n = md.n;
    match config.strategy {
        StrategyName::Deterministic | StrategyName::DistanceInformed => log2_floor(n) as f64,
        StrategyName::AlmostUndirected => match md.cycle_constant {
            Some(c) => almost_undirected_bound(n, c) as f64,
            None => 0.0,
        },
        StrategyName::TreeEdge => tree_edge_bound(n, md.max_degree),
        StrategyName::FollowEdge => md.diameter as f64,
        StrategyName::Noisy | StrategyName::NoisyAmortized => budget.unwrap_or(0) as f64,
        StrategyName::MajorityTree => {
            let reps = majority_repetitions(n, config.p.unwrap_or(0.75), config.delta.unwrap_or(0.1));
            (reps as u64 * log2_floor(n)) as f64
        }
    }
}

/// The guaranteed success probability of a configuration.
pub fn success_probability(config: &ExperimentConfig, n: usize) -> f64 {
    let delta = config.delta.unwrap_or(0.0);
    match config.strategy {
        StrategyName::Noisy | StrategyName::MajorityTree => 1.0 - delta,
        StrategyName::NoisyAmortized => amortized_success(n, delta),
        _ => 1.0,
    }
}

/// One run of the configured strategy against a simulated oracle.
pub fn run_one(config: &ExperimentConfig, inst: &Instance, target: usize, trial: usize) -> Result<(RunRecord, StrategyOutcome)> {
    let seed = trial_seed(config.seed, &inst.id, target, trial);
    let oracle_seed = derive_seed(&[seed, 1]);
    let p = config.p.unwrap_or(0.75);
    let delta = config.delta.unwrap_or(0.1);
    let truthful = OracleState::truthful(target, config.correct_policy, oracle_seed);
    let noisy = || {
        OracleState::new(target, config.correct_policy, config.lie_policy, config.oracle_p.unwrap_or(p), oracle_seed)
    };
    let g = &inst.graph;
    let mut budget = None;
    let mut outcome = match config.strategy {
        StrategyName::Deterministic => deterministic_search(g, inst.dist(), &mut SimOracle::truthful(g, inst.dist(), truthful))?,
        StrategyName::AlmostUndirected => {
            almost_undirected_search(g, inst.dist(), &mut SimOracle::truthful(g, inst.dist(), truthful))?
        }
        StrategyName::DistanceInformed => {
            distance_informed_search(g, inst.dist(), &mut SimOracle::distance_informed(g, inst.dist(), truthful))?
        }
        StrategyName::FollowEdge => follow_edge_baseline(g, inst.dist(), &mut SimOracle::truthful(g, inst.dist(), truthful))?,
        StrategyName::TreeEdge => tree_edge_search(g, &mut TreeEdgeOracle { state: truthful, tree: g })?,
        StrategyName::MajorityTree => {
            majority_tree_baseline(g, inst.dist(), p, delta, &mut SimOracle::noisy(g, inst.dist(), noisy()?))?
        }
        StrategyName::Noisy => {
            let out = noisy_search(g, inst.dist(), p, delta, &mut SimOracle::noisy(g, inst.dist(), noisy()?))?;
            budget = Some(out.budget);
            out.outcome
        }
        StrategyName::NoisyAmortized => {
            let mut rng = rng_from(derive_seed(&[seed, 2]));
            let mut oracle = SimOracle::noisy(g, inst.dist(), noisy()?);
            let out = noisy_search_amortized(g, inst.dist(), p, delta, &mut oracle, &mut rng)?;
            budget = Some(out.budget);
            out.outcome
        }
    };
    let success = outcome.judge(target);
    let bound = record_bound(config, &inst.metadata, budget);
    let record = RunRecord {
        graph_id: inst.id.clone(),
        strategy: config.strategy,
        target,
        trial,
        seed,
        query_count: outcome.query_count,
        returned: outcome.returned,
        success,
        budget,
        bound,
        bound_satisfied: outcome.query_count as f64 <= bound + 1e-9,
    };
    Ok((record, outcome))
}

/// The targets a configuration runs against, in increasing order.
pub fn select_targets(config: &ExperimentConfig, graph_id: &str, n: usize) -> Vec<usize> {
    match config.targets {
        TargetSelection::Sample(count) if count < n => {
            let mut rng = rng_from(derive_seed(&[config.seed, fnv1a(graph_id), u64::MAX]));
            let all: Vec<usize> = (0..n).collect();
            let mut picked: Vec<usize> = all.choose_multiple(&mut rng, count).copied().collect();
            picked.sort_unstable();
            picked
        }
        _ => (0..n).collect(),
    }
}

/// Nearest-rank quantile of a sorted slice.
fn quantile(sorted: &[usize], q: f64) -> usize {
    if sorted.is_empty() {
        return 0;
    }
    let rank = (q * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

pub fn aggregate(records: &[RunRecord], success_prob: f64) -> Aggregates {
    let mut counts: Vec<usize> = records.iter().map(|r| r.query_count).collect();
    counts.sort_unstable();
    let runs = records.len();
    let successes = records.iter().filter(|r| r.success).count();
    let success_fraction = if runs == 0 { 1.0 } else { successes as f64 / runs as f64 };
    let threshold = if success_prob >= 1.0 { 1.0 } else { success_threshold(success_prob, runs) };
    Aggregates {
        runs,
        max_queries: counts.last().copied().unwrap_or(0),
        mean_queries: if runs == 0 { 0.0 } else { counts.iter().sum::<usize>() as f64 / runs as f64 },
        p50_queries: quantile(&counts, 0.5),
        p90_queries: quantile(&counts, 0.9),
        p99_queries: quantile(&counts, 0.99),
        success_fraction,
        bound_violations: records.iter().filter(|r| !r.bound_satisfied).count(),
        success_threshold: threshold,
        gate_passed: success_fraction >= threshold,
    }
}

/// Runs every (target, trial) pair of `config` on an already loaded instance.
pub fn run_on(config: &ExperimentConfig, inst: &Instance) -> Result<RunReport> {
    config.validate()?;
    check_compatible(config, inst)?;
    let targets = select_targets(config, &inst.id, inst.graph.vertex_count());
    let tasks: Vec<(usize, usize)> =
        targets.iter().flat_map(|&t| (0..config.trials).map(move |k| (t, k))).collect();
    let run = |&(t, k): &(usize, usize)| run_one(config, inst, t, k).map(|(r, _)| r);
    let mut records: Vec<RunRecord> = if config.parallel {
        tasks.par_iter().map(run).collect::<Result<_>>()?
    } else {
        tasks.iter().map(run).collect::<Result<_>>()?
    };
    records.sort_by_key(|r| (r.target, r.trial));
    let md = &inst.metadata;
    Ok(RunReport {
        graph_id: inst.id.clone(),
        strategy: config.strategy,
        correct_policy: config.correct_policy.to_string(),
        lie_policy: config.lie_policy.to_string(),
        p: config.p,
        oracle_p: config.oracle_p,
        delta: config.delta,
        master_seed: config.seed,
        metadata: ReportMetadata {
            n: md.n,
            m: md.m,
            max_degree: md.max_degree,
            diameter: md.diameter,
            cycle_constant: md.cycle_constant.map(|c| c.to_string()),
        },
        aggregates: aggregate(&records, success_probability(config, md.n)),
        records,
    })
}

/// Loads the configured graph and runs the experiment.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let graph = config.graph.load()?;
    let inst = Instance::new(config.graph.id(), graph, needs_distances(config.strategy));
    run_on(config, &inst)
}
