//! The answering side of the search game.
//!
//! Simulated oracles hold the hidden target and answer vertex or edge
//! queries. Adversarial policies see the searcher's state only through a
//! [`Mirror`] that the searcher passes along with each query.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::CandidateSet;
use crate::error::{usage, Error, Result};
use crate::graph::{arc_reaches, Arc, DistanceMatrix, Graph};
use crate::median::WeightVector;
use crate::rng::stream_rng;

/// How a truthful answer is chosen when several arcs are correct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectPolicy {
    /// Smallest arc index.
    MinEdgeId,
    /// The correct arc keeping the most of the mirrored candidate set alive.
    AdversarialMaxSurvivor,
    /// Uniform among correct arcs, from the oracle's own stream.
    SeededRandom,
}

/// How a noisy oracle lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiePolicy {
    /// Uniform over `Target(q)` and every arc out of `q`.
    UniformResponse,
    /// The response that, after the searcher's multiplicative update, maximizes
    /// the weight of non-targets relative to the target.
    AdversarialMirrored,
}

macro_rules! kebab_names {
    ($ty:ty { $($variant:ident => $name:literal),* $(,)? }) => {
        impl $ty {
            pub const NAMES: &'static [&'static str] = &[$($name),*];
            pub fn name(self) -> &'static str {
                match self { $(Self::$variant => $name),* }
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(Self::$variant),)*
                    other => Err(usage(format!(
                        "unknown {} `{other}` (expected one of {:?})",
                        stringify!($ty), Self::NAMES
                    ))),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

kebab_names!(CorrectPolicy {
    MinEdgeId => "min-edge-id",
    AdversarialMaxSurvivor => "adversarial-max-survivor",
    SeededRandom => "seeded-random",
});

kebab_names!(LiePolicy {
    UniformResponse => "uniform-response",
    AdversarialMirrored => "adversarial-mirrored",
});

/// Hidden target plus answering policy. Each answer consumes one index of the
/// oracle's RNG stream `(rng_seed, query_index)`.
#[derive(Clone, Debug)]
pub struct OracleState {
    pub target: usize,
    pub correct_policy: CorrectPolicy,
    pub lie_policy: LiePolicy,
    pub p: f64,
    pub rng_seed: u64,
    query_index: u64,
    truth_log: Vec<bool>,
}

impl OracleState {
    pub fn new(
        target: usize,
        correct_policy: CorrectPolicy,
        lie_policy: LiePolicy,
        p: f64,
        rng_seed: u64,
    ) -> Result<Self> {
        if !(p > 0.5 && p <= 1.0) {
            return Err(usage(format!("oracle p = {p} must lie in (1/2, 1]")));
        }
        Ok(OracleState {
            target,
            correct_policy,
            lie_policy,
            p,
            rng_seed,
            query_index: 0,
            truth_log: Vec::new(),
        })
    }

    pub fn truthful(target: usize, correct_policy: CorrectPolicy, rng_seed: u64) -> Self {
        Self::new(target, correct_policy, LiePolicy::UniformResponse, 1.0, rng_seed)
            .expect("p = 1 is valid")
    }

    pub fn queries_answered(&self) -> u64 {
        self.query_index
    }

    /// For noisy answers: `true` where the coin chose a truthful answer.
    pub fn truth_log(&self) -> &[bool] {
        &self.truth_log
    }

    fn next_rng(&mut self) -> ChaCha8Rng {
        let rng = stream_rng(self.rng_seed, self.query_index);
        self.query_index += 1;
        rng
    }

    fn check_target(&self, n: usize) -> Result<()> {
        if self.target < n {
            Ok(())
        } else {
            Err(usage(format!("target {} out of range", self.target)))
        }
    }
}

/// An arc as reported in a response: its index in the graph and its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArcRef {
    pub id: usize,
    pub from: usize,
    pub to: usize,
}

impl ArcRef {
    pub fn of(graph: &Graph, id: usize) -> Self {
        let a = graph.arc(id);
        ArcRef { id, from: a.from, to: a.to }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryResponse {
    /// The queried vertex is the target.
    Target(usize),
    /// An arc out of the queried vertex on a shortest path to the target.
    Edge(ArcRef),
    /// As `Edge`, plus the distance from the queried vertex to the target.
    EdgeDist(ArcRef, u64),
    /// Tree edge query: the endpoint whose side holds the target.
    Side(usize),
}

impl QueryResponse {
    /// Position in the fixed response order: `Target` first, then arcs by index.
    pub fn ordinal(&self) -> usize {
        match self {
            QueryResponse::Target(_) => 0,
            QueryResponse::Edge(a) | QueryResponse::EdgeDist(a, _) => a.id + 1,
            QueryResponse::Side(v) => *v,
        }
    }
}

/// Textual form, shared by transcripts and the interactive prompt:
/// `target`, `edge <u> <v>`, `edge <u> <v> dist <ℓ>`, `side <u>`.
impl fmt::Display for QueryResponse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryResponse::Target(_) => write!(f, "target"),
            QueryResponse::Edge(a) => write!(f, "edge {} {}", a.from, a.to),
            QueryResponse::EdgeDist(a, l) => write!(f, "edge {} {} dist {l}", a.from, a.to),
            QueryResponse::Side(v) => write!(f, "side {v}"),
        }
    }
}

/// A response as typed, before it is resolved against a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResponseText {
    Target,
    Edge(usize, usize),
    EdgeDist(usize, usize, u64),
    Side(usize),
}

impl FromStr for ResponseText {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| w.parse::<u64>().map_err(|_| usage(format!("`{w}` is not a number")));
        match words.as_slice() {
            ["target"] => Ok(ResponseText::Target),
            ["edge", u, v] => Ok(ResponseText::Edge(num(u)? as usize, num(v)? as usize)),
            ["edge", u, v, "dist", l] => Ok(ResponseText::EdgeDist(num(u)? as usize, num(v)? as usize, num(l)?)),
            ["side", u] => Ok(ResponseText::Side(num(u)? as usize)),
            _ => Err(usage(format!(
                "cannot parse `{s}`; expected `target`, `edge <u> <v>`, `edge <u> <v> dist <l>` or `side <u>`"
            ))),
        }
    }
}

/// The searcher state an adversarial oracle may inspect.
#[derive(Clone, Copy, Debug)]
pub enum Mirror<'a> {
    Candidates(&'a CandidateSet),
    Weights(&'a WeightVector),
}

impl Mirror<'_> {
    fn candidates(&self) -> CandidateSet {
        match self {
            Mirror::Candidates(s) => (*s).clone(),
            Mirror::Weights(w) => w.support(),
        }
    }

    fn weights(&self) -> WeightVector {
        match self {
            Mirror::Candidates(s) => WeightVector::uniform_on(s),
            Mirror::Weights(w) => (*w).clone(),
        }
    }
}

fn correct_arcs(graph: &Graph, dist: &DistanceMatrix, q: usize, t: usize) -> Vec<usize> {
    graph
        .out_arcs(q)
        .iter()
        .copied()
        .filter(|&id| arc_reaches(dist, graph.arc(id), t))
        .collect()
}

fn survivors(dist: &DistanceMatrix, a: Arc, mirror: &CandidateSet, ell: Option<u64>) -> usize {
    mirror
        .iter()
        .filter(|&w| arc_reaches(dist, a, w) && ell.is_none_or(|l| dist.get(a.from, w) == l))
        .count()
}

fn pick_correct(
    policy: CorrectPolicy,
    rng: &mut ChaCha8Rng,
    graph: &Graph,
    dist: &DistanceMatrix,
    correct: &[usize],
    mirror: &CandidateSet,
    ell: Option<u64>,
) -> usize {
    assert!(!correct.is_empty(), "strong connectivity guarantees a correct arc");
    match policy {
        CorrectPolicy::MinEdgeId => correct[0],
        CorrectPolicy::SeededRandom => correct[rng.gen_range(0..correct.len())],
        CorrectPolicy::AdversarialMaxSurvivor => {
            let mut best = correct[0];
            let mut best_count = survivors(dist, graph.arc(best), mirror, ell);
            for &id in &correct[1..] {
                let c = survivors(dist, graph.arc(id), mirror, ell);
                if c > best_count {
                    best = id;
                    best_count = c;
                }
            }
            best
        }
    }
}

fn truthful_with(
    state: &OracleState,
    rng: &mut ChaCha8Rng,
    graph: &Graph,
    dist: &DistanceMatrix,
    q: usize,
    mirror: &CandidateSet,
) -> QueryResponse {
    let t = state.target;
    if q == t {
        return QueryResponse::Target(q);
    }
    let correct = correct_arcs(graph, dist, q, t);
    let id = pick_correct(state.correct_policy, rng, graph, dist, &correct, mirror, None);
    QueryResponse::Edge(ArcRef::of(graph, id))
}

/// Always-correct answer to a vertex query.
pub fn answer_truthful(
    state: &mut OracleState,
    graph: &Graph,
    dist: &DistanceMatrix,
    q: usize,
    mirror: &CandidateSet,
) -> Result<QueryResponse> {
    state.check_target(graph.vertex_count())?;
    check_query(graph, q)?;
    let mut rng = state.next_rng();
    Ok(truthful_with(state, &mut rng, graph, dist, q, mirror))
}

fn check_query(graph: &Graph, q: usize) -> Result<()> {
    if q < graph.vertex_count() {
        Ok(())
    } else {
        Err(usage(format!("query vertex {q} out of range")))
    }
}

/// Vertices consistent with `response` to a query of `q` (the multiplicative
/// weights update set): `{q}` for `Target`, `Reach(q, e)` for `Edge`.
pub fn consistent_set(dist: &DistanceMatrix, graph: &Graph, response: &QueryResponse) -> CandidateSet {
    let n = graph.vertex_count();
    match *response {
        QueryResponse::Target(q) => CandidateSet::singleton(n, q),
        QueryResponse::Edge(a) => crate::graph::reach_of(dist, graph.arc(a.id)),
        QueryResponse::EdgeDist(a, l) => crate::graph::reach_dist_of(dist, graph.arc(a.id), l),
        QueryResponse::Side(_) => panic!("side responses belong to edge queries"),
    }
}

fn adversarial_lie(
    state: &OracleState,
    graph: &Graph,
    dist: &DistanceMatrix,
    q: usize,
    weights: &WeightVector,
) -> QueryResponse {
    let t = state.target;
    let p = state.p;
    let mu = weights.as_slice();
    // score = (updated weight of V∖{t}) / (updated weight of t), compared as fractions
    let score = |consistent: &dyn Fn(usize) -> bool| -> (f64, f64) {
        let mut others = 0.0;
        let mut target = 0.0;
        for (v, &w) in mu.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let f = if consistent(v) { p } else { 1.0 - p };
            if v == t {
                target = w * f;
            } else {
                others += w * f;
            }
        }
        (others, target)
    };
    let mut best = QueryResponse::Target(q);
    let mut best_score = score(&|v| v == q);
    for &id in graph.out_arcs(q) {
        let a = graph.arc(id);
        let s = score(&|v| arc_reaches(dist, a, v));
        // s.0 / s.1 > best.0 / best.1
        if s.0 * best_score.1 > best_score.0 * s.1 {
            best = QueryResponse::Edge(ArcRef::of(graph, id));
            best_score = s;
        }
    }
    best
}

/// Truthful with probability `p`, otherwise a lie chosen by `lie_policy`.
/// A lie may coincide with a correct answer.
pub fn answer_noisy(
    state: &mut OracleState,
    graph: &Graph,
    dist: &DistanceMatrix,
    q: usize,
    mirror_weights: &WeightVector,
) -> Result<QueryResponse> {
    state.check_target(graph.vertex_count())?;
    check_query(graph, q)?;
    let mut rng = state.next_rng();
    let truthful = rng.gen::<f64>() < state.p;
    state.truth_log.push(truthful);
    if truthful {
        let mirror = mirror_weights.support();
        return Ok(truthful_with(state, &mut rng, graph, dist, q, &mirror));
    }
    Ok(match state.lie_policy {
        LiePolicy::UniformResponse => {
            let arcs = graph.out_arcs(q);
            match rng.gen_range(0..=arcs.len()) {
                0 => QueryResponse::Target(q),
                i => QueryResponse::Edge(ArcRef::of(graph, arcs[i - 1])),
            }
        }
        LiePolicy::AdversarialMirrored => adversarial_lie(state, graph, dist, q, mirror_weights),
    })
}

/// Noise-free answer revealing `d(q, t)` along with a shortest-path arc.
pub fn answer_distance_informed(
    state: &mut OracleState,
    graph: &Graph,
    dist: &DistanceMatrix,
    q: usize,
    mirror: &CandidateSet,
) -> Result<QueryResponse> {
    state.check_target(graph.vertex_count())?;
    check_query(graph, q)?;
    let mut rng = state.next_rng();
    let t = state.target;
    if q == t {
        return Ok(QueryResponse::Target(q));
    }
    let ell = dist.get(q, t);
    let correct = correct_arcs(graph, dist, q, t);
    let id = pick_correct(state.correct_policy, &mut rng, graph, dist, &correct, mirror, Some(ell));
    Ok(QueryResponse::EdgeDist(ArcRef::of(graph, id), ell))
}

/// Which side of tree edge `{u, v}` holds the target.
pub fn answer_edge_query(state: &mut OracleState, tree: &Graph, u: usize, v: usize) -> Result<QueryResponse> {
    if !tree.is_tree() {
        return Err(usage("edge queries require a tree"));
    }
    state.check_target(tree.vertex_count())?;
    if tree.find_arc(u, v).is_none() {
        return Err(usage(format!("{{{u},{v}}} is not an edge of the tree")));
    }
    state.query_index += 1;
    Ok(QueryResponse::Side(side_of(tree, u, v, state.target)))
}

/// The endpoint of `{u, v}` lying in the same component of `tree − {u, v}` as `t`.
pub(crate) fn side_of(tree: &Graph, u: usize, v: usize, t: usize) -> usize {
    // walk from t towards the root of the component; the tree path from t to u
    // either passes through v (t on v's side) or not
    let n = tree.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![t];
    seen[t] = true;
    while let Some(x) = stack.pop() {
        if x == u {
            return u;
        }
        if x == v {
            return v;
        }
        for y in tree.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    unreachable!("tree is connected")
}

/// Answers vertex queries for a search strategy.
pub trait VertexOracle {
    fn answer(&mut self, q: usize, mirror: Mirror<'_>) -> Result<QueryResponse>;
}

/// Answers tree edge queries for a search strategy.
pub trait EdgeOracle {
    fn answer_edge(&mut self, u: usize, v: usize) -> Result<QueryResponse>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Truthful,
    Noisy,
    DistanceInformed,
}

/// A simulated oracle bound to one graph.
pub struct SimOracle<'g> {
    pub state: OracleState,
    pub graph: &'g Graph,
    pub dist: &'g DistanceMatrix,
    pub mode: OracleMode,
}

impl<'g> SimOracle<'g> {
    pub fn truthful(graph: &'g Graph, dist: &'g DistanceMatrix, state: OracleState) -> Self {
        SimOracle { state, graph, dist, mode: OracleMode::Truthful }
    }

    pub fn noisy(graph: &'g Graph, dist: &'g DistanceMatrix, state: OracleState) -> Self {
        SimOracle { state, graph, dist, mode: OracleMode::Noisy }
    }

    pub fn distance_informed(graph: &'g Graph, dist: &'g DistanceMatrix, state: OracleState) -> Self {
        SimOracle { state, graph, dist, mode: OracleMode::DistanceInformed }
    }
}

impl VertexOracle for SimOracle<'_> {
    fn answer(&mut self, q: usize, mirror: Mirror<'_>) -> Result<QueryResponse> {
        match self.mode {
            OracleMode::Truthful => {
                answer_truthful(&mut self.state, self.graph, self.dist, q, &mirror.candidates())
            }
            OracleMode::Noisy => {
                let w = mirror.weights();
                answer_noisy(&mut self.state, self.graph, self.dist, q, &w)
            }
            OracleMode::DistanceInformed => {
                answer_distance_informed(&mut self.state, self.graph, self.dist, q, &mirror.candidates())
            }
        }
    }
}

/// Simulated edge-query oracle on a tree.
pub struct TreeEdgeOracle<'g> {
    pub state: OracleState,
    pub tree: &'g Graph,
}

impl EdgeOracle for TreeEdgeOracle<'_> {
    fn answer_edge(&mut self, u: usize, v: usize) -> Result<QueryResponse> {
        answer_edge_query(&mut self.state, self.tree, u, v)
    }
}
