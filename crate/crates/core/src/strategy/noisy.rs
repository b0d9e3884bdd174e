//! Noisy search: two rounds of multiplicative weights followed by a
//! repeated-query confirmation of the surviving marked vertices.

use rand::Rng;
use serde::Serialize;

use crate::bitset::CandidateSet;
use crate::error::{usage, Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::median::{argmin_with_slack, WeightVector};
use crate::oracle::{consistent_set, Mirror, QueryResponse, VertexOracle};

use super::{Potential, Query, StrategyOutcome, TranscriptEntry};

/// Binary entropy `H(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }
}

/// Parameters of the noisy search for one `(n, p, δ)`.
///
/// `K₁`, `K₂` and the repetition count are rounded up. `λ₁` is clamped to half
/// the admissible range `C(p) / log₂(p/(1−p))` so the multiplicative-weights
/// precondition holds at small `n` as well.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoisyConfig {
    pub n: usize,
    pub p: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub entropy: f64,
    pub capacity: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub k1: u64,
}

impl NoisyConfig {
    pub fn new(n: usize, p: f64, delta: f64) -> Result<Self> {
        if !(p > 0.5 && p < 1.0) {
            return Err(usage(format!("noisy search needs 1/2 < p < 1, got {p}")));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(usage(format!("noisy search needs 0 < δ ≤ 1, got {delta}")));
        }
        if n >= 2 && delta > 1.0 / (n as f64).log2() + 1e-12 {
            return Err(usage(format!(
                "δ = {delta} exceeds 1/log₂ n = {}; use noisy_search_amortized",
                1.0 / (n as f64).log2()
            )));
        }
        let delta_prime = delta / 3.0;
        let entropy = binary_entropy(p);
        let capacity = 1.0 - entropy;
        let log_odds = (p / (1.0 - p)).log2();
        let lambda2 = capacity / (2.0 * log_odds);
        let loglog = if n >= 2 { (n as f64).log2().log2() } else { f64::NEG_INFINITY };
        let lambda1 = (1.0 / (1.0 / delta_prime).max(loglog.max(1.0))).sqrt().min(lambda2);
        let k1 = Self::rounds(n, capacity, log_odds, lambda1, delta_prime);
        Ok(NoisyConfig {
            n,
            p,
            delta,
            delta_prime,
            entropy,
            capacity,
            lambda1,
            lambda2,
            k1,
        })
    }

    fn rounds(size: usize, capacity: f64, log_odds: f64, lambda: f64, delta_prime: f64) -> u64 {
        let info = if size >= 1 { (size as f64).log2() } else { 0.0 } / (capacity - lambda * log_odds);
        let tail = (1.0 / delta_prime).ln() / (2.0 * lambda * lambda);
        info.max(tail).ceil() as u64
    }

    pub fn log_odds(&self) -> f64 {
        (self.p / (1.0 - self.p)).log2()
    }

    /// `K₂` for a first-round marked set of the given size.
    pub fn k2(&self, s1_len: usize) -> u64 {
        Self::rounds(s1_len, self.capacity, self.log_odds(), self.lambda2, self.delta_prime)
    }

    /// Confirmation queries per surviving vertex: `⌈2·log₂(|S₂|/δ′) / (2p − 1)²⌉`.
    pub fn repetitions(&self, s2_len: usize) -> u64 {
        if s2_len == 0 {
            return 0;
        }
        (2.0 * (s2_len as f64 / self.delta_prime).log2() / (2.0 * self.p - 1.0).powi(2)).ceil() as u64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiWeightsResult {
    /// Marked vertices in marking order.
    pub marked: Vec<usize>,
    /// Iterations that marked or queried (`queries + marked.len()`).
    pub iterations: usize,
    /// Iterations skipped because every weight had already been zeroed.
    pub idle_iterations: usize,
    pub queries: usize,
    pub final_weights: WeightVector,
    /// `log₂` of the true total weight: initial value, then after each iteration.
    pub log2_trace: Vec<f64>,
    pub transcript: Vec<TranscriptEntry>,
}

impl MultiWeightsResult {
    /// Every non-idle iteration at least halves the total weight
    /// (up to the half-mass comparison slack).
    pub fn halves_every_iteration(&self) -> bool {
        let limit = (0.5 + crate::median::WEIGHT_SLACK).log2();
        self.log2_trace.windows(2).all(|w| {
            if w[0] == f64::NEG_INFINITY {
                w[1] == f64::NEG_INFINITY
            } else {
                w[1] - w[0] <= limit
            }
        })
    }
}

/// Maintains `Φ_μ(u)` for every `u` under the two weight updates of the
/// multiplicative-weights loop.
///
/// On general graphs each update touches only the smaller side of the split,
/// with a full recomputation every `REFRESH` updates. On trees every value is
/// recomputed after each update in `O(n)` by rerooting.
struct PotentialTracker {
    n: usize,
    /// `to[v * n + u] = d(u, v)`; empty in tree mode.
    to: Vec<f64>,
    tree: Option<TreeLayout>,
    phi: Vec<f64>,
    updates: usize,
}

const REFRESH: usize = 32;

/// A tree rooted at vertex 0: vertices in BFS order, parents and parent-edge weights.
struct TreeLayout {
    order: Vec<usize>,
    parent: Vec<usize>,
    up: Vec<f64>,
}

impl TreeLayout {
    fn new(tree: &Graph) -> Self {
        let n = tree.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut up = vec![0.0; n];
        let mut order = Vec::with_capacity(n);
        parent[0] = 0;
        order.push(0);
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &id in tree.out_arcs(x) {
                let a = tree.arc(id);
                if parent[a.to] == usize::MAX {
                    parent[a.to] = x;
                    up[a.to] = a.weight as f64;
                    order.push(a.to);
                }
            }
        }
        TreeLayout { order, parent, up }
    }

    fn potentials(&self, mu: &[f64], phi: &mut [f64]) {
        let mut sub = mu.to_vec();
        let mut depth = vec![0.0; mu.len()];
        for &x in &self.order[1..] {
            depth[x] = depth[self.parent[x]] + self.up[x];
        }
        for &x in self.order[1..].iter().rev() {
            sub[self.parent[x]] += sub[x];
        }
        let total = sub[0];
        phi[0] = mu.iter().zip(&depth).map(|(m, d)| m * d).sum();
        for &x in &self.order[1..] {
            phi[x] = phi[self.parent[x]] + self.up[x] * (total - 2.0 * sub[x]);
        }
    }
}

impl PotentialTracker {
    fn new(graph: &Graph, dist: &DistanceMatrix, mu: &WeightVector) -> Self {
        let n = dist.vertex_count();
        let (to, tree) = if graph.is_tree() {
            (Vec::new(), Some(TreeLayout::new(graph)))
        } else {
            let mut to = vec![0.0; n * n];
            for u in 0..n {
                for (v, &d) in dist.row(u).iter().enumerate() {
                    to[v * n + u] = d as f64;
                }
            }
            (to, None)
        };
        let mut t = PotentialTracker { n, to, tree, phi: vec![0.0; n], updates: 0 };
        t.recompute(mu);
        t
    }

    fn column(&self, v: usize) -> &[f64] {
        &self.to[v * self.n..(v + 1) * self.n]
    }

    fn recompute(&mut self, mu: &WeightVector) {
        if let Some(tree) = &self.tree {
            tree.potentials(mu.as_slice(), &mut self.phi);
            return;
        }
        let mut phi = vec![0.0; self.n];
        for (v, &w) in mu.as_slice().iter().enumerate() {
            if w > 0.0 {
                axpy(&mut phi, w, self.column(v));
            }
        }
        self.phi = phi;
    }

    fn argmin(&self) -> usize {
        argmin_with_slack(&self.phi)
    }

    fn value(&self, u: usize) -> f64 {
        self.phi[u]
    }

    fn tick(&mut self, mu_after: &WeightVector) {
        self.updates += 1;
        if self.tree.is_some() || self.updates % REFRESH == 0 {
            self.recompute(mu_after);
        }
    }

    /// Call before zeroing `mu[q]`.
    fn before_zero(&mut self, mu: &WeightVector, q: usize) {
        if self.tree.is_some() {
            return;
        }
        let w = mu.get(q);
        let rest = 1.0 - w;
        if rest <= 0.0 {
            self.phi.iter_mut().for_each(|x| *x = 0.0);
            return;
        }
        let col = &self.to[q * self.n..(q + 1) * self.n];
        for (x, &d) in self.phi.iter_mut().zip(col) {
            *x = (*x - w * d) / rest;
        }
    }

    /// Call before `mu.reweight(consistent, p)`.
    fn before_reweight(&mut self, mu: &WeightVector, consistent: &CandidateSet, p: f64) {
        if self.tree.is_some() {
            return;
        }
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        let mut inside_mass = 0.0;
        for (v, &w) in mu.as_slice().iter().enumerate() {
            if w > 0.0 {
                if consistent.contains(v) {
                    inside.push(v);
                    inside_mass += w;
                } else {
                    outside.push(v);
                }
            }
        }
        let total = (1.0 - p) + (2.0 * p - 1.0) * inside_mass;
        let mut acc = vec![0.0; self.n];
        // unnormalized new Φ = (1−p)Φ + (2p−1)Φ_in = pΦ − (2p−1)Φ_out
        let (base, sign, side) = if inside.len() <= outside.len() {
            (1.0 - p, 1.0, &inside)
        } else {
            (p, -1.0, &outside)
        };
        for &v in side {
            axpy(&mut acc, mu.get(v), self.column(v));
        }
        let k = sign * (2.0 * p - 1.0);
        for (x, a) in self.phi.iter_mut().zip(&acc) {
            *x = (base * *x + k * a) / total;
        }
    }
}

#[inline]
fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn check_response(graph: &Graph, q: usize, response: &QueryResponse) -> Result<()> {
    match *response {
        QueryResponse::Target(x) if x == q => Ok(()),
        QueryResponse::Edge(a) if a.from == q && a.id < graph.arcs().len() && graph.arc(a.id).to == a.to => Ok(()),
        _ => Err(Error::Protocol(format!("`{response}` is not a legal answer to query {q}"))),
    }
}

/// Multiplicative weights over `s` for `k + 1` iterations. Each iteration either
/// marks the weighted median (when it holds at least half the weight, without
/// querying) or queries it and scales consistent vertices by `p`, the rest by
/// `1 − p`.
pub fn multiweights(
    graph: &Graph,
    dist: &DistanceMatrix,
    s: &CandidateSet,
    k: u64,
    p: f64,
    oracle: &mut dyn VertexOracle,
) -> Result<MultiWeightsResult> {
    if s.is_empty() {
        return Err(usage("multiweights needs a non-empty candidate set"));
    }
    if !(p > 0.5 && p < 1.0) {
        return Err(usage(format!("multiweights needs 1/2 < p < 1, got {p}")));
    }
    multiweights_staged(graph, dist, s, k, p, oracle, None, 0)
}

#[allow(clippy::too_many_arguments)]
fn multiweights_staged(
    graph: &Graph,
    dist: &DistanceMatrix,
    s: &CandidateSet,
    k: u64,
    p: f64,
    oracle: &mut dyn VertexOracle,
    stage: Option<usize>,
    step_offset: usize,
) -> Result<MultiWeightsResult> {
    let mut mu = WeightVector::uniform_on(s);
    let mut tracker = PotentialTracker::new(graph, dist, &mu);
    let mut marked = Vec::new();
    let mut queries = 0;
    let mut idle = 0;
    let mut log2_trace = vec![mu.log2_total()];
    let mut transcript = Vec::new();
    for _ in 0..=k {
        if !mu.has_support() {
            idle += 1;
            log2_trace.push(mu.log2_total());
            continue;
        }
        let q = tracker.argmin();
        let total: f64 = mu.as_slice().iter().sum();
        if mu.get(q) >= 0.5 * total {
            marked.push(q);
            tracker.before_zero(&mu, q);
            mu.zero(q);
        } else {
            let potential = Potential::Weighted(tracker.value(q));
            let before = mu.as_slice().iter().filter(|&&w| w > 0.0).count();
            let response = oracle.answer(q, Mirror::Weights(&mu))?;
            check_response(graph, q, &response)?;
            let consistent = consistent_set(dist, graph, &response);
            tracker.before_reweight(&mu, &consistent, p);
            mu.reweight(&consistent, p);
            queries += 1;
            transcript.push(TranscriptEntry {
                step: step_offset + transcript.len(),
                query: Query::Vertex(q),
                response,
                potential,
                candidates_before: before,
                candidates_after: mu.as_slice().iter().filter(|&&w| w > 0.0).count(),
                log2_total: Some(mu.log2_total()),
                phase: stage,
                separator: None,
            });
        }
        tracker.tick(&mu);
        log2_trace.push(mu.log2_total());
    }
    Ok(MultiWeightsResult {
        iterations: queries + marked.len(),
        idle_iterations: idle,
        queries,
        marked,
        final_weights: mu,
        log2_trace,
        transcript,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoisyOutcome {
    pub outcome: StrategyOutcome,
    pub config: NoisyConfig,
    /// `None` when the amortized wrapper took its zero-query branch.
    pub phase1: Option<MultiWeightsResult>,
    pub phase2: Option<MultiWeightsResult>,
    pub k2: u64,
    pub repetitions: u64,
    /// Hard cap on oracle calls: `(K₁+1) + (K₂+1) + |S₂|·r`.
    pub budget: u64,
    pub short_branch: bool,
}

impl NoisyOutcome {
    pub fn halves_every_iteration(&self) -> bool {
        self.phase1.iter().chain(&self.phase2).all(MultiWeightsResult::halves_every_iteration)
    }
}

/// Two multiplicative-weights rounds and a confirmation round. Succeeds with
/// probability at least `1 − δ` when `δ ≤ 1/log₂ n`; a run that confirms no
/// vertex returns `None` rather than guessing.
pub fn noisy_search(
    graph: &Graph,
    dist: &DistanceMatrix,
    p: f64,
    delta: f64,
    oracle: &mut dyn VertexOracle,
) -> Result<NoisyOutcome> {
    if graph.is_directed() {
        return Err(usage("noisy search needs an undirected graph"));
    }
    let n = graph.vertex_count();
    let config = NoisyConfig::new(n, p, delta)?;
    let all = CandidateSet::full(n);

    let phase1 = multiweights_staged(graph, dist, &all, config.k1, p, oracle, Some(1), 0)?;
    let s1 = CandidateSet::from_vertices(n, phase1.marked.iter().copied());
    let k2 = config.k2(s1.len());
    let mut transcript = phase1.transcript.clone();

    let phase2 = if s1.is_empty() {
        None
    } else {
        Some(multiweights_staged(graph, dist, &s1, k2, p, oracle, Some(2), transcript.len())?)
    };
    let s2: Vec<usize> = phase2.as_ref().map(|r| r.marked.clone()).unwrap_or_default();
    if let Some(r) = &phase2 {
        transcript.extend(r.transcript.iter().cloned());
    }
    let repetitions = config.repetitions(s2.len());
    let budget = (config.k1 + 1) + (k2 + 1) + s2.len() as u64 * repetitions;

    let s2_set = CandidateSet::from_vertices(n, s2.iter().copied());
    let uniform = WeightVector::uniform_on(&s2_set);
    let mut returned = None;
    'confirm: for &v in &s2 {
        let mut hits = 0u64;
        for _ in 0..repetitions {
            let response = oracle.answer(v, Mirror::Weights(&uniform))?;
            check_response(graph, v, &response)?;
            if response == QueryResponse::Target(v) {
                hits += 1;
            }
            transcript.push(TranscriptEntry {
                step: transcript.len(),
                query: Query::Vertex(v),
                response,
                potential: Potential::None,
                candidates_before: s2.len(),
                candidates_after: s2.len(),
                log2_total: None,
                phase: Some(3),
                separator: None,
            });
        }
        if 2 * hits >= repetitions {
            returned = Some(v);
            break 'confirm;
        }
    }
    let outcome = StrategyOutcome::new(returned, transcript);
    assert!(
        outcome.query_count as u64 <= budget,
        "noisy search used {} queries, budget {budget}",
        outcome.query_count
    );
    Ok(NoisyOutcome {
        outcome,
        config,
        phase1: Some(phase1),
        phase2,
        k2,
        repetitions,
        budget,
        short_branch: false,
    })
}

/// For `δ ≥ 1/log₂ n`: with probability `δ − 1/log₂ n` return vertex 0 without
/// querying, otherwise run [`noisy_search`] with `δ̂ = 1/log₂ n`.
pub fn noisy_search_amortized(
    graph: &Graph,
    dist: &DistanceMatrix,
    p: f64,
    delta: f64,
    oracle: &mut dyn VertexOracle,
    rng: &mut impl Rng,
) -> Result<NoisyOutcome> {
    let n = graph.vertex_count();
    if n < 2 {
        return noisy_search(graph, dist, p, delta, oracle);
    }
    let delta_hat = 1.0 / (n as f64).log2();
    if !(delta >= delta_hat && delta <= 1.0) {
        return Err(usage(format!("amortized search needs 1/log₂ n = {delta_hat} ≤ δ ≤ 1, got {delta}")));
    }
    let skip = delta - delta_hat;
    if rng.gen::<f64>() < skip {
        return Ok(NoisyOutcome {
            outcome: StrategyOutcome::new(Some(0), Vec::new()),
            config: NoisyConfig::new(n, p, delta_hat)?,
            phase1: None,
            phase2: None,
            k2: 0,
            repetitions: 0,
            budget: 0,
            short_branch: true,
        });
    }
    noisy_search(graph, dist, p, delta_hat, oracle)
}
