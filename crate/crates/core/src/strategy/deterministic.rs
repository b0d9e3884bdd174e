use std::collections::BTreeMap;

use crate::bitset::CandidateSet;
use crate::error::{usage, Error, Result};
use crate::graph::{reach_dist_of, reach_of, DistanceMatrix, Graph};
use crate::median::{dir_median_with_value, median_with_value};
use crate::oracle::{Mirror, QueryResponse, VertexOracle};

use super::{Potential, Query, StrategyOutcome, TranscriptEntry};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Selector {
    /// 1-median of `S`, updates by `Reach`.
    Median,
    /// Minimizer of the half-majority radius, updates by `ReachDist`.
    RadiusMedian,
}

/// Applies a noise-free response for query `q` to `s`.
fn narrow(
    graph: &Graph,
    dist: &DistanceMatrix,
    s: &CandidateSet,
    q: usize,
    response: &QueryResponse,
    with_distance: bool,
) -> Result<CandidateSet> {
    let next = match (*response, with_distance) {
        (QueryResponse::Target(x), _) if x == q => {
            if !s.contains(q) {
                return Err(Error::Protocol(format!("vertex {q} was already ruled out")));
            }
            return Ok(CandidateSet::singleton(s.universe(), q));
        }
        (QueryResponse::Edge(a), false) if a.from == q && a.id < graph.arcs().len() => {
            s.intersection(&reach_of(dist, graph.arc(a.id)))
        }
        (QueryResponse::EdgeDist(a, l), true) if a.from == q && a.id < graph.arcs().len() => {
            s.intersection(&reach_dist_of(dist, graph.arc(a.id), l))
        }
        _ => return Err(Error::Protocol(format!("response `{response}` is not a legal answer to query {q}"))),
    };
    if next.is_empty() {
        return Err(Error::Protocol(format!(
            "response `{response}` to query {q} excludes every remaining candidate"
        )));
    }
    Ok(next)
}

fn candidate_search(
    graph: &Graph,
    dist: &DistanceMatrix,
    oracle: &mut dyn VertexOracle,
    selector: Selector,
) -> Result<StrategyOutcome> {
    let n = graph.vertex_count();
    let mut s = CandidateSet::full(n);
    let mut transcript = Vec::new();
    while s.len() > 1 {
        let (q, potential) = match selector {
            Selector::Median => {
                let (q, phi) = median_with_value(dist, &s);
                (q, Potential::Sum(phi))
            }
            Selector::RadiusMedian => {
                let (q, phi) = dir_median_with_value(dist, &s);
                (q, Potential::Radius(phi))
            }
        };
        let response = oracle.answer(q, Mirror::Candidates(&s))?;
        let next = narrow(graph, dist, &s, q, &response, selector == Selector::RadiusMedian)?;
        transcript.push(TranscriptEntry {
            step: transcript.len(),
            query: Query::Vertex(q),
            response,
            potential,
            candidates_before: s.len(),
            candidates_after: next.len(),
            log2_total: None,
            phase: None,
            separator: None,
        });
        if let QueryResponse::Target(_) = response {
            return Ok(StrategyOutcome::new(Some(q), transcript));
        }
        s = next;
    }
    Ok(StrategyOutcome::new(s.first(), transcript))
}

/// Repeatedly queries a 1-median of the candidate set on an undirected graph.
/// Uses at most `⌊log₂ n⌋` queries against any truthful oracle.
pub fn deterministic_search(
    graph: &Graph,
    dist: &DistanceMatrix,
    oracle: &mut dyn VertexOracle,
) -> Result<StrategyOutcome> {
    if graph.is_directed() {
        return Err(usage("deterministic_search needs an undirected graph; use almost_undirected_search"));
    }
    candidate_search(graph, dist, oracle, Selector::Median)
}

/// The median search on a strongly connected digraph with directed distances.
/// If every arc lies on a cycle of weight at most `c·w(e)`, each query keeps at
/// most a `(c − 1)/c` fraction of the candidates.
pub fn almost_undirected_search(
    graph: &Graph,
    dist: &DistanceMatrix,
    oracle: &mut dyn VertexOracle,
) -> Result<StrategyOutcome> {
    candidate_search(graph, dist, oracle, Selector::Median)
}

/// Search for oracles that also reveal `d(q, t)`. At most `⌊log₂ n⌋` queries on
/// any strongly connected digraph.
pub fn distance_informed_search(
    graph: &Graph,
    dist: &DistanceMatrix,
    oracle: &mut dyn VertexOracle,
) -> Result<StrategyOutcome> {
    candidate_search(graph, dist, oracle, Selector::RadiusMedian)
}

/// Starts at vertex 0 and walks along every revealed edge, filtering the
/// candidate set as it goes.
pub fn follow_edge_baseline(
    graph: &Graph,
    dist: &DistanceMatrix,
    oracle: &mut dyn VertexOracle,
) -> Result<StrategyOutcome> {
    if graph.is_directed() || !graph.is_unweighted() {
        return Err(usage("follow_edge_baseline needs an unweighted undirected graph"));
    }
    let n = graph.vertex_count();
    let mut s = CandidateSet::full(n);
    let mut transcript = Vec::new();
    let mut q = 0;
    while s.len() > 1 {
        let response = oracle.answer(q, Mirror::Candidates(&s))?;
        let next = narrow(graph, dist, &s, q, &response, false)?;
        transcript.push(TranscriptEntry {
            step: transcript.len(),
            query: Query::Vertex(q),
            response,
            potential: Potential::None,
            candidates_before: s.len(),
            candidates_after: next.len(),
            log2_total: None,
            phase: None,
            separator: None,
        });
        match response {
            QueryResponse::Target(_) => return Ok(StrategyOutcome::new(Some(q), transcript)),
            QueryResponse::Edge(a) => q = a.to,
            _ => unreachable!("narrow accepts only target and edge responses"),
        }
        s = next;
    }
    Ok(StrategyOutcome::new(s.first(), transcript))
}

/// Repetitions per query for the majority-vote baseline:
/// `⌈2·ln(⌈log₂ n⌉ / δ) / (2p − 1)²⌉`.
pub fn majority_repetitions(n: usize, p: f64, delta: f64) -> usize {
    let depth = (n.max(2) as f64).log2().ceil().max(1.0);
    let reps = 2.0 * (depth / delta).ln() / (2.0 * p - 1.0).powi(2);
    (reps.ceil() as usize).max(1)
}

/// Simulates [`deterministic_search`] on a tree, replacing each query by a
/// block of repetitions and acting on the most frequent response (ties go to
/// the lowest response ordinal). An inconsistent majority ends the run with an
/// explicit failure.
pub fn majority_tree_baseline(
    tree: &Graph,
    dist: &DistanceMatrix,
    p: f64,
    delta: f64,
    oracle: &mut dyn VertexOracle,
) -> Result<StrategyOutcome> {
    if !tree.is_tree() {
        return Err(usage("the majority-vote baseline is only sound on trees"));
    }
    if !(p > 0.5 && p < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(usage(format!("need 1/2 < p < 1 and 0 < δ < 1, got p = {p}, δ = {delta}")));
    }
    let reps = majority_repetitions(tree.vertex_count(), p, delta);
    let mut s = CandidateSet::full(tree.vertex_count());
    let mut transcript: Vec<TranscriptEntry> = Vec::new();
    while s.len() > 1 {
        let (q, phi) = median_with_value(dist, &s);
        let mut votes: BTreeMap<usize, (usize, QueryResponse)> = BTreeMap::new();
        for _ in 0..reps {
            let response = oracle.answer(q, Mirror::Candidates(&s))?;
            votes.entry(response.ordinal()).or_insert((0, response)).0 += 1;
            transcript.push(TranscriptEntry {
                step: transcript.len(),
                query: Query::Vertex(q),
                response,
                potential: Potential::Sum(phi),
                candidates_before: s.len(),
                candidates_after: s.len(),
                log2_total: None,
                phase: None,
                separator: None,
            });
        }
        // BTreeMap iterates by ordinal, so the first maximum is the lowest ordinal
        let (_, majority) = votes
            .values()
            .copied()
            .fold((0, None), |best, (count, r)| if count > best.0 { (count, Some(r)) } else { best });
        let majority = majority.expect("at least one repetition");
        let next = match narrow(tree, dist, &s, q, &majority, false) {
            Ok(next) => next,
            Err(Error::Protocol(_)) => return Ok(StrategyOutcome::new(None, transcript)),
            Err(e) => return Err(e),
        };
        transcript.last_mut().expect("reps ≥ 1").candidates_after = next.len();
        if let QueryResponse::Target(_) = majority {
            return Ok(StrategyOutcome::new(Some(q), transcript));
        }
        s = next;
    }
    Ok(StrategyOutcome::new(s.first(), transcript))
}
