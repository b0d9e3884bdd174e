//! Exact minimax solver for small instances.
//!
//! `OPT(S)` is the fewest queries that identify any target in `S` against an
//! adversary who may pick any response consistent with some remaining
//! candidate. States are bitmasks, so instances are capped at
//! [`MAX_SOLVER_VERTICES`] vertices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::CandidateSet;
use crate::error::{usage, Error, Result};
use crate::graph::{arc_reaches, reach_of, DistanceMatrix, Graph};
use crate::oracle::{side_of, ArcRef, QueryResponse};
use crate::strategy::Query;

pub const MAX_SOLVER_VERTICES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryModel {
    /// Vertex queries on an undirected graph.
    VertexQuery,
    /// Vertex queries on a strongly connected digraph.
    VertexQueryDirected,
    /// Vertex queries whose answers also reveal the distance to the target.
    DistanceInformed,
    /// Edge queries on an unweighted tree.
    EdgeQueryTree,
}

impl QueryModel {
    pub const NAMES: [&'static str; 4] = ["vertex", "vertex-directed", "distance-informed", "edge-tree"];

    pub fn name(self) -> &'static str {
        match self {
            QueryModel::VertexQuery => "vertex",
            QueryModel::VertexQueryDirected => "vertex-directed",
            QueryModel::DistanceInformed => "distance-informed",
            QueryModel::EdgeQueryTree => "edge-tree",
        }
    }

    /// The natural vertex-query model for a graph's orientation.
    pub fn vertex_for(graph: &Graph) -> Self {
        if graph.is_directed() {
            QueryModel::VertexQueryDirected
        } else {
            QueryModel::VertexQuery
        }
    }
}

impl std::str::FromStr for QueryModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(QueryModel::VertexQuery),
            "vertex-directed" => Ok(QueryModel::VertexQueryDirected),
            "distance-informed" => Ok(QueryModel::DistanceInformed),
            "edge-tree" => Ok(QueryModel::EdgeQueryTree),
            _ => Err(usage(format!("unknown query model `{s}` (expected one of {})", Self::NAMES.join(", ")))),
        }
    }
}

impl std::fmt::Display for QueryModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One query with every response it can draw and the candidates each keeps.
struct Move {
    query: Query,
    /// The queried vertex, which ends the game if it is the target.
    vertex: Option<usize>,
    responses: Vec<(QueryResponse, u32)>,
}

const UNKNOWN: u8 = u8::MAX;

/// Memoized `OPT` over candidate bitmasks.
pub struct OptTable {
    n: usize,
    model: QueryModel,
    moves: Vec<Move>,
    memo: Vec<u8>,
}

fn bits(s: &CandidateSet) -> u32 {
    s.iter().fold(0u32, |m, v| m | 1 << v)
}

fn build_moves(graph: &Graph, dist: &DistanceMatrix, model: QueryModel) -> Vec<Move> {
    let n = graph.vertex_count();
    match model {
        QueryModel::VertexQuery | QueryModel::VertexQueryDirected => (0..n)
            .map(|q| Move {
                query: Query::Vertex(q),
                vertex: Some(q),
                responses: graph
                    .out_arcs(q)
                    .iter()
                    .map(|&id| (QueryResponse::Edge(ArcRef::of(graph, id)), bits(&reach_of(dist, graph.arc(id)))))
                    .collect(),
            })
            .collect(),
        QueryModel::DistanceInformed => (0..n)
            .map(|q| {
                let mut responses = Vec::new();
                for &id in graph.out_arcs(q) {
                    let a = graph.arc(id);
                    let mut by_ell: Vec<(u64, u32)> = Vec::new();
                    for w in (0..n).filter(|&w| arc_reaches(dist, a, w)) {
                        let ell = dist.get(q, w);
                        match by_ell.iter_mut().find(|(l, _)| *l == ell) {
                            Some((_, m)) => *m |= 1 << w,
                            None => by_ell.push((ell, 1 << w)),
                        }
                    }
                    by_ell.sort_unstable();
                    responses.extend(
                        by_ell.into_iter().map(|(ell, m)| (QueryResponse::EdgeDist(ArcRef::of(graph, id), ell), m)),
                    );
                }
                Move { query: Query::Vertex(q), vertex: Some(q), responses }
            })
            .collect(),
        QueryModel::EdgeQueryTree => graph
            .edges()
            .iter()
            .map(|&(u, v, _)| {
                let side_u = (0..n).filter(|&t| side_of(graph, u, v, t) == u).fold(0u32, |m, t| m | 1 << t);
                let all = (1u32 << n) - 1;
                Move {
                    query: Query::Edge(u, v),
                    vertex: None,
                    responses: vec![(QueryResponse::Side(u), side_u), (QueryResponse::Side(v), all & !side_u)],
                }
            })
            .collect(),
    }
}

fn check_model(graph: &Graph, model: QueryModel) -> Result<()> {
    let n = graph.vertex_count();
    if n > MAX_SOLVER_VERTICES {
        return Err(Error::TooLarge(format!(
            "exact solver handles at most {MAX_SOLVER_VERTICES} vertices, got {n}"
        )));
    }
    match model {
        QueryModel::VertexQuery if graph.is_directed() => Err(usage("model `vertex` needs an undirected graph")),
        QueryModel::VertexQueryDirected if !graph.is_directed() => {
            Err(usage("model `vertex-directed` needs a directed graph"))
        }
        QueryModel::EdgeQueryTree if !graph.is_tree() => Err(usage("model `edge-tree` needs a tree")),
        _ => Ok(()),
    }
}

impl OptTable {
    pub fn new(graph: &Graph, dist: &DistanceMatrix, model: QueryModel) -> Result<Self> {
        check_model(graph, model)?;
        let n = graph.vertex_count();
        Ok(OptTable {
            n,
            model,
            moves: build_moves(graph, dist, model),
            memo: vec![UNKNOWN; 1 << n],
        })
    }

    pub fn model(&self) -> QueryModel {
        self.model
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `OPT(V)`.
    pub fn root(&mut self) -> usize {
        let all = ((1u64 << self.n) - 1) as u32;
        self.solve(all) as usize
    }

    /// `OPT(S)` for any candidate set over the same vertices.
    pub fn opt(&mut self, s: &CandidateSet) -> usize {
        assert_eq!(s.universe(), self.n, "candidate set over a different graph");
        self.solve(bits(s)) as usize
    }

    /// Number of candidate sets solved so far.
    pub fn solved_states(&self) -> usize {
        self.memo.iter().filter(|&&v| v != UNKNOWN).count()
    }

    /// `1 + max` over the non-empty responses, or `None` if some response
    /// leaves `s` unchanged (the query makes no progress).
    fn value_of(&mut self, s: u32, m: usize, cutoff: u8) -> Option<u8> {
        let mut worst = 0u8;
        for i in 0..self.moves[m].responses.len() {
            let sub = s & self.moves[m].responses[i].1;
            if sub == 0 {
                continue;
            }
            if sub == s {
                return None;
            }
            worst = worst.max(self.solve(sub));
            if worst + 1 >= cutoff {
                break;
            }
        }
        Some(worst + 1)
    }

    fn solve(&mut self, s: u32) -> u8 {
        if s.count_ones() <= 1 {
            return 0;
        }
        let cached = self.memo[s as usize];
        if cached != UNKNOWN {
            return cached;
        }
        let mut best = UNKNOWN;
        for m in 0..self.moves.len() {
            if let Some(v) = self.value_of(s, m, best) {
                best = best.min(v);
                if best == 1 {
                    break;
                }
            }
        }
        debug_assert!(best != UNKNOWN, "some query always makes progress");
        self.memo[s as usize] = best;
        best
    }

    /// One optimal decision tree, choosing the first optimal query in
    /// vertex-id (or edge-list) order at every node.
    pub fn strategy_tree(&mut self) -> StrategyTree {
        let all = ((1u64 << self.n) - 1) as u32;
        self.tree_for(all)
    }

    fn tree_for(&mut self, s: u32) -> StrategyTree {
        if s.count_ones() == 1 {
            return StrategyTree::Found(s.trailing_zeros() as usize);
        }
        let target = self.solve(s);
        let m = (0..self.moves.len())
            .find(|&m| self.value_of(s, m, UNKNOWN) == Some(target))
            .expect("an optimal query exists");
        let mut children = Vec::new();
        if let Some(q) = self.moves[m].vertex.filter(|&q| s >> q & 1 == 1) {
            children.push((QueryResponse::Target(q), StrategyTree::Found(q)));
        }
        for i in 0..self.moves[m].responses.len() {
            let (resp, mask) = self.moves[m].responses[i];
            let sub = s & mask;
            if sub != 0 {
                children.push((resp, self.tree_for(sub)));
            }
        }
        StrategyTree::Query { query: self.moves[m].query, children }
    }
}

/// Builds the table for `graph` under `model` and returns it with `OPT(V)`.
pub fn opt_queries(graph: &Graph, dist: &DistanceMatrix, model: QueryModel) -> Result<(usize, OptTable)> {
    let mut table = OptTable::new(graph, dist, model)?;
    let root = table.root();
    Ok((root, table))
}

/// An optimal decision tree from [`OptTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyTree {
    Found(usize),
    Query {
        query: Query,
        children: Vec<(QueryResponse, StrategyTree)>,
    },
}

impl StrategyTree {
    /// Queries on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            StrategyTree::Found(_) => 0,
            StrategyTree::Query { children, .. } => 1 + children.iter().map(|(_, c)| c.depth()).max().unwrap_or(0),
        }
    }

    /// Indented text, one node per line:
    ///
    /// ```text
    /// query 0
    ///   on target: found 0
    ///   on edge 0 1: query 2
    ///     on target: found 2
    ///     on edge 2 1: found 1
    ///     on edge 2 3: found 3
    /// ```
    ///
    /// Edge-query trees print `query-edge u v` and `on side u: ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_node(&mut out, 0, None);
        out
    }

    fn head(&self) -> String {
        match self {
            StrategyTree::Found(v) => format!("found {v}"),
            StrategyTree::Query { query: Query::Vertex(q), .. } => format!("query {q}"),
            StrategyTree::Query { query: Query::Edge(u, v), .. } => format!("query-edge {u} {v}"),
        }
    }

    fn write_node(&self, out: &mut String, depth: usize, label: Option<&QueryResponse>) {
        let indent = "  ".repeat(depth);
        match label {
            Some(r) => writeln!(out, "{indent}on {r}: {}", self.head()),
            None => writeln!(out, "{indent}{}", self.head()),
        }
        .expect("writing to a string");
        if let StrategyTree::Query { children, .. } = self {
            for (r, c) in children {
                c.write_node(out, depth + 1, Some(r));
            }
        }
    }
}

/// The optimal decision tree for `graph` under `model`.
pub fn opt_strategy_tree(graph: &Graph, dist: &DistanceMatrix, model: QueryModel) -> Result<StrategyTree> {
    Ok(OptTable::new(graph, dist, model)?.strategy_tree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::dijkstra_all_pairs;

    fn path(n: usize) -> Graph {
        Graph::undirected(n, (1..n).map(|i| (i - 1, i, 1)).collect()).unwrap()
    }

    fn star(n: usize) -> Graph {
        Graph::undirected(n, (1..n).map(|l| (0, l, 1)).collect()).unwrap()
    }

    fn opt(g: &Graph, model: QueryModel) -> usize {
        opt_queries(g, &dijkstra_all_pairs(g), model).unwrap().0
    }

    #[test]
    fn small_values() {
        assert_eq!(opt(&star(5), QueryModel::VertexQuery), 1);
        assert_eq!(opt(&path(2), QueryModel::VertexQuery), 1);
        assert_eq!(opt(&path(8), QueryModel::VertexQuery), 3);
        assert_eq!(opt(&path(1), QueryModel::VertexQuery), 0);
        // two leaves hang off the centre: one edge query cannot tell them apart
        assert_eq!(opt(&path(2), QueryModel::EdgeQueryTree), 1);
        assert_eq!(opt(&star(5), QueryModel::EdgeQueryTree), 4);
    }

    #[test]
    fn guards() {
        let big = path(21);
        let d = dijkstra_all_pairs(&big);
        assert!(matches!(opt_queries(&big, &d, QueryModel::VertexQuery), Err(Error::TooLarge(_))));
        let g = path(4);
        let d = dijkstra_all_pairs(&g);
        assert!(opt_queries(&g, &d, QueryModel::VertexQueryDirected).is_err());
        let cyc = Graph::undirected(3, vec![(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(opt_queries(&cyc, &dijkstra_all_pairs(&cyc), QueryModel::EdgeQueryTree).is_err());
    }

    #[test]
    fn trees_export() {
        let g = path(1);
        let t = opt_strategy_tree(&g, &dijkstra_all_pairs(&g), QueryModel::VertexQuery).unwrap();
        assert_eq!(t, StrategyTree::Found(0));
        assert_eq!(t.to_text(), "found 0\n");

        let g = star(5);
        let t = opt_strategy_tree(&g, &dijkstra_all_pairs(&g), QueryModel::VertexQuery).unwrap();
        match &t {
            StrategyTree::Query { query, children } => {
                assert_eq!(*query, Query::Vertex(0));
                assert_eq!(children.len(), 5);
                assert!(children.iter().all(|(_, c)| matches!(c, StrategyTree::Found(_))));
            }
            other => panic!("{other:?}"),
        }

        let g = path(4);
        let t = opt_strategy_tree(&g, &dijkstra_all_pairs(&g), QueryModel::VertexQuery).unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(
            t.to_text(),
            "query 0\n  on target: found 0\n  on edge 0 1: query 2\n    on target: found 2\n    on edge 2 1: found 1\n    on edge 2 3: found 3\n"
        );
    }

    #[test]
    fn directed_cycle_distance_informed_is_one() {
        for n in 2..=16 {
            let g = Graph::directed(n, (0..n).map(|i| (i, (i + 1) % n, 1)).collect()).unwrap();
            assert_eq!(opt(&g, QueryModel::DistanceInformed), 1);
        }
    }

    #[test]
    fn monotone_in_candidate_set() {
        let g = Graph::undirected(
            7,
            vec![(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 1), (4, 5, 3), (5, 6, 1), (6, 0, 1), (1, 4, 2)],
        )
        .unwrap();
        let mut table = OptTable::new(&g, &dijkstra_all_pairs(&g), QueryModel::VertexQuery).unwrap();
        for a in 0u32..128 {
            let sa = CandidateSet::from_vertices(7, (0..7).filter(|&v| a >> v & 1 == 1));
            let va = table.opt(&sa);
            assert_eq!(va == 0, sa.len() <= 1);
            for v in 0..7 {
                let mut sb = sa.clone();
                sb.insert(v);
                assert!(table.opt(&sb) >= va);
            }
        }
    }
}
