//! Reference computations shared by the integration tests. Nothing here calls
//! the library's shortest-path, reach or median code.

#![allow(dead_code)]

use graphsearch::oracle::{ArcRef, Mirror, QueryResponse, VertexOracle};
use graphsearch::{CandidateSet, Graph, Result, StrategyOutcome};

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for a in g.arcs() {
        d[a.from][a.to] = d[a.from][a.to].min(a.weight);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// `w ∈ Reach(from, arc)` by the defining equality.
pub fn in_reach(fw: &[Vec<u64>], g: &Graph, arc: usize, w: usize) -> bool {
    let a = g.arc(arc);
    fw[a.from][w] == a.weight + fw[a.to][w]
}

pub fn log2_floor(n: usize) -> usize {
    let mut k = 0;
    while (2usize << k) <= n {
        k += 1;
    }
    k
}

/// Every response an adversary may give to query `q` while the searcher's
/// candidates are `s`: `target` if `q ∈ s`, then each arc (and each distance,
/// in the distance-informed model) that keeps some candidate.
pub fn legal_responses(fw: &[Vec<u64>], g: &Graph, q: usize, s: &CandidateSet, with_distance: bool) -> Vec<QueryResponse> {
    let mut out = Vec::new();
    if s.contains(q) {
        out.push(QueryResponse::Target(q));
    }
    for &id in g.out_arcs(q) {
        let a = ArcRef { id, from: q, to: g.arc(id).to };
        let mut ells: Vec<u64> = s.iter().filter(|&w| in_reach(fw, g, id, w)).map(|w| fw[q][w]).collect();
        if ells.is_empty() {
            continue;
        }
        if with_distance {
            ells.sort_unstable();
            ells.dedup();
            out.extend(ells.into_iter().map(|l| QueryResponse::EdgeDist(a, l)));
        } else {
            out.push(QueryResponse::Edge(a));
        }
    }
    out
}

/// Answers from a fixed list of choice indices, recording how many legal
/// responses each query had.
struct Replay<'a> {
    g: &'a Graph,
    fw: &'a [Vec<u64>],
    with_distance: bool,
    choices: Vec<usize>,
    widths: Vec<usize>,
}

impl VertexOracle for Replay<'_> {
    fn answer(&mut self, q: usize, mirror: Mirror<'_>) -> Result<QueryResponse> {
        let s = match mirror {
            Mirror::Candidates(s) => s.clone(),
            Mirror::Weights(w) => w.support(),
        };
        let legal = legal_responses(self.fw, self.g, q, &s, self.with_distance);
        let i = self.choices.get(self.widths.len()).copied().unwrap_or(0);
        self.widths.push(legal.len());
        Ok(legal[i])
    }
}

/// Worst-case query count of a deterministic strategy over every sequence of
/// legal responses, found by replaying the strategy along each branch.
/// Also checks that every branch ends on its unique remaining candidate.
pub fn worst_case_all_responses(
    g: &Graph,
    fw: &[Vec<u64>],
    with_distance: bool,
    mut strategy: impl FnMut(&mut dyn VertexOracle) -> Result<StrategyOutcome>,
) -> usize {
    let mut choices: Vec<usize> = Vec::new();
    let mut worst = 0;
    loop {
        let mut oracle = Replay { g, fw, with_distance, choices: choices.clone(), widths: Vec::new() };
        let out = strategy(&mut oracle).expect("legal responses never violate the protocol");
        assert!(out.returned.is_some());
        worst = worst.max(out.query_count);
        let widths = oracle.widths;
        let mut full: Vec<usize> = (0..widths.len()).map(|j| choices.get(j).copied().unwrap_or(0)).collect();
        match (0..full.len()).rev().find(|&j| full[j] + 1 < widths[j]) {
            Some(j) => {
                full.truncate(j + 1);
                full[j] += 1;
                choices = full;
            }
            None => return worst,
        }
    }
}
