//! Edge queries on trees: repeatedly query the edge from a separator to its
//! heaviest neighbouring subtree.

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::graph::Graph;
use crate::oracle::{EdgeOracle, QueryResponse};

use super::{Potential, Query, StrategyOutcome, TranscriptEntry};

/// The current subtree `T′` as an alive-vertex mask over the input tree.
struct SubTree<'t> {
    tree: &'t Graph,
    alive: Vec<bool>,
    size: usize,
}

impl<'t> SubTree<'t> {
    fn new(tree: &'t Graph) -> Self {
        let n = tree.vertex_count();
        SubTree { tree, alive: vec![true; n], size: n }
    }

    fn root(&self) -> usize {
        self.alive.iter().position(|&a| a).expect("subtree is non-empty")
    }

    /// Subtree sizes and parents of `T′` rooted at its lowest vertex.
    fn rooted_sizes(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.tree.vertex_count();
        let root = self.root();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(self.size);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(x) = stack.pop() {
            order.push(x);
            for y in self.tree.neighbors(x) {
                if self.alive[y] && parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut sizes = vec![0; n];
        for &x in order.iter().rev() {
            sizes[x] += 1;
            if x != root {
                sizes[parent[x]] += sizes[x];
            }
        }
        (sizes, parent)
    }

    /// Components of `T′ − v` as `(neighbour, size)`.
    fn components(&self, v: usize, sizes: &[usize], parent: &[usize]) -> Vec<(usize, usize)> {
        self.tree
            .neighbors(v)
            .filter(|&y| self.alive[y])
            .map(|y| if parent[y] == v { (y, sizes[y]) } else { (y, self.size - sizes[v]) })
            .collect()
    }

    fn is_separator(&self, v: usize, sizes: &[usize], parent: &[usize]) -> bool {
        self.alive[v] && self.components(v, sizes, parent).iter().all(|&(_, s)| 2 * s <= self.size)
    }

    /// Vertices of the component of `T′ − v` containing `u`.
    fn side(&self, v: usize, u: usize) -> Vec<usize> {
        let mut seen = vec![false; self.alive.len()];
        seen[v] = true;
        seen[u] = true;
        let mut out = vec![u];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for y in self.tree.neighbors(x) {
                if self.alive[y] && !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    fn keep_only(&mut self, keep: &[usize]) {
        self.alive.iter_mut().for_each(|a| *a = false);
        for &x in keep {
            self.alive[x] = true;
        }
        self.size = keep.len();
    }

    fn remove(&mut self, drop: &[usize]) {
        for &x in drop {
            self.alive[x] = false;
        }
        self.size -= drop.len();
    }
}

/// Finds the target of an unweighted tree by edge queries.
///
/// The separator is kept while it stays valid for the shrinking subtree and
/// otherwise replaced by the lowest-id valid separator. Each transcript entry
/// records its separator and phase index (a phase is a maximal run of queries
/// sharing one separator).
pub fn tree_edge_search(tree: &Graph, oracle: &mut dyn EdgeOracle) -> Result<StrategyOutcome> {
    if !tree.is_tree() {
        return Err(usage("edge-query search needs a tree"));
    }
    if !tree.is_unweighted() {
        return Err(usage("edge-query search needs an unweighted tree"));
    }
    let mut t = SubTree::new(tree);
    let mut transcript = Vec::new();
    let mut separator: Option<usize> = None;
    let mut phase = 0;
    while t.size > 1 {
        let (sizes, parent) = t.rooted_sizes();
        let v = match separator {
            Some(v) if t.is_separator(v, &sizes, &parent) => v,
            old => {
                let v = (0..tree.vertex_count())
                    .find(|&v| t.is_separator(v, &sizes, &parent))
                    .expect("every tree has a separator");
                if old.is_some() {
                    phase += 1;
                }
                v
            }
        };
        separator = Some(v);
        // largest component; ties to the lowest neighbour id
        let (u, _) = t
            .components(v, &sizes, &parent)
            .into_iter()
            .min_by_key(|&(y, s)| (std::cmp::Reverse(s), y))
            .expect("separator of a subtree with ≥ 2 vertices has a neighbour");
        let before = t.size;
        let response = oracle.answer_edge(v, u)?;
        let t_u = t.side(v, u);
        match response {
            QueryResponse::Side(x) if x == u => t.keep_only(&t_u),
            QueryResponse::Side(x) if x == v => t.remove(&t_u),
            other => {
                return Err(Error::Protocol(format!("`{other}` is not a legal answer to edge query {{{v},{u}}}")));
            }
        }
        transcript.push(TranscriptEntry {
            step: transcript.len(),
            query: Query::Edge(v, u),
            response,
            potential: Potential::None,
            candidates_before: before,
            candidates_after: t.size,
            log2_total: None,
            phase: Some(phase),
            separator: Some(v),
        });
    }
    Ok(StrategyOutcome::new(Some(t.root()), transcript))
}

/// How a phase ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseEnd {
    /// The last query put the target on the far side; the separator left `T′`.
    SeparatorRemoved,
    /// The separator survived but is no longer a separator of `T′`.
    SeparatorInvalid,
    /// The phase reached a subtree of at most two vertices.
    Final,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseSummary {
    pub index: usize,
    pub separator: usize,
    pub queries: usize,
    pub size_start: usize,
    pub size_end: usize,
    pub end: PhaseEnd,
}

impl PhaseSummary {
    /// `|T′|` shrinks by at least `k + 1` (separator removed) or `(k + 2)/2`
    /// (separator invalidated) over a phase of `k` queries. Final phases are exempt.
    pub fn shrink_holds(&self) -> bool {
        let (s0, s1, k) = (self.size_start, self.size_end, self.queries);
        match self.end {
            PhaseEnd::SeparatorRemoved => s0 >= (k + 1) * s1,
            PhaseEnd::SeparatorInvalid => 2 * s0 >= (k + 2) * s1,
            PhaseEnd::Final => true,
        }
    }
}

/// Splits an edge-query transcript into phases.
pub fn phase_summaries(outcome: &StrategyOutcome) -> Vec<PhaseSummary> {
    let mut out = Vec::new();
    let entries = &outcome.transcript;
    let mut i = 0;
    while i < entries.len() {
        let phase = entries[i].phase;
        let mut j = i;
        while j + 1 < entries.len() && entries[j + 1].phase == phase {
            j += 1;
        }
        let run = &entries[i..=j];
        let separator = run[0].separator.unwrap_or(usize::MAX);
        let last = &run[run.len() - 1];
        let end = if run.iter().any(|e| e.candidates_before <= 2) {
            PhaseEnd::Final
        } else if matches!(last.response, QueryResponse::Side(x) if x != separator) {
            PhaseEnd::SeparatorRemoved
        } else {
            PhaseEnd::SeparatorInvalid
        };
        out.push(PhaseSummary {
            index: phase.unwrap_or(0),
            separator,
            queries: run.len(),
            size_start: run[0].candidates_before,
            size_end: last.candidates_after,
            end,
        });
        i = j + 1;
    }
    out
}
