//! Positively integer-weighted graphs, exact all-pairs distances, and the
//! `Reach` / `ReachDist` sets that every search strategy is built on.
//!
//! Undirected graphs are stored as symmetric arc pairs so the directed and
//! undirected code paths coincide. Edge `i` of an undirected graph becomes
//! arcs `2i` (as listed) and `2i + 1` (reversed).

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::fmt;
use std::path::Path;

use crate::bitset::CandidateSet;
use crate::error::{usage, Error, Result};

/// Total weight budget; keeps every distance and every `w + d` sum inside `u64`.
pub const MAX_TOTAL_WEIGHT: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    n: usize,
    /// Edges exactly as supplied; written back verbatim by [`Graph::to_text`].
    edges: Vec<(usize, usize, u64)>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds and validates a graph. For undirected graphs each edge is listed once.
    pub fn new(directed: bool, n: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut arcs = Vec::with_capacity(if directed { edges.len() } else { 2 * edges.len() });
        let mut seen = HashSet::new();
        let mut total: u64 = 0;
        for &(u, v, w) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) references a vertex >= {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if w == 0 {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) has zero weight")));
            }
            total = total.saturating_add(w);
            if total >= MAX_TOTAL_WEIGHT {
                return Err(Error::InvalidGraph(
                    "total edge weight reaches 2^62; distances could overflow".into(),
                ));
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
            arcs.push(Arc { from: u, to: v, weight: w });
            if !directed {
                arcs.push(Arc { from: v, to: u, weight: w });
            }
        }
        let mut out = vec![Vec::new(); n];
        for (id, a) in arcs.iter().enumerate() {
            out[a.from].push(id);
        }
        let g = Graph { directed, n, edges, arcs, out };
        if !g.strongly_connected() {
            let what = if directed { "strongly connected" } else { "connected" };
            return Err(Error::InvalidGraph(format!("graph is not {what}")));
        }
        Ok(g)
    }

    pub fn undirected(n: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        Self::new(false, n, edges)
    }

    pub fn directed(n: usize, arcs: Vec<(usize, usize, u64)>) -> Result<Self> {
        Self::new(true, n, arcs)
    }

    fn strongly_connected(&self) -> bool {
        let mut rev = vec![Vec::new(); self.n];
        for a in &self.arcs {
            rev[a.to].push(a.from);
        }
        let fwd = self.bfs_count(|u| self.out[u].iter().map(|&id| self.arcs[id].to).collect());
        let bwd = self.bfs_count(|u| rev[u].clone());
        fwd == self.n && bwd == self.n
    }

    fn bfs_count(&self, next: impl Fn(usize) -> Vec<usize>) -> usize {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in next(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges as listed (undirected edges count once).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> Arc {
        self.arcs[id]
    }

    /// Arc ids leaving `u`, ascending.
    pub fn out_arcs(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn find_arc(&self, from: usize, to: usize) -> Option<usize> {
        self.out
            .get(from)?
            .iter()
            .copied()
            .find(|&id| self.arcs[id].to == to)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[u].iter().map(|&id| self.arcs[id].to)
    }

    pub fn max_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_unweighted(&self) -> bool {
        self.arcs.iter().all(|a| a.weight == 1)
    }

    /// Undirected, connected and `m = n - 1`.
    pub fn is_tree(&self) -> bool {
        !self.directed && self.edges.len() + 1 == self.n
    }

    /// Returns the same graph as a directed graph with both arc orientations listed.
    pub fn to_bidirected(&self) -> Graph {
        if self.directed {
            return self.clone();
        }
        let arcs = self.arcs.iter().map(|a| (a.from, a.to, a.weight)).collect();
        Graph::directed(self.n, arcs).expect("symmetric arcs of a connected graph")
    }

    /// Parses the line-oriented text format:
    ///
    /// ```text
    /// # comment
    /// undirected 3 2
    /// 0 1 1
    /// 1 2 1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        if fields.len() != 3 {
            return Err(perr(hline, format!("expected `directed|undirected <n> <m>`, got `{header}`")));
        }
        let directed = match fields[0] {
            "directed" => true,
            "undirected" => false,
            other => return Err(perr(hline, format!("unknown graph kind `{other}`"))),
        };
        let n: usize = fields[1].parse().map_err(|_| perr(hline, format!("bad vertex count `{}`", fields[1])))?;
        let m: usize = fields[2].parse().map_err(|_| perr(hline, format!("bad edge count `{}`", fields[2])))?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 3 {
                return Err(perr(line, format!("expected `<u> <v> <w>`, got `{l}`")));
            }
            let num = |s: &str| -> Result<u64> {
                s.parse::<u64>().map_err(|_| perr(line, format!("bad number `{s}`")))
            };
            edges.push((num(f[0])? as usize, num(f[1])? as usize, num(f[2])?));
        }
        if edges.len() != m {
            return Err(perr(hline, format!("header declares {m} edges, found {}", edges.len())));
        }
        Graph::new(directed, n, edges)
    }

    pub fn to_text(&self) -> String {
        let kind = if self.directed { "directed" } else { "undirected" };
        let mut s = format!("{kind} {} {}\n", self.n, self.edges.len());
        for &(u, v, w) in &self.edges {
            s.push_str(&format!("{u} {v} {w}\n"));
        }
        s
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        Graph::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Exact shortest-path distances; `get(u, v)` is the length of a shortest u→v path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u64>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }

    /// Row `u`: distances from `u` to every vertex.
    pub fn row(&self, u: usize) -> &[u64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u64 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

/// One Dijkstra run per source. Inputs are validated at construction, so
/// every distance is finite and below `2^62`.
pub fn dijkstra_all_pairs(graph: &Graph) -> DistanceMatrix {
    let n = graph.vertex_count();
    let mut dist = vec![u64::MAX; n * n];
    let mut heap = BinaryHeap::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        heap.push(Reverse((0u64, s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > row[u] {
                continue;
            }
            for &id in graph.out_arcs(u) {
                let a = graph.arc(id);
                let nd = d + a.weight;
                if nd < row[a.to] {
                    row[a.to] = nd;
                    heap.push(Reverse((nd, a.to)));
                }
            }
        }
    }
    debug_assert!(dist.iter().all(|&d| d != u64::MAX));
    DistanceMatrix { n, dist }
}

fn check_arc_out_of(graph: &Graph, u: usize, arc: usize) -> Result<Arc> {
    if u >= graph.vertex_count() {
        return Err(usage(format!("vertex {u} out of range")));
    }
    let a = graph
        .arcs()
        .get(arc)
        .copied()
        .ok_or_else(|| usage(format!("arc {arc} does not exist")))?;
    if a.from != u {
        return Err(usage(format!("arc {arc} = ({},{}) does not leave vertex {u}", a.from, a.to)));
    }
    Ok(a)
}

/// Vertices `w` for which arc `arc` (leaving `u`) lies on a shortest u→w path:
/// `d(u, w) = w(e) + d(v, w)`.
pub fn reach(graph: &Graph, dist: &DistanceMatrix, u: usize, arc: usize) -> Result<CandidateSet> {
    let a = check_arc_out_of(graph, u, arc)?;
    Ok(reach_of(dist, a))
}

/// `{w ∈ reach(u, arc) : d(u, w) = ell}`.
pub fn reach_dist(
    graph: &Graph,
    dist: &DistanceMatrix,
    u: usize,
    arc: usize,
    ell: u64,
) -> Result<CandidateSet> {
    let a = check_arc_out_of(graph, u, arc)?;
    Ok(reach_dist_of(dist, a, ell))
}

pub(crate) fn reach_of(dist: &DistanceMatrix, a: Arc) -> CandidateSet {
    let n = dist.vertex_count();
    let from_u = dist.row(a.from);
    let from_v = dist.row(a.to);
    CandidateSet::from_vertices(n, (0..n).filter(|&w| from_u[w] == a.weight + from_v[w]))
}

pub(crate) fn reach_dist_of(dist: &DistanceMatrix, a: Arc, ell: u64) -> CandidateSet {
    let n = dist.vertex_count();
    let from_u = dist.row(a.from);
    let from_v = dist.row(a.to);
    CandidateSet::from_vertices(
        n,
        (0..n).filter(|&w| from_u[w] == ell && from_u[w] == a.weight + from_v[w]),
    )
}

/// `t ∈ reach(arc)` without materializing the set.
#[inline]
pub(crate) fn arc_reaches(dist: &DistanceMatrix, a: Arc, t: usize) -> bool {
    dist.get(a.from, t) == a.weight + dist.get(a.to, t)
}

/// An exact positive rational `num / den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub fn integer(v: u64) -> Self {
        Ratio { num: v, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact test of `after ≤ ((c − 1) / c) · before` for `c = self`.
    pub fn shrink_holds(&self, after: usize, before: usize) -> bool {
        (after as u128) * (self.num as u128) <= ((self.num - self.den) as u128) * (before as u128)
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128)))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMetadata {
    pub n: usize,
    pub m: usize,
    /// Maximum out-degree.
    pub max_degree: usize,
    pub diameter: u64,
    /// Smallest `c` such that every arc `e` lies on a cycle of weight `≤ c·w(e)`.
    /// `None` only for the single-vertex graph.
    pub cycle_constant: Option<Ratio>,
}

pub fn metadata(graph: &Graph, dist: &DistanceMatrix) -> GraphMetadata {
    let cycle_constant = graph
        .arcs()
        .iter()
        .map(|a| Ratio::new(a.weight + dist.get(a.to, a.from), a.weight))
        .max();
    GraphMetadata {
        n: graph.vertex_count(),
        m: graph.edge_count(),
        max_degree: graph.max_degree(),
        diameter: dist.diameter(),
        cycle_constant,
    }
}
