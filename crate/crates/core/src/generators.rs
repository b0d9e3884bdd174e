//! Seeded instance families.
//!
//! Random families draw from ChaCha8 seeded with `seed_from_u64(seed)`. Edge
//! weights are uniform in `[1, wmax]`; `wmax = 1` gives unit weights and
//! consumes no randomness.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from;

/// Attempts made by the connectivity-retry families before giving up.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Path { n: usize },
    Star { n: usize },
    CompleteBinaryTree { n: usize },
    RandomTree { n: usize, max_degree: usize },
    Grid { width: usize, height: usize },
    ErConnected { n: usize, m: usize },
    DirectedCycle { n: usize },
    NestCycle { c: usize, k: u32 },
    RandomStronglyConnected { n: usize, m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub wmax: u64,
}

fn one() -> u64 {
    1
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec { family, seed: 0, wmax: 1 }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn wmax(mut self, wmax: u64) -> Self {
        self.wmax = wmax;
        self
    }

    /// A short stable identifier, e.g. `random-tree-n512-d4-s7`.
    pub fn id(&self) -> String {
        let base = match &self.family {
            Family::Path { n } => format!("path-n{n}"),
            Family::Star { n } => format!("star-n{n}"),
            Family::CompleteBinaryTree { n } => format!("complete-binary-tree-n{n}"),
            Family::RandomTree { n, max_degree } => format!("random-tree-n{n}-d{max_degree}"),
            Family::Grid { width, height } => format!("grid-{width}x{height}"),
            Family::ErConnected { n, m } => format!("er-connected-n{n}-m{m}"),
            Family::DirectedCycle { n } => format!("directed-cycle-n{n}"),
            Family::NestCycle { c, k } => format!("nest-cycle-c{c}-k{k}"),
            Family::RandomStronglyConnected { n, m } => format!("random-strongly-connected-n{n}-m{m}"),
        };
        let mut id = base;
        if self.wmax > 1 {
            id.push_str(&format!("-w{}", self.wmax));
        }
        if self.family.is_random() || self.wmax > 1 {
            id.push_str(&format!("-s{}", self.seed));
        }
        id
    }
}

impl Family {
    fn is_random(&self) -> bool {
        matches!(
            self,
            Family::RandomTree { .. } | Family::ErConnected { .. } | Family::RandomStronglyConnected { .. }
        )
    }
}

fn weights(rng: &mut ChaCha8Rng, wmax: u64, pairs: Vec<(usize, usize)>) -> Vec<(usize, usize, u64)> {
    pairs
        .into_iter()
        .map(|(u, v)| (u, v, if wmax == 1 { 1 } else { rng.gen_range(1..=wmax) }))
        .collect()
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(usage(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    if spec.wmax == 0 {
        return Err(usage("wmax must be at least 1"));
    }
    let mut rng = rng_from(spec.seed);
    let w = spec.wmax;
    match spec.family {
        Family::Path { n } => {
            positive("n", n)?;
            let e = weights(&mut rng, w, (1..n).map(|i| (i - 1, i)).collect());
            Graph::undirected(n, e)
        }
        Family::Star { n } => {
            positive("n", n)?;
            let e = weights(&mut rng, w, (1..n).map(|i| (0, i)).collect());
            Graph::undirected(n, e)
        }
        Family::CompleteBinaryTree { n } => {
            positive("n", n)?;
            let e = weights(&mut rng, w, (1..n).map(|i| ((i - 1) / 2, i)).collect());
            Graph::undirected(n, e)
        }
        Family::RandomTree { n, max_degree } => {
            positive("n", n)?;
            positive("max_degree", max_degree)?;
            if max_degree == 1 && n > 2 {
                return Err(usage(format!("no tree on {n} vertices has maximum degree 1")));
            }
            let mut degree = vec![0usize; n];
            let mut open: Vec<usize> = Vec::new();
            let mut pairs = Vec::with_capacity(n.saturating_sub(1));
            if n > 0 {
                open.push(0);
            }
            for v in 1..n {
                let i = rng.gen_range(0..open.len());
                let u = open[i];
                pairs.push((u, v));
                degree[u] += 1;
                degree[v] += 1;
                if degree[u] == max_degree {
                    open.swap_remove(i);
                }
                if degree[v] < max_degree {
                    open.push(v);
                }
            }
            let e = weights(&mut rng, w, pairs);
            Graph::undirected(n, e)
        }
        Family::Grid { width, height } => {
            positive("width", width)?;
            positive("height", height)?;
            let id = |x: usize, y: usize| y * width + x;
            let mut pairs = Vec::new();
            for y in 0..height {
                for x in 0..width {
                    if x + 1 < width {
                        pairs.push((id(x, y), id(x + 1, y)));
                    }
                    if y + 1 < height {
                        pairs.push((id(x, y), id(x, y + 1)));
                    }
                }
            }
            let e = weights(&mut rng, w, pairs);
            Graph::undirected(width * height, e)
        }
        Family::ErConnected { n, m } => {
            positive("n", n)?;
            let max = n * (n - 1) / 2;
            if m < n - 1 || m > max {
                return Err(usage(format!("a connected simple graph on {n} vertices has {}..={max} edges", n - 1)));
            }
            let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for _ in 0..MAX_ATTEMPTS {
                let mut pairs: Vec<(usize, usize)> = all.choose_multiple(&mut rng, m).copied().collect();
                pairs.sort_unstable();
                if connected(n, &pairs, false) {
                    return Graph::undirected(n, weights(&mut rng, w, pairs));
                }
            }
            Err(Error::Generator(format!("no connected G({n}, {m}) after {MAX_ATTEMPTS} attempts")))
        }
        Family::DirectedCycle { n } => {
            positive("n", n)?;
            let pairs = if n == 1 { Vec::new() } else { (0..n).map(|i| (i, (i + 1) % n)).collect() };
            Graph::directed(n, weights(&mut rng, w, pairs))
        }
        Family::NestCycle { c, k } => {
            if c < 2 {
                return Err(usage("NestCycle needs c ≥ 2"));
            }
            let n = c.checked_pow(k).filter(|&n| n <= 1 << 22).ok_or_else(|| usage("NestCycle too large"))?;
            let pairs = nest_cycle_arcs(c, k);
            debug_assert!(pairs.iter().all(|&(u, v)| u < n && v < n));
            Graph::directed(n, weights(&mut rng, w, pairs))
        }
        Family::RandomStronglyConnected { n, m } => {
            positive("n", n)?;
            let max = n * (n - 1);
            let min = if n == 1 { 0 } else { n };
            if m < min || m > max {
                return Err(usage(format!("a strongly connected digraph on {n} vertices has {min}..={max} arcs")));
            }
            let all: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
            for _ in 0..MAX_ATTEMPTS {
                let mut pairs: Vec<(usize, usize)> = all.choose_multiple(&mut rng, m).copied().collect();
                pairs.sort_unstable();
                if connected(n, &pairs, true) {
                    return Graph::directed(n, weights(&mut rng, w, pairs));
                }
            }
            Err(Error::Generator(format!("no strongly connected digraph ({n}, {m}) after {MAX_ATTEMPTS} attempts")))
        }
    }
}

/// Arcs of NestCycle(c, k) with copy-major ids: copy `i` of level `k − 1`
/// occupies ids `i·c^{k−1} .. (i+1)·c^{k−1}`.
fn nest_cycle_arcs(c: usize, k: u32) -> Vec<(usize, usize)> {
    if k == 0 {
        return Vec::new();
    }
    let inner = nest_cycle_arcs(c, k - 1);
    let block = c.pow(k - 1);
    let mut out = Vec::with_capacity(c * inner.len() + c);
    for i in 0..c {
        out.extend(inner.iter().map(|&(u, v)| (u + i * block, v + i * block)));
    }
    out.extend((0..c).map(|i| (i * block, ((i + 1) % c) * block)));
    out
}

fn connected(n: usize, pairs: &[(usize, usize)], directed: bool) -> bool {
    let mut fwd = vec![Vec::new(); n];
    let mut back = vec![Vec::new(); n];
    for &(u, v) in pairs {
        fwd[u].push(v);
        back[v].push(u);
    }
    let reach_all = |adj: &[Vec<usize>], other: Option<&[Vec<usize>]>| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            let extra = other.map(|o| o[x].as_slice()).unwrap_or(&[]);
            for &y in adj[x].iter().chain(extra) {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    };
    if directed {
        reach_all(&fwd, None) && reach_all(&back, None)
    } else {
        reach_all(&fwd, Some(&back))
    }
}

/// `⌈n ln n⌉` edges clamped to the connected range; dense enough that
/// connectivity retries rarely trigger.
pub fn default_er_edges(n: usize) -> usize {
    let target = ((n as f64) * (n as f64).ln()).ceil() as usize;
    target.clamp(n.saturating_sub(1), n * n.saturating_sub(1) / 2)
}
