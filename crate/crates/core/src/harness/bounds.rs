//! Query-count bounds and success thresholds attached to experiment records.

use num_bigint::BigUint;

use crate::graph::Ratio;

/// `⌊log₂ n⌋`, and 0 for `n ≤ 1`.
pub fn log2_floor(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        n.ilog2() as u64
    }
}

/// Smallest `k` with `n·((c − 1)/c)^k ≤ 1`, i.e. `⌈ln n / (ln c − ln(c − 1))⌉`,
/// evaluated exactly for rational `c = a/b` as the least `k` with `a^k ≥ n·(a − b)^k`.
pub fn almost_undirected_bound(n: usize, c: Ratio) -> u64 {
    assert!(c.numer() > c.denom(), "cycle constant must exceed 1");
    let a = BigUint::from(c.numer());
    let gap = BigUint::from(c.numer() - c.denom());
    let n = BigUint::from(n as u64);
    let mut lhs = BigUint::from(1u8);
    let mut rhs = n;
    let mut k = 0;
    while lhs < rhs {
        lhs *= &a;
        rhs *= &gap;
        k += 1;
    }
    k
}

/// `1 + (Δ − 1)/(log₂(Δ + 1) − 1)·log₂ n` for `Δ ≥ 2`; a tree with `Δ ≤ 1`
/// has at most two vertices and needs `n − 1` queries.
pub fn tree_edge_bound(n: usize, max_degree: usize) -> f64 {
    if max_degree <= 1 {
        return n.saturating_sub(1) as f64;
    }
    let d = max_degree as f64;
    1.0 + (d - 1.0) / ((d + 1.0).log2() - 1.0) * (n as f64).log2()
}

/// Success probability guaranteed by the amortized wrapper:
/// `(1 − δ + 1/log₂ n)·(1 − 1/log₂ n)`.
pub fn amortized_success(n: usize, delta: f64) -> f64 {
    if n < 2 {
        return 1.0;
    }
    let inv = 1.0 / (n as f64).log2();
    (1.0 - delta + inv) * (1.0 - inv)
}

/// `prob − 3σ` for the success fraction of `trials` independent runs.
pub fn success_threshold(prob: f64, trials: usize) -> f64 {
    if trials == 0 {
        return prob;
    }
    prob - 3.0 * (prob * (1.0 - prob) / trials as f64).sqrt()
}
