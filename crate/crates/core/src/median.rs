//! Potential functions and the medians that minimize them.
//!
//! Every argmin ranges over all of `V` (the minimizer need not be a
//! candidate) and ties go to the lowest vertex id.

use crate::bitset::CandidateSet;
use crate::error::{usage, Result};
use crate::graph::DistanceMatrix;

/// Absolute slack used when comparing floating-point weighted potentials and
/// when checking weighted half-mass bounds.
pub const WEIGHT_SLACK: f64 = 1e-9;

/// Per-vertex likelihood weights, kept normalized to sum 1 over the support.
/// The logarithm of the true (unnormalized) total is tracked separately so
/// hundreds of multiplicative updates never underflow.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    mu: Vec<f64>,
    log2_total: f64,
}

impl WeightVector {
    /// Weight `1/|S|` on each member of `set`; true total 1.
    pub fn uniform_on(set: &CandidateSet) -> Self {
        let n = set.universe();
        let k = set.len();
        let mut mu = vec![0.0; n];
        if k > 0 {
            let share = 1.0 / k as f64;
            for v in set.iter() {
                mu[v] = share;
            }
        }
        WeightVector {
            mu,
            log2_total: if k > 0 { 0.0 } else { f64::NEG_INFINITY },
        }
    }

    /// Normalizes arbitrary nonnegative weights; `log2_total` records their sum.
    pub fn from_raw(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(usage("weights must be finite and nonnegative"));
        }
        let mut wv = WeightVector {
            mu: weights,
            log2_total: 0.0,
        };
        wv.renormalize();
        Ok(wv)
    }

    fn renormalize(&mut self) {
        let total: f64 = self.mu.iter().sum();
        if total > 0.0 {
            for w in self.mu.iter_mut() {
                *w /= total;
            }
            self.log2_total += total.log2();
        } else {
            self.mu.iter_mut().for_each(|w| *w = 0.0);
            self.log2_total = f64::NEG_INFINITY;
        }
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> f64 {
        self.mu[v]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.mu
    }

    /// `log₂` of the true total weight; `-inf` once the support is empty.
    pub fn log2_total(&self) -> f64 {
        self.log2_total
    }

    pub fn support(&self) -> CandidateSet {
        CandidateSet::from_vertices(self.mu.len(), (0..self.mu.len()).filter(|&v| self.mu[v] > 0.0))
    }

    pub fn has_support(&self) -> bool {
        self.mu.iter().any(|&w| w > 0.0)
    }

    /// Normalized mass of `set`.
    pub fn mass(&self, set: &CandidateSet) -> f64 {
        set.iter().map(|v| self.mu[v]).sum()
    }

    /// Sets `mu[v] = 0` and renormalizes. Returns the normalized mass removed.
    pub fn zero(&mut self, v: usize) -> f64 {
        let removed = self.mu[v];
        self.mu[v] = 0.0;
        self.renormalize();
        removed
    }

    /// Multiplies members of `consistent` by `p` and everything else by `1 − p`,
    /// then renormalizes.
    pub fn reweight(&mut self, consistent: &CandidateSet, p: f64) {
        for (v, w) in self.mu.iter_mut().enumerate() {
            *w *= if consistent.contains(v) { p } else { 1.0 - p };
        }
        self.renormalize();
    }
}

fn check_nonempty(s: &CandidateSet) -> Result<()> {
    if s.is_empty() {
        Err(usage("candidate set is empty"))
    } else {
        Ok(())
    }
}

fn check_vertex(dist: &DistanceMatrix, u: usize) -> Result<()> {
    if u < dist.vertex_count() {
        Ok(())
    } else {
        Err(usage(format!("vertex {u} out of range")))
    }
}

/// `Φ(S, u) = Σ_{v ∈ S} d(u, v)`.
pub fn potential(dist: &DistanceMatrix, s: &CandidateSet, u: usize) -> Result<u64> {
    check_nonempty(s)?;
    check_vertex(dist, u)?;
    Ok(potential_of(dist, s, u))
}

pub(crate) fn potential_of(dist: &DistanceMatrix, s: &CandidateSet, u: usize) -> u64 {
    let row = dist.row(u);
    s.iter().map(|v| row[v]).sum()
}

/// A 1-median of `s`: the vertex of `V` minimizing `Φ(s, ·)`.
pub fn median(dist: &DistanceMatrix, s: &CandidateSet) -> Result<usize> {
    check_nonempty(s)?;
    Ok(median_with_value(dist, s).0)
}

pub(crate) fn median_with_value(dist: &DistanceMatrix, s: &CandidateSet) -> (usize, u64) {
    let members = s.to_vec();
    (0..dist.vertex_count())
        .map(|u| {
            let row = dist.row(u);
            (u, members.iter().map(|&v| row[v]).sum::<u64>())
        })
        .min_by_key(|&(u, phi)| (phi, u))
        .expect("non-empty vertex set")
}

/// `Φ_μ(u) = Σ_v μ(v) d(u, v)` on the normalized weights.
pub fn weighted_potential(dist: &DistanceMatrix, mu: &WeightVector, u: usize) -> Result<f64> {
    if !mu.has_support() {
        return Err(usage("weight vector has empty support"));
    }
    check_vertex(dist, u)?;
    let row = dist.row(u);
    Ok(mu
        .as_slice()
        .iter()
        .zip(row)
        .filter(|(w, _)| **w > 0.0)
        .map(|(w, &d)| w * d as f64)
        .sum())
}

/// Argmin of `Φ_μ` over `V`.
pub fn weighted_median(dist: &DistanceMatrix, mu: &WeightVector) -> Result<usize> {
    if !mu.has_support() {
        return Err(usage("weight vector has empty support"));
    }
    let values: Vec<f64> = (0..dist.vertex_count())
        .map(|u| weighted_potential(dist, mu, u).expect("checked"))
        .collect();
    Ok(argmin_with_slack(&values))
}

/// Lowest index whose value is within [`WEIGHT_SLACK`] of the minimum.
pub(crate) fn argmin_with_slack(values: &[f64]) -> usize {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    values
        .iter()
        .position(|&x| x <= min + WEIGHT_SLACK)
        .expect("non-empty values")
}

/// `Φ′(S, v)`: the least `ℓ` such that strictly more than half of `S` lies
/// within distance `ℓ` of `v`.
pub fn dir_potential(dist: &DistanceMatrix, s: &CandidateSet, v: usize) -> Result<u64> {
    check_nonempty(s)?;
    check_vertex(dist, v)?;
    let mut scratch = Vec::with_capacity(s.len());
    Ok(dir_potential_of(dist, s, v, &mut scratch))
}

pub(crate) fn dir_potential_of(
    dist: &DistanceMatrix,
    s: &CandidateSet,
    v: usize,
    scratch: &mut Vec<u64>,
) -> u64 {
    let row = dist.row(v);
    scratch.clear();
    scratch.extend(s.iter().map(|w| row[w]));
    // |Γ_ℓ ∩ S| > |S|/2  ⇔  at least ⌊|S|/2⌋ + 1 members within ℓ
    let k = scratch.len() / 2;
    *scratch.select_nth_unstable(k).1
}

/// Argmin of `Φ′(S, ·)` over `V`.
pub fn dir_median(dist: &DistanceMatrix, s: &CandidateSet) -> Result<usize> {
    check_nonempty(s)?;
    Ok(dir_median_with_value(dist, s).0)
}

pub(crate) fn dir_median_with_value(dist: &DistanceMatrix, s: &CandidateSet) -> (usize, u64) {
    let mut scratch = Vec::with_capacity(s.len());
    (0..dist.vertex_count())
        .map(|u| (u, dir_potential_of(dist, s, u, &mut scratch)))
        .min_by_key(|&(u, phi)| (phi, u))
        .expect("non-empty vertex set")
}
