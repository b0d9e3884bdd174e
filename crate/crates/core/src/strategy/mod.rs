//! Search strategies. Each returns a [`StrategyOutcome`] carrying the full
//! query transcript.

use std::fmt;
use std::io::Write;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::Result;
use crate::oracle::QueryResponse;

mod deterministic;
mod noisy;
mod tree_edge;

pub use deterministic::{
    almost_undirected_search, deterministic_search, distance_informed_search, follow_edge_baseline,
    majority_repetitions, majority_tree_baseline,
};
pub use noisy::{
    binary_entropy, multiweights, noisy_search, noisy_search_amortized, MultiWeightsResult, NoisyConfig,
    NoisyOutcome,
};
pub use tree_edge::{phase_summaries, tree_edge_search, PhaseEnd, PhaseSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Vertex(usize),
    Edge(usize, usize),
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Vertex(v) => write!(f, "vertex {v}"),
            Query::Edge(u, v) => write!(f, "edge {u} {v}"),
        }
    }
}

/// The potential value that selected a query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Potential {
    /// `Φ(S, q)`, sum of distances.
    Sum(u64),
    /// `Φ_μ(q)` on normalized weights.
    Weighted(f64),
    /// `Φ′(S, q)`, the half-majority radius.
    Radius(u64),
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranscriptEntry {
    pub step: usize,
    pub query: Query,
    pub response: QueryResponse,
    pub potential: Potential,
    /// Candidate count (or weight-support size, or subtree size) before the update.
    pub candidates_before: usize,
    pub candidates_after: usize,
    /// `log₂` of the true total weight after the update (weighted strategies only).
    pub log2_total: Option<f64>,
    /// Stage of a multi-stage strategy, or the phase index of the edge-query search.
    pub phase: Option<usize>,
    /// Separator vertex in force for an edge query.
    pub separator: Option<usize>,
}

impl Serialize for TranscriptEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TranscriptEntry", 9)?;
        st.serialize_field("step", &self.step)?;
        st.serialize_field("query", &self.query.to_string())?;
        st.serialize_field("response", &self.response.to_string())?;
        match self.potential {
            Potential::Sum(v) | Potential::Radius(v) => st.serialize_field("potential", &v)?,
            Potential::Weighted(v) => st.serialize_field("potential", &v)?,
            Potential::None => st.serialize_field("potential", &Option::<u64>::None)?,
        }
        st.serialize_field("candidates_before", &self.candidates_before)?;
        st.serialize_field("candidates_after", &self.candidates_after)?;
        st.serialize_field("log2_total", &self.log2_total.filter(|x| x.is_finite()))?;
        st.serialize_field("phase", &self.phase)?;
        st.serialize_field("separator", &self.separator)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrategyOutcome {
    /// The vertex the strategy names as target; `None` is an explicit failure.
    pub returned: Option<usize>,
    pub query_count: usize,
    /// Filled in by [`StrategyOutcome::judge`].
    pub success: Option<bool>,
    pub transcript: Vec<TranscriptEntry>,
}

impl StrategyOutcome {
    pub(crate) fn new(returned: Option<usize>, transcript: Vec<TranscriptEntry>) -> Self {
        StrategyOutcome {
            returned,
            query_count: transcript.len(),
            success: None,
            transcript,
        }
    }

    pub fn judge(&mut self, target: usize) -> bool {
        let ok = self.returned == Some(target);
        self.success = Some(ok);
        ok
    }

    /// One JSON object per transcript entry, newline-terminated.
    pub fn write_transcript(&self, mut w: impl Write) -> Result<()> {
        for e in &self.transcript {
            serde_json::to_writer(&mut w, e)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn transcript_lines(&self) -> String {
        let mut buf = Vec::new();
        self.write_transcript(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }
}
