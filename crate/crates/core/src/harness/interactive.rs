//! A terminal oracle: a person types the answers.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{dijkstra_all_pairs, DistanceMatrix, Graph};
use crate::oracle::{consistent_set, ArcRef, EdgeOracle, Mirror, QueryResponse, ResponseText, VertexOracle};
use crate::solver::QueryModel;
use crate::strategy::{almost_undirected_search, deterministic_search, distance_informed_search, tree_edge_search, StrategyOutcome};

/// Reads responses from `input`, writing prompts and rejections to `output`.
/// Malformed or illegal lines are explained and asked again.
pub struct HumanOracle<'g, R, W> {
    graph: &'g Graph,
    dist: Option<&'g DistanceMatrix>,
    with_distance: bool,
    input: R,
    output: W,
}

impl<'g, R: BufRead, W: Write> HumanOracle<'g, R, W> {
    pub fn new(graph: &'g Graph, dist: Option<&'g DistanceMatrix>, with_distance: bool, input: R, output: W) -> Self {
        HumanOracle { graph, dist, with_distance, input, output }
    }

    fn read_line(&mut self, prompt: &str) -> Result<String> {
        write!(self.output, "{prompt}")?;
        self.output.flush()?;
        let mut line = String::new();
        if self.input.read_line(&mut line)? == 0 {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::UnexpectedEof,
                "input ended before the search finished",
            )));
        }
        Ok(line.trim().to_string())
    }

    fn reject(&mut self, why: &str) -> Result<()> {
        writeln!(self.output, "rejected: {why}")?;
        Ok(())
    }

    fn resolve_vertex(&self, q: usize, text: ResponseText, mirror: &Mirror<'_>) -> std::result::Result<QueryResponse, String> {
        let arc = |u: usize, v: usize| -> std::result::Result<ArcRef, String> {
            if u != q {
                return Err(format!("the edge must leave the queried vertex {q}"));
            }
            self.graph
                .find_arc(u, v)
                .map(|id| ArcRef::of(self.graph, id))
                .ok_or_else(|| format!("there is no edge {u} -> {v}"))
        };
        let response = match (text, self.with_distance) {
            (ResponseText::Target, _) => QueryResponse::Target(q),
            (ResponseText::Edge(u, v), false) => QueryResponse::Edge(arc(u, v)?),
            (ResponseText::EdgeDist(u, v, l), true) => QueryResponse::EdgeDist(arc(u, v)?, l),
            (ResponseText::Edge(..), true) => return Err("this model needs `edge <u> <v> dist <l>`".into()),
            (ResponseText::EdgeDist(..), false) => return Err("this model takes `edge <u> <v>` without a distance".into()),
            (ResponseText::Side(_), _) => return Err("`side` answers edge queries; this is a vertex query".into()),
        };
        if let (Mirror::Candidates(s), Some(dist)) = (mirror, self.dist) {
            if consistent_set(dist, self.graph, &response).intersection_len(s) == 0 {
                return Err("no remaining candidate is consistent with that answer".into());
            }
        }
        Ok(response)
    }
}

impl<R: BufRead, W: Write> VertexOracle for HumanOracle<'_, R, W> {
    fn answer(&mut self, q: usize, mirror: Mirror<'_>) -> Result<QueryResponse> {
        loop {
            let line = self.read_line(&format!("query {q}> "))?;
            match line.parse::<ResponseText>() {
                Err(e) => self.reject(&e.to_string())?,
                Ok(text) => match self.resolve_vertex(q, text, &mirror) {
                    Ok(r) => return Ok(r),
                    Err(why) => self.reject(&why)?,
                },
            }
        }
    }
}

impl<R: BufRead, W: Write> EdgeOracle for HumanOracle<'_, R, W> {
    fn answer_edge(&mut self, u: usize, v: usize) -> Result<QueryResponse> {
        loop {
            let line = self.read_line(&format!("query-edge {u} {v}> "))?;
            match line.parse::<ResponseText>() {
                Ok(ResponseText::Side(x)) if x == u || x == v => return Ok(QueryResponse::Side(x)),
                Ok(ResponseText::Side(x)) => self.reject(&format!("{x} is not an endpoint of {{{u},{v}}}"))?,
                Ok(_) => self.reject("edge queries take `side <u>`")?,
                Err(e) => self.reject(&e.to_string())?,
            }
        }
    }
}

/// Plays one search with a person as the oracle and reports the result.
pub fn interactive_session(
    graph: &Graph,
    model: QueryModel,
    input: impl BufRead,
    mut output: impl Write,
) -> Result<StrategyOutcome> {
    let outcome = {
        let needs_dist = model != QueryModel::EdgeQueryTree;
        let dist = needs_dist.then(|| dijkstra_all_pairs(graph));
        let mut oracle = HumanOracle::new(graph, dist.as_ref(), model == QueryModel::DistanceInformed, input, &mut output);
        match model {
            QueryModel::VertexQuery => deterministic_search(graph, dist.as_ref().unwrap(), &mut oracle)?,
            QueryModel::VertexQueryDirected => almost_undirected_search(graph, dist.as_ref().unwrap(), &mut oracle)?,
            QueryModel::DistanceInformed => distance_informed_search(graph, dist.as_ref().unwrap(), &mut oracle)?,
            QueryModel::EdgeQueryTree => tree_edge_search(graph, &mut oracle)?,
        }
    };
    match outcome.returned {
        Some(v) => writeln!(output, "found {v} after {} queries", outcome.query_count)?,
        None => writeln!(output, "no vertex identified after {} queries", outcome.query_count)?,
    }
    Ok(outcome)
}
