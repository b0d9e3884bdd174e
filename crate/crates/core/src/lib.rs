//! Target search on graphs by queries.
//!
//! A hidden target vertex is found by asking vertices (or tree edges); each
//! answer names the target or an edge on a shortest path towards it. The
//! crate provides the graph model and shortest-path machinery, median
//! selection, simulated and adversarial oracles, the search strategies
//! (deterministic, directed, distance-informed, noisy, edge queries), seeded
//! instance generators, an exact minimax solver for small graphs and an
//! experiment harness.
//!
//! ```
//! use graphsearch::{dijkstra_all_pairs, deterministic_search, CorrectPolicy, Graph, OracleState, SimOracle};
//!
//! let g = Graph::undirected(4, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
//! let d = dijkstra_all_pairs(&g);
//! let mut oracle = SimOracle::truthful(&g, &d, OracleState::truthful(3, CorrectPolicy::MinEdgeId, 0));
//! let out = deterministic_search(&g, &d, &mut oracle).unwrap();
//! assert_eq!(out.returned, Some(3));
//! assert!(out.query_count <= 2);
//! ```

pub mod bitset;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod median;
pub mod oracle;
pub mod rng;
pub mod solver;
pub mod strategy;

pub use bitset::CandidateSet;
pub use error::{Error, Result};
pub use generators::{generate, Family, GeneratorSpec};
pub use graph::{dijkstra_all_pairs, metadata, reach, reach_dist, Arc, DistanceMatrix, Graph, GraphMetadata, Ratio};
pub use median::{dir_median, dir_potential, median, potential, weighted_median, weighted_potential, WeightVector};
pub use oracle::{
    CorrectPolicy, EdgeOracle, LiePolicy, Mirror, OracleState, QueryResponse, SimOracle, TreeEdgeOracle, VertexOracle,
};
pub use solver::{opt_queries, opt_strategy_tree, OptTable, QueryModel, StrategyTree};
pub use strategy::{
    almost_undirected_search, deterministic_search, distance_informed_search, follow_edge_baseline,
    majority_tree_baseline, multiweights, noisy_search, noisy_search_amortized, phase_summaries, tree_edge_search,
    StrategyOutcome,
};
