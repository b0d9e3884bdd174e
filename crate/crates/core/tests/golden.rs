//! Transcripts pinned to files. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use graphsearch::oracle::{CorrectPolicy, LiePolicy, OracleState, SimOracle, TreeEdgeOracle};
use graphsearch::{deterministic_search, dijkstra_all_pairs, generate, noisy_search, tree_edge_search, Family, GeneratorSpec};

fn check(name: &str, actual: String) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "{name} differs");
}

#[test]
fn deterministic_path8() {
    let g = generate(&GeneratorSpec::new(Family::Path { n: 8 })).unwrap();
    let d = dijkstra_all_pairs(&g);
    let mut o = SimOracle::truthful(&g, &d, OracleState::truthful(5, CorrectPolicy::MinEdgeId, 0));
    check("deterministic_path8_t5.jsonl", deterministic_search(&g, &d, &mut o).unwrap().transcript_lines());
}

#[test]
fn noisy_grid() {
    let g = generate(&GeneratorSpec::new(Family::Grid { width: 3, height: 3 })).unwrap();
    let d = dijkstra_all_pairs(&g);
    let state = OracleState::new(4, CorrectPolicy::SeededRandom, LiePolicy::UniformResponse, 0.8, 99).unwrap();
    let mut o = SimOracle::noisy(&g, &d, state);
    let out = noisy_search(&g, &d, 0.8, 0.25, &mut o).unwrap();
    check("noisy_grid3x3_t4.jsonl", out.outcome.transcript_lines());
}

#[test]
fn tree_edge_binary15() {
    let g = generate(&GeneratorSpec::new(Family::CompleteBinaryTree { n: 15 })).unwrap();
    let mut o = TreeEdgeOracle { state: OracleState::truthful(11, CorrectPolicy::MinEdgeId, 0), tree: &g };
    check("tree_edge_binary15_t11.jsonl", tree_edge_search(&g, &mut o).unwrap().transcript_lines());
}
