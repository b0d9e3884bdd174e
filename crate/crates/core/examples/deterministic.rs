//! Median search on a weighted random graph against each answering policy.
//!
//!     cargo run --example deterministic

use graphsearch::oracle::{CorrectPolicy, OracleState, SimOracle};
use graphsearch::{deterministic_search, dijkstra_all_pairs, generate, Family, GeneratorSpec};

fn main() -> graphsearch::Result<()> {
    let spec = GeneratorSpec::new(Family::ErConnected { n: 200, m: 600 }).seed(1).wmax(5);
    let g = generate(&spec)?;
    let d = dijkstra_all_pairs(&g);
    let n = g.vertex_count();
    println!("{}: n = {n}, floor(log2 n) = {}", spec.id(), n.ilog2());

    for policy in [CorrectPolicy::MinEdgeId, CorrectPolicy::SeededRandom, CorrectPolicy::AdversarialMaxSurvivor] {
        let mut worst = 0;
        for t in 0..n {
            let mut oracle = SimOracle::truthful(&g, &d, OracleState::truthful(t, policy, t as u64));
            let out = deterministic_search(&g, &d, &mut oracle)?;
            assert_eq!(out.returned, Some(t));
            worst = worst.max(out.query_count);
        }
        println!("{policy:>26}: worst case {worst} queries over all targets");
    }

    let mut oracle = SimOracle::truthful(&g, &d, OracleState::truthful(42, CorrectPolicy::AdversarialMaxSurvivor, 0));
    let out = deterministic_search(&g, &d, &mut oracle)?;
    println!("\ntranscript for target 42:");
    for e in &out.transcript {
        println!("  {:<12} -> {:<14} candidates {:>3} -> {:>3}", e.query.to_string(), e.response.to_string(), e.candidates_before, e.candidates_after);
    }
    Ok(())
}
