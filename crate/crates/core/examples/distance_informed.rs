//! When answers also carry `d(q, t)`, one query finds the target on a directed
//! cycle, and any strongly connected digraph needs at most `⌊log₂ n⌋`.
//!
//!     cargo run --example distance_informed

use graphsearch::oracle::{CorrectPolicy, OracleState, SimOracle};
use graphsearch::{almost_undirected_search, dijkstra_all_pairs, distance_informed_search, generate, Family, GeneratorSpec};

fn main() -> graphsearch::Result<()> {
    let g = generate(&GeneratorSpec::new(Family::DirectedCycle { n: 32 }))?;
    let d = dijkstra_all_pairs(&g);
    let mut o = SimOracle::distance_informed(&g, &d, OracleState::truthful(17, CorrectPolicy::MinEdgeId, 0));
    let out = distance_informed_search(&g, &d, &mut o)?;
    println!("directed cycle n=32: found {:?} with {} query ({})", out.returned, out.query_count, out.transcript[0].response);

    let mut o = SimOracle::truthful(&g, &d, OracleState::truthful(17, CorrectPolicy::MinEdgeId, 0));
    let plain = almost_undirected_search(&g, &d, &mut o)?;
    println!("without distances the same search takes {} queries", plain.query_count);

    let g = generate(&GeneratorSpec::new(Family::RandomStronglyConnected { n: 300, m: 3000 }).seed(4).wmax(3))?;
    let d = dijkstra_all_pairs(&g);
    let worst = (0..300)
        .map(|t| {
            let mut o = SimOracle::distance_informed(&g, &d, OracleState::truthful(t, CorrectPolicy::AdversarialMaxSurvivor, 0));
            distance_informed_search(&g, &d, &mut o).map(|r| r.query_count)
        })
        .collect::<graphsearch::Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap();
    println!("random strongly connected n=300: worst {worst} queries, floor(log2 n) = {}", 300usize.ilog2());
    Ok(())
}
