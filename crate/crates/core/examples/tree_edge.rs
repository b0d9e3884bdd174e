//! Edge queries on trees: each answer names the side of an edge holding the
//! target. The phase log shows how each separator phase shrinks the tree.
//!
//!     cargo run --example tree_edge

use graphsearch::harness::bounds::tree_edge_bound;
use graphsearch::oracle::{CorrectPolicy, OracleState, TreeEdgeOracle};
use graphsearch::strategy::phase_summaries;
use graphsearch::{generate, tree_edge_search, Family, GeneratorSpec};

fn main() -> graphsearch::Result<()> {
    for max_degree in [2, 3, 5, 8] {
        let g = generate(&GeneratorSpec::new(Family::RandomTree { n: 1000, max_degree }).seed(1))?;
        let delta = g.max_degree();
        let mut worst = 0;
        for t in (0..1000).step_by(7) {
            let mut o = TreeEdgeOracle { state: OracleState::truthful(t, CorrectPolicy::MinEdgeId, 0), tree: &g };
            worst = worst.max(tree_edge_search(&g, &mut o)?.query_count);
        }
        println!("n = 1000, max degree {delta}: worst {worst} queries, bound {:.2}", tree_edge_bound(1000, delta));
    }

    let g = generate(&GeneratorSpec::new(Family::Star { n: 9 }))?;
    let mut o = TreeEdgeOracle { state: OracleState::truthful(6, CorrectPolicy::MinEdgeId, 0), tree: &g };
    let out = tree_edge_search(&g, &mut o)?;
    println!("\nstar with 8 leaves, target 6:");
    for ph in phase_summaries(&out) {
        println!(
            "  phase {} separator {:?}: {} queries, {} -> {} vertices ({:?})",
            ph.index, ph.separator, ph.queries, ph.size_start, ph.size_end, ph.end
        );
    }
    Ok(())
}
