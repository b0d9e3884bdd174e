//! Optimal worst-case query counts for small graphs, and an optimal decision
//! tree in text form.
//!
//!     cargo run --release --example exact_solver

use graphsearch::solver::{opt_queries, opt_strategy_tree, QueryModel};
use graphsearch::{dijkstra_all_pairs, generate, Family, GeneratorSpec};

fn main() -> graphsearch::Result<()> {
    let specs = [
        GeneratorSpec::new(Family::Path { n: 16 }),
        GeneratorSpec::new(Family::Star { n: 12 }),
        GeneratorSpec::new(Family::Grid { width: 4, height: 4 }),
        GeneratorSpec::new(Family::CompleteBinaryTree { n: 15 }),
        GeneratorSpec::new(Family::ErConnected { n: 14, m: 30 }).seed(2).wmax(4),
    ];
    for spec in &specs {
        let g = generate(spec)?;
        let d = dijkstra_all_pairs(&g);
        let (opt, table) = opt_queries(&g, &d, QueryModel::VertexQuery)?;
        let n = g.vertex_count();
        print!("{:<24} n = {n:>2}: OPT {opt}, floor(log2 n) = {}, states {}", spec.id(), n.ilog2(), table.solved_states());
        if g.is_tree() {
            let (edge_opt, _) = opt_queries(&g, &d, QueryModel::EdgeQueryTree)?;
            print!(", edge queries {edge_opt}");
        }
        println!();
    }

    let g = generate(&GeneratorSpec::new(Family::Grid { width: 3, height: 2 }))?;
    let d = dijkstra_all_pairs(&g);
    println!("\noptimal tree for the 3x2 grid:\n{}", opt_strategy_tree(&g, &d, QueryModel::VertexQuery)?.to_text());
    Ok(())
}
