//! Directed graphs where every arc sits on a short cycle. The nested cycle
//! family forces `(c − 1)·k` queries; the median search stays within the
//! shrink bound.
//!
//!     cargo run --example almost_undirected

use graphsearch::harness::bounds::almost_undirected_bound;
use graphsearch::oracle::{CorrectPolicy, OracleState, SimOracle};
use graphsearch::solver::{opt_queries, QueryModel};
use graphsearch::{almost_undirected_search, dijkstra_all_pairs, generate, metadata, Family, GeneratorSpec};

fn main() -> graphsearch::Result<()> {
    for (c, k) in [(2, 3), (3, 2), (4, 1), (3, 3)] {
        let g = generate(&GeneratorSpec::new(Family::NestCycle { c, k }))?;
        let d = dijkstra_all_pairs(&g);
        let md = metadata(&g, &d);
        let cc = md.cycle_constant.expect("more than one vertex");
        let mut worst = 0;
        for t in 0..md.n {
            let mut o = SimOracle::truthful(&g, &d, OracleState::truthful(t, CorrectPolicy::AdversarialMaxSurvivor, 0));
            worst = worst.max(almost_undirected_search(&g, &d, &mut o)?.query_count);
        }
        let opt = if md.n <= 20 {
            opt_queries(&g, &d, QueryModel::VertexQueryDirected)?.0.to_string()
        } else {
            "-".into()
        };
        println!(
            "NestCycle({c},{k}): n = {:>2}, c = {}, lower bound {}, OPT {opt:>2}, median search {worst}, bound {}",
            md.n,
            cc,
            (c - 1) * k as usize,
            almost_undirected_bound(md.n, cc)
        );
    }
    Ok(())
}
