//! Search with an oracle that lies with probability `1 − p`, compared with
//! repeating each query of the median search and taking the majority.
//!
//!     cargo run --release --example noisy

use graphsearch::oracle::{CorrectPolicy, LiePolicy, OracleState, SimOracle};
use graphsearch::rng::derive_seed;
use graphsearch::strategy::majority_repetitions;
use graphsearch::{dijkstra_all_pairs, generate, majority_tree_baseline, noisy_search, Family, GeneratorSpec};

fn main() -> graphsearch::Result<()> {
    let (p, delta) = (0.75, 0.1);
    let g = generate(&GeneratorSpec::new(Family::RandomTree { n: 256, max_degree: 4 }).seed(3))?;
    let d = dijkstra_all_pairs(&g);
    let n = g.vertex_count();
    let trials = 100;

    let (mut ok, mut queries, mut budget) = (0, 0, 0);
    for trial in 0..trials {
        let t = (derive_seed(&[trial]) % n as u64) as usize;
        let state = OracleState::new(t, CorrectPolicy::MinEdgeId, LiePolicy::UniformResponse, p, trial)?;
        let mut o = SimOracle::noisy(&g, &d, state);
        let mut out = noisy_search(&g, &d, p, delta, &mut o)?;
        ok += out.outcome.judge(t) as usize;
        queries += out.outcome.query_count;
        budget = out.budget;
    }
    println!("noisy search:    {ok}/{trials} correct, mean {} queries (budget {budget})", queries / trials as usize);

    let (mut ok, mut queries) = (0, 0);
    for trial in 0..trials {
        let t = (derive_seed(&[trial]) % n as u64) as usize;
        let state = OracleState::new(t, CorrectPolicy::MinEdgeId, LiePolicy::UniformResponse, p, trial)?;
        let mut o = SimOracle::noisy(&g, &d, state);
        let mut out = majority_tree_baseline(&g, &d, p, delta, &mut o)?;
        ok += out.judge(t) as usize;
        queries += out.query_count;
    }
    println!(
        "majority median: {ok}/{trials} correct, mean {} queries ({} repetitions per query)",
        queries / trials as usize,
        majority_repetitions(n, p, delta)
    );
    Ok(())
}
