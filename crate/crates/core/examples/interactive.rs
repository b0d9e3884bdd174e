//! A scripted person answering queries, the same loop `graphsearch
//! interactive` runs on a terminal. Bad lines are explained and re-asked.
//!
//!     cargo run --example interactive

use graphsearch::harness::interactive_session;
use graphsearch::solver::QueryModel;
use graphsearch::{generate, Family, GeneratorSpec};

fn main() -> graphsearch::Result<()> {
    let g = generate(&GeneratorSpec::new(Family::Path { n: 8 }))?;
    // thinking of vertex 6; the second line names an edge that does not exist
    let answers = "edge 3 4\nedge 5 7\nedge 5 6\ntarget\n";
    let mut screen = Vec::new();
    let out = interactive_session(&g, QueryModel::VertexQuery, answers.as_bytes(), &mut screen)?;
    for line in String::from_utf8_lossy(&screen).split_inclusive('\n') {
        print!("{line}");
    }
    assert_eq!(out.returned, Some(6));

    let tree = generate(&GeneratorSpec::new(Family::CompleteBinaryTree { n: 7 }))?;
    let mut screen = Vec::new();
    interactive_session(&tree, QueryModel::EdgeQueryTree, "side 0\nside 2\nside 2\nside 6\n".as_bytes(), &mut screen)?;
    print!("\n{}", String::from_utf8_lossy(&screen));
    Ok(())
}
