//! Maximum matchings and degree-constrained subgraphs with the blossom
//! algorithm.
//!
//! ```bash
//! cargo run --example matching
//! ```

use mapaug::graph::Graph;
use mapaug::matching::{max_degree_constrained_subgraph, max_matching};

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, 1));
        edges.push((i, i + 5, 1));
        edges.push((i + 5, (i + 2) % 5 + 5, 1));
    }
    Graph::from_edges(10, &edges)
}

fn main() {
    let g = petersen();
    let m = max_matching(&g);
    println!("Petersen graph: maximum matching of size {}", m.len());
    for e in &m {
        let ed = g.edge(*e);
        println!("  {} - {}", ed.u, ed.v);
    }

    // every vertex may keep two edges: a 2-factor if one exists
    let f = max_degree_constrained_subgraph(&g, &[2; 10]).expect("b-matching");
    println!(
        "degree <= 2 subgraph with {} edges (a 2-factor has 10)",
        f.len()
    );

    // odd cycle: one vertex always stays exposed
    let c5 = Graph::from_edges(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)]);
    println!(
        "5-cycle: maximum matching of size {}",
        max_matching(&c5).len()
    );
}
