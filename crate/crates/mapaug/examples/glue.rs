//! Gluing a special configuration into one 2-edge-connected subgraph, on
//! an instance made of many alternating 4-cycles, and checking the result
//! against `||S|| + 2 n_l + 4/3 n_s - 2`.
//!
//! ```bash
//! cargo run --release --example glue -- 24 4
//! ```

use mapaug::cover::{Provenance, TwoEdgeCover};
use mapaug::gen::{generate, Model};
use mapaug::glue::{glue, glue_bound};
use mapaug::graph::{decompose, is_spanning_2ec, EdgeSet};
use mapaug::stats::{Mode, Stats};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(24, |s| s.parse().expect("n"));
    let seed: u64 = args.get(1).map_or(4, |s| s.parse().expect("seed"));
    let inst = generate(Model::SmallHeavy, n, 0.0, seed).expect("generator");
    let g = inst.graph();

    // the alternating squares themselves form a special configuration
    let mut squares = EdgeSet::new(g.m());
    for e in 0..4 * (n / 4) {
        squares.insert(e);
    }
    assert!(n.is_multiple_of(4), "use n divisible by 4");
    let s = TwoEdgeCover {
        edges: squares,
        provenance: Provenance::Special,
    };
    let d = decompose(g, &s.edges).expect("decomposition");
    println!(
        "{} components, weight {}",
        d.components.len(),
        s.edges.weight(g)
    );

    let mut stats = Stats::default();
    let out = glue(g, &s, Mode::Lenient, &mut stats).expect("glue");
    println!("steps {:?}", out.steps);
    println!(
        "glued weight {}, bound {}, 2-edge-connected {}",
        out.weight(g),
        glue_bound(g, &s.edges).expect("bound"),
        is_spanning_2ec(g, &out.edges)
    );
}
