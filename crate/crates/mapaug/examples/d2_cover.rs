//! Minimum 2-edge-covers: compute one, make it canonical, and list its
//! components, blocks and bridges.
//!
//! ```bash
//! cargo run --example d2_cover -- 14 3
//! ```

use mapaug::cover::{canonical_violations, canonicalize_d2, compute_d2, rho};
use mapaug::gen::{generate, Model};
use mapaug::graph::decompose;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(14, |s| s.parse().expect("n"));
    let seed: u64 = args.get(1).map_or(3, |s| s.parse().expect("seed"));
    let inst = generate(Model::Random, n, 0.25, seed).expect("generator");
    let g = inst.graph();

    let d2 = compute_d2(g).expect("2-edge-cover");
    println!(
        "D2 weight {}, {} edges, rho {}",
        d2.edges.weight(g),
        d2.edges.len(),
        rho(g, &d2.edges)
    );
    println!(
        "violations before canonicalizing: {}",
        canonical_violations(g, &d2.edges).len()
    );

    let (canon, cs) = canonicalize_d2(g, &d2).expect("canonical");
    println!(
        "after {} exchanges, rho trace {:?}",
        cs.exchanges, cs.rho_trace
    );
    println!(
        "violations after: {}",
        canonical_violations(g, &canon.edges).len()
    );

    let d = decompose(g, &canon.edges).expect("decomposition");
    for (i, c) in d.components.iter().enumerate() {
        println!(
            "component {i}: {:?} vertices {:?}, weight {}, {} blocks, bridges {:?}",
            c.class,
            c.vertices,
            c.weight,
            c.blocks.len(),
            c.bridges
        );
    }
}
