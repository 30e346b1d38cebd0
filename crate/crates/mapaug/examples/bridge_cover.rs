//! Covering the bridges of a canonical 2-edge-cover with pseudo-ears, and
//! the credit ledger that pays for them.
//!
//! ```bash
//! cargo run --release --example bridge_cover
//! ```

use mapaug::bridge::cover_all_bridges;
use mapaug::cover::{canonicalize_d2, compute_d2};
use mapaug::gen::{generate, Model};
use mapaug::graph::decompose;
use mapaug::stats::{Mode, Stats};

fn main() {
    for seed in 0..500 {
        let inst = generate(Model::Random, 16, 0.2, seed).expect("generator");
        let g = inst.graph();
        let d2 = compute_d2(g).expect("2-edge-cover");
        // canonical exchanges may not exist off structured graphs
        let Ok((canon, _)) = canonicalize_d2(g, &d2) else {
            continue;
        };
        let before = decompose(g, &canon.edges).expect("decomposition");
        if before.is_bridgeless() {
            continue;
        }
        let mut stats = Stats::default();
        let out = cover_all_bridges(g, &canon, Mode::Lenient, &mut stats).expect("bridge covering");
        let after = decompose(g, &out.cover.edges).expect("decomposition");
        println!(
            "seed {seed}: {} bridges in {} components",
            before.bridge_count(),
            before.components.len()
        );
        for ear in &out.ears {
            println!(
                "  bridge {} covered by edges {:?}, condition {:?}",
                ear.bridge, ear.edges, ear.condition
            );
        }
        println!(
            "after: {} bridges, {} components",
            after.bridge_count(),
            after.components.len()
        );
        println!(
            "weight {} -> {}, credit total {}, slack {}",
            canon.edges.weight(g),
            out.cover.edges.weight(g),
            out.ledger.total(),
            out.slack
        );
        return;
    }
    println!("no cover with bridges in the first 500 seeds");
}
