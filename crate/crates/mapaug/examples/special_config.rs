//! Merging the components of a bridgeless 2-edge-cover until none of the
//! obstructions (good cycles, small merges, open 3-augmenting paths,
//! medium components) is left.
//!
//! ```bash
//! cargo run --release --example special_config -- 30
//! ```

use mapaug::bridge::cover_all_bridges;
use mapaug::cover::{canonicalize_d2, compute_d2};
use mapaug::gen::{generate, Model};
use mapaug::graph::decompose;
use mapaug::special::{build_special_config, obstructions, ComponentCredits};
use mapaug::stats::{Mode, Stats};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(30, |s| s.parse().expect("n"));
    for seed in 0..2000 {
        let inst = generate(Model::Random, n, 0.12, seed).expect("generator");
        let g = inst.graph();
        let mut stats = Stats::default();
        let d2 = compute_d2(g).expect("2-edge-cover");
        let Ok((canon, _)) = canonicalize_d2(g, &d2) else {
            continue;
        };
        let Ok(covered) = cover_all_bridges(g, &canon, Mode::Lenient, &mut stats) else {
            continue;
        };
        let dec = decompose(g, &covered.cover.edges).expect("decomposition");
        let found = obstructions(g, &covered.cover.edges).expect("quotient");
        if dec.components.len() < 3 || found.none() {
            continue;
        }
        let totals = covered.ledger.component_totals(&dec);
        let credits = ComponentCredits::from_pairs(
            dec.components
                .iter()
                .map(|c| c.vertices.clone())
                .zip(totals),
        );

        println!(
            "seed {seed}: bridgeless cover with {} components, weight {}",
            dec.components.len(),
            covered.cover.edges.weight(g)
        );
        println!("obstructions {found:?}");
        let Ok(out) =
            build_special_config(g, &covered.cover, Some(credits), Mode::Lenient, &mut stats)
        else {
            continue;
        };
        for step in &out.steps {
            println!("  {step:?}");
        }
        let end = decompose(g, &out.cover.edges).expect("decomposition");
        println!(
            "special configuration: {} components, weight {}, credits {}",
            end.components.len(),
            out.cover.edges.weight(g),
            out.credits.total()
        );
        println!(
            "obstructions {:?}",
            obstructions(g, &out.cover.edges).expect("quotient")
        );
        return;
    }
    println!("no suitable instance found");
}
