//! Which reducible configuration the solver finds first, across a batch
//! of random instances, and how the graph is divided for it.
//!
//! ```bash
//! cargo run --release --example forbidden_configs -- 22 40
//! ```

use std::collections::BTreeMap;

use mapaug::gen::{generate, Model};
use mapaug::reduce::{detect_forbidden, divide, Config};
use mapaug::stats::Stats;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(22, |s| s.parse().expect("n"));
    let count: u64 = args.get(1).map_or(40, |s| s.parse().expect("count"));
    let cfg = Config::default();

    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut shown = false;
    for seed in 0..count {
        let inst = generate(Model::Random, n, 0.35, seed).expect("generator");
        let g = inst.graph();
        let mut stats = Stats::default();
        let Some(found) = detect_forbidden(g, &cfg, &mut stats) else {
            *seen.entry("none".into()).or_default() += 1;
            continue;
        };
        *seen.entry(found.kind.to_string()).or_default() += 1;
        if !shown {
            shown = true;
            let d = divide(g, &found);
            println!("seed {seed}: {} at {:?}", found.kind, found.vertices);
            for (i, part) in d.parts.iter().enumerate() {
                println!(
                    "  part {i}: {} vertices, {} edges",
                    part.graph.n(),
                    part.graph.m()
                );
            }
        }
    }
    println!("first configuration found, over {count} instances with n = {n}:");
    for (kind, k) in seen {
        println!("  {kind:<14} {k}");
    }
}
