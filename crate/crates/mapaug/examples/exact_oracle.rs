//! The brute-force oracles: minimum-weight 2-edge-connected spanning
//! subgraph and minimum 2-edge-cover, on a small instance.
//!
//! ```bash
//! cargo run --release --example exact_oracle -- 10 5
//! ```

use mapaug::exact::{all_solutions_of_weight, f_value, min_2edge_cover_bruteforce, opt_exact};
use mapaug::gen::{generate, Model};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(9, |s| s.parse().expect("n"));
    let seed: u64 = args.get(1).map_or(5, |s| s.parse().expect("seed"));
    let inst = generate(Model::Random, n, 0.45, seed).expect("generator");
    let g = inst.graph();

    let best = opt_exact(g, None).expect("exact");
    println!("n = {}, m = {}", g.n(), g.m());
    println!(
        "opt {} after {} search nodes, witness {:?}",
        best.weight,
        best.nodes_explored,
        best.witness.iter().collect::<Vec<_>>()
    );
    println!(
        "optimal solutions: {}",
        all_solutions_of_weight(g, best.weight).len()
    );
    println!(
        "minimum 2-edge-cover weight {}",
        min_2edge_cover_bruteforce(g).expect("cover")
    );
    println!(
        "approximation target max(13/8 opt - 2, opt) = {}",
        f_value(best.weight)
    );
}
