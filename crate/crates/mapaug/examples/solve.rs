//! Solve a random instance and compare the answer with the 2-edge-cover
//! lower bound and, for small sizes, the exact optimum.
//!
//! ```bash
//! cargo run --release --example solve -- 60 0.1 7
//! ```

use mapaug::cover::compute_d2;
use mapaug::exact::{f_value, opt_exact};
use mapaug::gen::{generate, Model};
use mapaug::graph::is_spanning_2ec;
use mapaug::reduce::{reduce, Config};
use mapaug::Rational;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(16, |s| s.parse().expect("n"));
    let p: f64 = args.get(1).map_or(0.3, |s| s.parse().expect("density"));
    let seed: u64 = args.get(2).map_or(1, |s| s.parse().expect("seed"));

    let inst = generate(Model::Random, n, p, seed).expect("generator");
    let g = inst.graph();
    let (sol, stats) = reduce(g, &Config::default()).expect("solver");
    let d2 = compute_d2(g).expect("2-edge-cover");

    println!(
        "n = {}, m = {}, zero edges = {}",
        g.n(),
        g.m(),
        g.zero_edges().len()
    );
    println!(
        "solution weight {} ({} edges), 2-edge-cover bound {}",
        sol.weight(g),
        sol.len(),
        d2.edges.weight(g)
    );
    println!(
        "spanning and 2-edge-connected: {}",
        is_spanning_2ec(g, &sol)
    );
    println!(
        "recursion depth {}, divides {:?}",
        stats.max_depth, stats.divides
    );

    if n <= 20 {
        let opt = opt_exact(g, None).expect("exact").weight;
        let ok = Rational::from_integer(sol.weight(g) as i64) <= f_value(opt);
        println!(
            "opt {opt}, bound max(13/8 opt - 2, opt) = {}, met: {ok}",
            f_value(opt)
        );
    }
}
