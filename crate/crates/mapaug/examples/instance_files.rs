//! Generating instances from each model, writing them in the text format,
//! reading them back, and round-tripping a solution file.
//!
//! ```bash
//! cargo run --release --example instance_files
//! ```

use mapaug::gen::{generate, Model};
use mapaug::graph::validate_map_instance;
use mapaug::io::{parse_instance, parse_solution, write_instance, write_solution};
use mapaug::reduce::{reduce, Config};

fn main() {
    for (model, n, density) in [
        (Model::Random, 12, 0.4),
        (Model::SmallHeavy, 16, 0.05),
        (Model::Structured, 20, 0.55),
    ] {
        let inst = generate(model, n, density, 11).expect("generator");
        let text = write_instance(inst.graph());
        let back = validate_map_instance(parse_instance(&text).expect("parse")).expect("valid");
        assert_eq!(back.graph(), inst.graph());
        println!(
            "{model}: n = {n}, {} lines, round trip ok",
            text.lines().count()
        );
    }

    let inst = generate(Model::Random, 8, 0.5, 1).expect("generator");
    let g = inst.graph();
    print!("{}", write_instance(g));
    let (sol, _) = reduce(g, &Config::default()).expect("solver");
    let text = write_solution(g, &sol);
    print!("{text}");
    let parsed = parse_solution(&text, g).expect("solution");
    assert_eq!(parsed.edges, sol);
    assert_eq!(parsed.declared_weight, sol.weight(g));
}
