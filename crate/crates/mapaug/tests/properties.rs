use proptest::prelude::*;

use mapaug::cover::{canonicalize_d2, compute_d2};
use mapaug::exact::{f_value, opt_exact};
use mapaug::gen::{generate, Model};
use mapaug::graph::{is_spanning_2ec, validate_map_instance, MapInstance};
use mapaug::io::{parse_instance, parse_solution, write_instance, write_solution};
use mapaug::matching::max_matching;
use mapaug::reduce::{reduce, Config};
use mapaug::Rational;

fn instance(max_n: usize) -> impl Strategy<Value = MapInstance> {
    (4..=max_n, 0.25f64..0.8, any::<u64>(), prop::bool::ANY).prop_map(|(n, p, seed, heavy)| {
        let model = if heavy {
            Model::SmallHeavy
        } else {
            Model::Random
        };
        generate(model, n, p * if heavy { 0.2 } else { 1.0 }, seed).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_feasible_and_within_bound(inst in instance(11)) {
        let g = inst.graph();
        let cfg = Config { exact_threshold: 6, contractible_t: 1, ..Config::default() };
        let (sol, _) = reduce(g, &cfg).unwrap();
        prop_assert!(is_spanning_2ec(g, &sol));
        let opt = opt_exact(g, None).unwrap().weight;
        prop_assert!(sol.weight(g) >= opt);
        let (default_sol, _) = reduce(g, &Config::default()).unwrap();
        prop_assert!(Rational::from_integer(default_sol.weight(g) as i64) <= f_value(opt));
    }

    #[test]
    fn d2_is_a_lower_bound_and_canonical_keeps_weight(inst in instance(16)) {
        let g = inst.graph();
        let d2 = compute_d2(g).unwrap();
        for v in 0..g.n() {
            prop_assert!(g.incident(v).iter().filter(|&&e| d2.edges.contains(e)).count() >= 2);
        }
        let (sol, _) = reduce(g, &Config::default()).unwrap();
        prop_assert!(d2.edges.weight(g) <= sol.weight(g));
        if let Ok((canon, _)) = canonicalize_d2(g, &d2) {
            prop_assert_eq!(canon.edges.weight(g), d2.edges.weight(g));
        }
    }

    #[test]
    fn matching_is_a_matching(inst in instance(20)) {
        let g = inst.graph();
        let m = max_matching(g);
        let mut used = vec![false; g.n()];
        for &e in &m {
            let ed = g.edge(e);
            prop_assert!(!used[ed.u] && !used[ed.v]);
            used[ed.u] = true;
            used[ed.v] = true;
        }
        prop_assert!(m.len() >= g.zero_edges().len());
    }

    #[test]
    fn files_round_trip(inst in instance(24)) {
        let g = inst.graph();
        let back = validate_map_instance(parse_instance(&write_instance(g)).unwrap()).unwrap();
        prop_assert_eq!(back.graph(), g);
        let (sol, _) = reduce(g, &Config::default()).unwrap();
        let parsed = parse_solution(&write_solution(g, &sol), g).unwrap();
        prop_assert_eq!(parsed.edges, sol.clone());
        prop_assert_eq!(parsed.declared_weight, sol.weight(g));
    }
}
