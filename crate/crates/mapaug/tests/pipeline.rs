use mapaug::cover::compute_d2;
use mapaug::exact::{f_value, opt_exact};
use mapaug::gen::{generate, Model};
use mapaug::graph::{is_spanning_2ec, Graph};
use mapaug::reduce::{detect_forbidden, reduce, Config, Kind, ReduceError, Solver};
use mapaug::report::solve;
use mapaug::stats::{Mode, Stats};
use mapaug::Rational;

fn within_bound(g: &Graph, weight: usize) -> bool {
    let opt = opt_exact(g, None).unwrap().weight;
    Rational::from_integer(weight as i64) <= f_value(opt)
}

#[test]
fn small_heavy_drives_glue_small_path_at_n24() {
    let mut hits = 0;
    for seed in 0..100 {
        let inst = generate(Model::SmallHeavy, 24, 0.0, seed).unwrap();
        let mut solver = Solver::new(Config::default());
        solver.pipeline(inst.graph()).unwrap();
        hits += usize::from(solver.stats.glue_small_path_runs > 0);
    }
    assert!(hits >= 50, "{hits} of 100 runs");
}

#[test]
fn small_heavy_reductions_are_feasible() {
    let mut divides = 0;
    for seed in 0..30 {
        let inst = generate(Model::SmallHeavy, 32, 0.03, seed).unwrap();
        let g = inst.graph();
        let (sol, stats) = reduce(g, &Config::default()).unwrap();
        assert!(is_spanning_2ec(g, &sol), "seed {seed}");
        divides += stats.divide_count();
        assert_eq!(stats.descent_violations, 0);
        assert!(sol.weight(g) >= compute_d2(g).unwrap().edges.weight(g));
    }
    assert!(divides > 0);
}

#[test]
fn two_triangles_sharing_a_vertex_split_at_the_cut_vertex() {
    let g = Graph::from_edges(
        5,
        &[
            (0, 1, 0),
            (1, 2, 1),
            (2, 0, 1),
            (0, 3, 1),
            (3, 4, 0),
            (4, 0, 1),
        ],
    );
    let mut stats = Stats::default();
    let found = detect_forbidden(&g, &Config::default(), &mut stats).unwrap();
    assert_eq!(found.kind, Kind::CutVertex);
    assert_eq!(found.vertices, vec![0]);
    let cfg = Config {
        exact_threshold: 2,
        ..Config::default()
    };
    let (sol, stats) = reduce(&g, &cfg).unwrap();
    assert_eq!(sol.len(), 6);
    assert_eq!(sol.weight(&g), 4);
    assert!(stats.divide_count() >= 1);
}

#[test]
fn low_threshold_reductions_meet_the_bound() {
    let cfg = Config {
        exact_threshold: 9,
        contractible_t: 4,
        ..Config::default()
    };
    for seed in 0..40 {
        let inst = generate(Model::Random, 11 + seed as usize % 4, 0.4, 300 + seed).unwrap();
        let g = inst.graph();
        let (sol, _) = reduce(g, &cfg).unwrap();
        assert!(is_spanning_2ec(g, &sol));
        assert!(within_bound(g, sol.weight(g)), "seed {seed}");
    }
}

#[test]
fn structured_instances_run_the_full_pipeline_strictly() {
    let strict = Config {
        mode: Mode::Strict,
        ..Config::default()
    };
    for seed in 0..6 {
        let inst = generate(Model::Structured, 20, 0.55, seed).unwrap();
        let g = inst.graph();
        let mut solver = Solver::new(strict.clone());
        let sol = solver.alg_structured(g).unwrap();
        assert!(is_spanning_2ec(g, &sol));
        assert_eq!(solver.stats.violations(), 0);
        assert!(sol.weight(g) as f64 <= 13.0 / 8.0 * compute_d2(g).unwrap().edges.weight(g) as f64);
    }
}

#[test]
fn unstructured_graphs_are_refused_by_the_structured_entry() {
    let square = Graph::from_edges(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]);
    assert!(matches!(
        Solver::new(Config::default()).alg_structured(&square),
        Err(ReduceError::NotStructured(_))
    ));
    // small-heavy wiring leaves cut vertices
    let inst = generate(Model::SmallHeavy, 24, 0.0, 1).unwrap();
    assert!(matches!(
        Solver::new(Config::default()).alg_structured(inst.graph()),
        Err(ReduceError::NotStructured(_))
    ));
}

#[test]
fn report_for_a_scale_instance() {
    let inst = generate(Model::Random, 120, 0.05, 9).unwrap();
    let (sol, report) = solve(inst.graph(), "random-120", &Config::default(), false).unwrap();
    assert!(report.feasible);
    assert_eq!(report.weight, sol.weight(inst.graph()));
    assert!(report.ratio_to_d2 >= 1.0);
    assert!(report.opt.is_none());
}
