use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mapaug::cover::compute_d2;
use mapaug::exact::{f_value, opt_exact};
use mapaug::gen::{generate, Model};
use mapaug::graph::{two_ec_violation, validate_map_instance, Disconnection, Graph};
use mapaug::io::{parse_instance, parse_solution, write_instance, write_solution};
use mapaug::reduce::Config;
use mapaug::report::{solve, RunReport};
use mapaug::stats::Mode;
use mapaug::Rational;

const PARSE: u8 = 2;
const INVALID: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mapaug",
    version,
    about = "Matching augmentation: 13/8-approximate 2-edge-connected spanning subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolverFlags {
    /// Solve simple instances with at most this many vertices exactly.
    #[arg(long, default_value_t = 20)]
    exact_threshold: usize,
    /// Largest vertex set tried as a contractible subgraph.
    #[arg(long, default_value_t = 12)]
    contractible_t: usize,
    /// Turn internal assertion failures into errors instead of counting them.
    #[arg(long)]
    strict: bool,
}

impl SolverFlags {
    fn config(&self) -> Config {
        Config {
            exact_threshold: self.exact_threshold,
            contractible_t: self.contractible_t,
            mode: if self.strict {
                Mode::Strict
            } else {
                Mode::Lenient
            },
            ..Config::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a run report.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also compute the exact optimum and check the bound.
        #[arg(long)]
        oracle: bool,
        /// Write the solution here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverFlags,
    },
    /// Print a minimum-weight 2-edge-cover.
    D2 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a solution file against an instance.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Report the gap to the optimum (instances up to --exact-threshold vertices).
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 20)]
        exact_threshold: usize,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long, default_value = "random")]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve a seeded corpus and print a table and summary.
    Bench {
        #[arg(long, default_value = "random")]
        model: Model,
        /// Smallest instance size.
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        /// Largest instance size.
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Edge density; omitted means a mix of 0.3, 0.5 and 0.7.
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare against the exact optimum.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        solver: SolverFlags,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    let g = parse_instance(&text).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))?;
    let inst =
        validate_map_instance(g).map_err(|e| fail(INVALID, format!("{}: {e}", path.display())))?;
    Ok(inst.into_graph())
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| fail(INTERNAL, format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve {
            input,
            json: as_json,
            oracle,
            output,
            solver,
        } => {
            let g = load(&input)?;
            let name = input.display().to_string();
            let (sol, report) = solve(&g, &name, &solver.config(), oracle)
                .map_err(|e| fail(INTERNAL, e.to_string()))?;
            if let Some(path) = &output {
                write(Some(path), &write_solution(&g, &sol))?;
            }
            if as_json {
                println!("{}", json(&report));
            } else {
                println!("{report}");
            }
            Ok(
                if report.feasible && report.bound_satisfied != Some(false) {
                    0
                } else {
                    INTERNAL
                },
            )
        }
        Command::D2 {
            input,
            json: as_json,
        } => {
            let g = load(&input)?;
            let d2 = compute_d2(&g).map_err(|e| fail(INTERNAL, e.to_string()))?;
            if as_json {
                #[derive(Serialize)]
                struct D2Report {
                    schema: &'static str,
                    weight: usize,
                    edges: Vec<usize>,
                }
                let r = D2Report {
                    schema: "mapaug.d2/1",
                    weight: d2.edges.weight(&g),
                    edges: d2.edges.iter().map(|e| e + 1).collect(),
                };
                println!("{}", json(&r));
            } else {
                print!("c minimum 2-edge-cover\n{}", write_solution(&g, &d2.edges));
            }
            Ok(0)
        }
        Command::Verify {
            input,
            solution,
            exact,
            exact_threshold,
        } => {
            let g = load(&input)?;
            let text = read(&solution)?;
            let sol = parse_solution(&text, &g)
                .map_err(|e| fail(PARSE, format!("{}: {e}", solution.display())))?;
            if let Some(d) = two_ec_violation(&g, &sol.edges) {
                let what = match d {
                    Disconnection::Bridge(e) => {
                        let ed = g.edge(e);
                        format!("edge {} ({} {}) is a bridge", e + 1, ed.u + 1, ed.v + 1)
                    }
                    Disconnection::Disconnected { a, b } => {
                        format!("vertices {} and {} are disconnected", a + 1, b + 1)
                    }
                };
                return Err(fail(INVALID, format!("not 2-edge-connected: {what}")));
            }
            let weight = sol.edges.weight(&g);
            if weight != sol.declared_weight {
                return Err(fail(
                    INVALID,
                    format!(
                        "declared weight {} but the edges weigh {weight}",
                        sol.declared_weight
                    ),
                ));
            }
            println!("ok: spanning 2-edge-connected, weight {weight}");
            if exact {
                if g.n() > exact_threshold {
                    println!(
                        "opt: skipped, {} vertices exceed --exact-threshold {exact_threshold}",
                        g.n()
                    );
                } else {
                    let opt = opt_exact(&g, None)
                        .map_err(|e| fail(INTERNAL, e.to_string()))?
                        .weight;
                    let within = Rational::from_integer(weight as i64) <= f_value(opt);
                    println!(
                        "opt: {opt}, gap {}, within max(13/8 opt - 2, opt): {within}",
                        weight as i64 - opt as i64
                    );
                }
            }
            Ok(0)
        }
        Command::Gen {
            model,
            n,
            density,
            seed,
            output,
        } => {
            let inst =
                generate(model, n, density, seed).map_err(|e| fail(INVALID, e.to_string()))?;
            let text = format!(
                "c {model} n={n} density={density} seed={seed}\n{}",
                write_instance(inst.graph())
            );
            write(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Bench {
            model,
            n_min,
            n_max,
            count,
            density,
            seed,
            oracle,
            json: as_json,
            solver,
        } => bench(
            model,
            n_min..=n_max,
            count,
            density,
            seed,
            oracle,
            as_json,
            &solver.config(),
        ),
    }
}

#[derive(Serialize)]
struct Summary {
    schema: &'static str,
    runs: usize,
    feasible: usize,
    checked: usize,
    within_bound: usize,
    mean_ratio_to_d2: f64,
    max_ratio_to_d2: f64,
    max_wall_ms: f64,
    fallbacks: u64,
    violations: u64,
    reports: Vec<RunReport>,
}

#[allow(clippy::too_many_arguments)]
fn bench(
    model: Model,
    sizes: std::ops::RangeInclusive<usize>,
    count: u64,
    density: Option<f64>,
    seed: u64,
    oracle: bool,
    as_json: bool,
    config: &Config,
) -> Result<u8, Failure> {
    let span = (sizes.end() + 1).saturating_sub(*sizes.start()).max(1) as u64;
    let mut reports = Vec::new();
    for i in 0..count {
        let n = sizes.start() + (i % span) as usize;
        let d = density.unwrap_or([0.3, 0.5, 0.7][(i / span % 3) as usize]);
        let s = seed + i;
        let inst = generate(model, n, d, s).map_err(|e| fail(INVALID, e.to_string()))?;
        let id = format!("{model}-n{n}-d{d}-s{s}");
        let (_, report) = solve(inst.graph(), &id, config, oracle)
            .map_err(|e| fail(INTERNAL, format!("{id}: {e}")))?;
        reports.push(report);
    }
    let runs = reports.len();
    let summary = Summary {
        schema: "mapaug.bench/1",
        runs,
        feasible: reports.iter().filter(|r| r.feasible).count(),
        checked: reports
            .iter()
            .filter(|r| r.bound_satisfied.is_some())
            .count(),
        within_bound: reports
            .iter()
            .filter(|r| r.bound_satisfied == Some(true))
            .count(),
        mean_ratio_to_d2: reports.iter().map(|r| r.ratio_to_d2).sum::<f64>() / runs.max(1) as f64,
        max_ratio_to_d2: reports.iter().map(|r| r.ratio_to_d2).fold(0.0, f64::max),
        max_wall_ms: reports.iter().map(|r| r.wall_ms).fold(0.0, f64::max),
        fallbacks: reports.iter().map(|r| r.counters.fallbacks()).sum(),
        violations: reports.iter().map(|r| r.counters.violations()).sum(),
        reports,
    };
    if as_json {
        println!("{}", json(&summary));
    } else {
        println!(
            "{:<34} {:>4} {:>5} {:>4} {:>6} {:>4} {:>6} {:>5} {:>9}",
            "instance", "n", "m", "d2", "weight", "opt", "ratio", "ok", "ms"
        );
        for r in &summary.reports {
            let opt = r.opt.map_or("-".to_string(), |o| o.to_string());
            let ok = match r.bound_satisfied {
                Some(b) => b && r.feasible,
                None => r.feasible,
            };
            println!(
                "{:<34} {:>4} {:>5} {:>4} {:>6} {:>4} {:>6.3} {:>5} {:>9.2}",
                r.instance, r.n, r.m, r.d2_weight, r.weight, opt, r.ratio_to_d2, ok, r.wall_ms
            );
        }
        println!();
        println!(
            "runs {}  feasible {}  within bound {}/{}",
            summary.runs, summary.feasible, summary.within_bound, summary.checked
        );
        println!(
            "ratio to d2 mean {:.4} max {:.4}  slowest {:.1} ms  fallbacks {}  violations {}",
            summary.mean_ratio_to_d2,
            summary.max_ratio_to_d2,
            summary.max_wall_ms,
            summary.fallbacks,
            summary.violations
        );
    }
    let all_good = summary.feasible == runs && summary.within_bound == summary.checked;
    Ok(if all_good { 0 } else { INTERNAL })
}
