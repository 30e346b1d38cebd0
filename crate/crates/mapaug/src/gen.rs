//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{is_spanning_2ec, validate_map_instance, Graph, MapInstance};
use crate::reduce::{detect_forbidden, Config, STRUCTURED_MIN_VERTICES};
use crate::stats::Stats;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("no {model} instance with n = {n} after {tries} tries")]
    GenerationFailed {
        model: Model,
        n: usize,
        tries: usize,
    },
    #[error("n = {0} is below 3")]
    TooSmall(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `G(n, p)` unit graph, 2-edge-connected, with a random matching set
    /// to weight zero.
    Random,
    /// Disjoint alternating 4-cycles hung off each other in a random tree,
    /// plus sparse random unit edges.
    SmallHeavy,
    /// `Random` instances with no forbidden configuration (n >= 20).
    Structured,
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Model, String> {
        match s {
            "random" => Ok(Model::Random),
            "small-heavy" => Ok(Model::SmallHeavy),
            "structured" => Ok(Model::Structured),
            other => Err(format!(
                "unknown model {other:?} (random, small-heavy, structured)"
            )),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Random => "random",
            Model::SmallHeavy => "small-heavy",
            Model::Structured => "structured",
        })
    }
}

pub const RETRIES: usize = 10_000;

pub fn generate(model: Model, n: usize, density: f64, seed: u64) -> Result<MapInstance, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match model {
        Model::Random => random(&mut rng, n, density),
        Model::SmallHeavy => Some(small_heavy(&mut rng, n, density)),
        Model::Structured => structured(&mut rng, n, density),
    };
    let g = g.ok_or(GenError::GenerationFailed {
        model,
        n,
        tries: RETRIES,
    })?;
    Ok(validate_map_instance(g).expect("generators emit valid instances"))
}

fn random(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Option<Graph> {
    let p = p.clamp(0.0, 1.0);
    for _ in 0..RETRIES {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        let mut g = Graph::new(n);
        for &(u, v) in &pairs {
            g.add_edge(u, v, 1);
        }
        if !is_spanning_2ec(&g, &g.full_set()) {
            continue;
        }
        return Some(with_random_matching(rng, n, &pairs));
    }
    None
}

/// Rebuilds the graph with a greedy matching over shuffled edges at weight 0.
fn with_random_matching(rng: &mut ChaCha8Rng, n: usize, pairs: &[(usize, usize)]) -> Graph {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.shuffle(rng);
    let mut matched = vec![false; n];
    let mut zero = vec![false; pairs.len()];
    for i in order {
        let (u, v) = pairs[i];
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            zero[i] = true;
        }
    }
    let mut g = Graph::new(n);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        g.add_edge(u, v, if zero[i] { 0 } else { 1 });
    }
    g
}

fn small_heavy(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
    let squares = n / 4;
    let mut g = Graph::new(n);
    if squares == 0 {
        for v in 0..n {
            g.add_edge(v, (v + 1) % n, if v == 0 { 0 } else { 1 });
        }
        return g;
    }
    for s in 0..squares {
        let b = 4 * s;
        g.add_edge(b, b + 1, 0);
        g.add_edge(b + 1, b + 2, 1);
        g.add_edge(b + 2, b + 3, 0);
        g.add_edge(b + 3, b, 1);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |pairs: &mut Vec<(usize, usize)>, g: &Graph, u: usize, v: usize| -> bool {
        let key = (u.min(v), u.max(v));
        if u == v || !g.edges_between(u, v).is_empty() || pairs.contains(&key) {
            return false;
        }
        pairs.push(key);
        true
    };
    // each square after the first hangs off an earlier one: both ends of
    // one of its unit edges go to one vertex or to the ends of a zero edge
    // of the parent, never to the ends of a spanning path of the parent
    for s in 1..squares {
        let parent = rng.gen_range(0..s);
        let (c1, c2) = if rng.gen_bool(0.5) {
            (4 * s + 1, 4 * s + 2)
        } else {
            (4 * s + 3, 4 * s)
        };
        let p1 = 4 * parent + rng.gen_range(0..4);
        add(&mut pairs, &g, c1, p1);
        let p2 = if rng.gen_bool(0.5) { p1 } else { p1 ^ 1 };
        add(&mut pairs, &g, c2, p2);
    }
    // leftover vertices hang off two distinct earlier vertices
    for x in 4 * squares..n {
        let mut targets: Vec<usize> = (0..x).collect();
        targets.shuffle(rng);
        add(&mut pairs, &g, x, targets[0]);
        add(&mut pairs, &g, x, targets[1]);
    }
    for u in 0..4 * squares {
        for v in u + 1..4 * squares {
            if u / 4 != v / 4 && rng.gen_bool(density.clamp(0.0, 1.0)) {
                add(&mut pairs, &g, u, v);
            }
        }
    }
    for (u, v) in pairs {
        g.add_edge(u, v, 1);
    }
    g
}

fn structured(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Option<Graph> {
    if n < STRUCTURED_MIN_VERTICES {
        return None;
    }
    let cfg = Config::default();
    for _ in 0..RETRIES / 100 {
        let g = random(rng, n, p)?;
        let mut stats = Stats::default();
        if detect_forbidden(&g, &cfg, &mut stats).is_none() && stats.contractible_cap_hits == 0 {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a = generate(Model::Random, 8, 0.5, 7).unwrap();
        let b = generate(Model::Random, 8, 0.5, 7).unwrap();
        assert_eq!(a.graph().edges(), b.graph().edges());
    }

    #[test]
    fn small_heavy_is_valid_and_2ec() {
        for seed in 0..20 {
            for n in [3, 5, 8, 13, 24] {
                let g = generate(Model::SmallHeavy, n, 0.05, seed).unwrap();
                assert!(is_spanning_2ec(g.graph(), &g.graph().full_set()));
            }
        }
    }

    #[test]
    fn tiny_n_is_rejected() {
        assert_eq!(
            generate(Model::Random, 2, 0.5, 0).unwrap_err(),
            GenError::TooSmall(2)
        );
    }
}
