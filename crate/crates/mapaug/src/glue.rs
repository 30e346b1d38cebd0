//! Gluing the components of a special configuration into one spanning
//! 2-edge-connected subgraph: good cycles first, then open 2-augmenting
//! paths, then two stacked closed 2-augmenting paths.

use thiserror::Error;

use crate::cover::TwoEdgeCover;
use crate::graph::{decompose, is_spanning_2ec, EdgeId, EdgeSet, Graph, GraphError, SizeClass};
use crate::special::{
    apply_merge, find_good_cycle, ComponentCredits, Flavor, Merge, Merged, Quotient, Scheme,
    Shortcut, SpecialError,
};
use crate::stats::{Mode, Stats};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlueError {
    #[error("{components} components left and no good cycle, open 2-augmenting path or stacked pair; closed 2-augmenting arcs {arcs:?}")]
    NoObstruction {
        components: usize,
        arcs: Vec<(usize, usize)>,
    },
    #[error("glued weight {weight} exceeds the bound {bound}")]
    BoundViolated { weight: usize, bound: Rational },
    #[error("merge left a component {have} short of its credit")]
    CreditDeficit { have: Rational },
    #[error("glued subgraph is not spanning 2-edge-connected")]
    NotConnected,
    #[error(transparent)]
    Merge(#[from] SpecialError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `x1 e1 x2 e2 x3` with `x2` small, `x1 != x3`, and a spanning path of
/// `x2` between the ends of `e1` and `e2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugPath2 {
    pub nodes: [usize; 3],
    pub edges: [EdgeId; 2],
    pub path: Shortcut,
}

/// An arc `from -> to` of the auxiliary digraph: a closed 2-augmenting
/// path `to e from e' to` through the small node `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedArc {
    pub from: usize,
    pub to: usize,
    pub edges: [EdgeId; 2],
    pub path: Shortcut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlueStep {
    GoodCycle(Flavor),
    Open2Aug,
    Stacked,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueOutcome {
    pub edges: EdgeSet,
    pub steps: Vec<GlueStep>,
    /// `||S|| + 2 n_l + 4/3 n_s - 2` for the input configuration.
    pub bound: Rational,
}

impl GlueOutcome {
    pub fn weight(&self, g: &Graph) -> usize {
        self.edges.weight(g)
    }
}

fn open_2aug_candidates(g: &Graph, q: &Quotient) -> Vec<AugPath2> {
    let mut out = Vec::new();
    for x2 in 0..q.len() {
        if q.nodes[x2].class != SizeClass::Small {
            continue;
        }
        let links = &q.links[x2];
        for (i, &(e1, x1)) in links.iter().enumerate() {
            for &(e2, x3) in &links[i + 1..] {
                if x1 == x3 {
                    continue;
                }
                let (a, b) = (q.end_in(g, x2, e1), q.end_in(g, x2, e2));
                if let Some(s) = q.shortcut(x2, a, b) {
                    out.push(AugPath2 {
                        nodes: [x1, x2, x3],
                        edges: [e1, e2],
                        path: s.clone(),
                    });
                }
            }
        }
    }
    out
}

pub fn find_open_2aug(g: &Graph, q: &Quotient) -> Option<AugPath2> {
    open_2aug_candidates(g, q).into_iter().next()
}

/// The path plus a connector from `x1` to `x3` avoiding `x2`.
pub fn open_2aug_merge(q: &Quotient, p: &AugPath2) -> Option<Merge> {
    let [x1, x2, x3] = p.nodes;
    let mut forbidden = vec![false; q.len()];
    forbidden[x2] = true;
    let (nodes, edges) = q.path(x1, x3, &forbidden)?;
    let mut nodes: Vec<usize> = nodes.into_iter().chain([x2]).collect();
    nodes.sort_unstable();
    let add = p
        .edges
        .iter()
        .copied()
        .chain(edges)
        .chain(p.path.path.iter().copied())
        .collect();
    Some(Merge {
        add,
        remove: sell(q, x2, &p.path),
        nodes,
        groups: 1,
    })
}

fn sell(q: &Quotient, x: usize, keep: &Shortcut) -> Vec<EdgeId> {
    q.nodes[x]
        .unit_edges
        .iter()
        .copied()
        .filter(|e| !keep.path.contains(e))
        .collect()
}

/// Arcs of the auxiliary digraph over the nodes of `G/H`.
pub fn closed_arcs(g: &Graph, q: &Quotient) -> Vec<ClosedArc> {
    let mut out = Vec::new();
    for from in 0..q.len() {
        if q.nodes[from].class != SizeClass::Small {
            continue;
        }
        let links = &q.links[from];
        for (i, &(e, to)) in links.iter().enumerate() {
            for &(f, to2) in &links[i + 1..] {
                if to != to2 {
                    continue;
                }
                let (a, b) = (q.end_in(g, from, e), q.end_in(g, from, f));
                if let Some(s) = q.shortcut(from, a, b) {
                    if !out.iter().any(|c: &ClosedArc| c.from == from && c.to == to) {
                        out.push(ClosedArc {
                            from,
                            to,
                            edges: [e, f],
                            path: s.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// A directed path `first.from -> first.to = second.from -> second.to`
/// with distinct ends.
pub fn find_stacked(arcs: &[ClosedArc]) -> Option<(ClosedArc, ClosedArc)> {
    for a in arcs {
        for b in arcs {
            if a.to == b.from && b.to != a.from {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

pub fn stacked_merge(q: &Quotient, first: &ClosedArc, second: &ClosedArc) -> Merge {
    let mut nodes = vec![first.from, first.to, second.to];
    nodes.sort_unstable();
    let mut remove = sell(q, first.from, &first.path);
    remove.extend(sell(q, second.from, &second.path));
    Merge {
        add: first
            .edges
            .iter()
            .chain(&second.edges)
            .chain(&first.path.path)
            .chain(&second.path.path)
            .copied()
            .collect(),
        remove,
        nodes,
        groups: 1,
    }
}

/// A cycle of `G/H` through the lowest node and one of its neighbours,
/// merged without savings.
fn fallback_merge(g: &Graph, q: &Quotient) -> Option<Merge> {
    use crate::special::{cycle_through_anchors, Anchor};
    let banned = vec![false; q.len()];
    for x in 0..q.len() {
        for &(_, y) in &q.links[x] {
            if let Some(c) =
                cycle_through_anchors(g, q, &Anchor::Whole(x), &Anchor::Whole(y), &banned)
            {
                return Some(Merge {
                    add: c.edges,
                    remove: Vec::new(),
                    nodes: c.nodes,
                    groups: 1,
                });
            }
        }
    }
    None
}

/// `||S|| + 2 n_l + 4/3 n_s - 2`, with medium components (absent in a
/// special configuration) charged 15/8.
pub fn glue_bound(g: &Graph, s: &EdgeSet) -> Result<Rational, GraphError> {
    let d = decompose(g, s)?;
    let mut bound = Rational::from_integer(s.weight(g) as i64 - 2);
    for c in &d.components {
        bound += Scheme::Glue.minimum(c.class);
    }
    if d.components.len() == 1 {
        // nothing to glue; the configuration itself is returned
        bound = Rational::from_integer(s.weight(g) as i64).max(bound);
    }
    Ok(bound)
}

/// Glues a special configuration `s` into a spanning 2-edge-connected
/// subgraph of weight at most [`glue_bound`].
pub fn glue(
    g: &Graph,
    s: &TwoEdgeCover,
    mode: Mode,
    stats: &mut Stats,
) -> Result<GlueOutcome, GlueError> {
    stats.glue_calls += 1;
    let bound = glue_bound(g, &s.edges)?;
    let mut cover = s.edges.clone();
    let q0 = Quotient::new(g, &cover)?;
    let mut credits = ComponentCredits::minimum(&q0, Scheme::Glue);
    let mut steps = Vec::new();
    loop {
        let q = Quotient::new(g, &cover)?;
        if q.len() <= 1 {
            break;
        }
        let (step, merged) = next_merge(g, &cover, &q, &credits, mode)?;
        if merged.shortfall > Rational::from_integer(0) {
            if mode == Mode::Strict {
                return Err(GlueError::CreditDeficit {
                    have: -merged.shortfall,
                });
            }
            stats.credit_deficits += 1;
        }
        match step {
            GlueStep::GoodCycle(_) => stats.glue_good_cycles += 1,
            GlueStep::Open2Aug => stats.glue_open_2aug += 1,
            GlueStep::Stacked => stats.glue_stacked += 1,
            GlueStep::Fallback => stats.glue_fallbacks += 1,
        }
        steps.push(step);
        cover = merged.cover;
        credits = merged.credits;
    }
    if steps
        .iter()
        .any(|s| matches!(s, GlueStep::Open2Aug | GlueStep::Stacked))
    {
        stats.glue_small_path_runs += 1;
    }
    if !is_spanning_2ec(g, &cover) {
        return Err(GlueError::NotConnected);
    }
    let weight = cover.weight(g);
    if Rational::from_integer(weight as i64) > bound {
        if mode == Mode::Strict {
            return Err(GlueError::BoundViolated { weight, bound });
        }
        stats.glue_bound_violations += 1;
    }
    Ok(GlueOutcome {
        edges: cover,
        steps,
        bound,
    })
}

fn next_merge(
    g: &Graph,
    cover: &EdgeSet,
    q: &Quotient,
    credits: &ComponentCredits,
    mode: Mode,
) -> Result<(GlueStep, Merged), GlueError> {
    let apply = |m: &Merge| apply_merge(g, cover, q, credits, m, Scheme::Glue);
    if let Some(c) = find_good_cycle(g, q) {
        return Ok((GlueStep::GoodCycle(c.flavor), apply(&c.to_merge(q))?));
    }
    for p in open_2aug_candidates(g, q) {
        if let Some(m) = open_2aug_merge(q, &p) {
            if let Ok(merged) = apply(&m) {
                return Ok((GlueStep::Open2Aug, merged));
            }
        }
    }
    let arcs = closed_arcs(g, q);
    if let Some((a, b)) = find_stacked(&arcs) {
        return Ok((GlueStep::Stacked, apply(&stacked_merge(q, &a, &b))?));
    }
    let obstruction = GlueError::NoObstruction {
        components: q.len(),
        arcs: arcs.iter().map(|a| (a.from, a.to)).collect(),
    };
    if mode == Mode::Strict {
        return Err(obstruction);
    }
    let m = fallback_merge(g, q).ok_or(obstruction)?;
    Ok((GlueStep::Fallback, apply(&m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Provenance;

    fn add_small(g: &mut Graph, base: usize) -> Vec<EdgeId> {
        (0..4)
            .map(|i| g.add_edge(base + i, base + (i + 1) % 4, ((i + 1) % 2) as u8))
            .collect()
    }

    fn add_large(g: &mut Graph, base: usize) -> Vec<EdgeId> {
        (0..4)
            .map(|i| g.add_edge(base + i, base + (i + 1) % 4, 1))
            .collect()
    }

    fn special(g: &Graph, ids: Vec<EdgeId>) -> TwoEdgeCover {
        TwoEdgeCover {
            edges: EdgeSet::from_ids(g.m(), ids),
            provenance: Provenance::Special,
        }
    }

    #[test]
    fn single_component_is_returned_unchanged() {
        let mut g = Graph::new(4);
        let h = add_large(&mut g, 0);
        let s = special(&g, h);
        let mut stats = Stats::default();
        let out = glue(&g, &s, Mode::Strict, &mut stats).unwrap();
        assert_eq!(out.edges, s.edges);
        assert!(out.steps.is_empty());
    }

    #[test]
    fn two_large_squares_glue_by_a_good_cycle() {
        let mut g = Graph::new(8);
        let mut h = add_large(&mut g, 0);
        h.extend(add_large(&mut g, 4));
        g.add_edge(0, 4, 1);
        g.add_edge(2, 6, 1);
        let s = special(&g, h);
        let mut stats = Stats::default();
        let out = glue(&g, &s, Mode::Strict, &mut stats).unwrap();
        assert_eq!(out.steps, vec![GlueStep::GoodCycle(Flavor::TwoLarge)]);
        assert_eq!(out.weight(&g), 10);
        assert_eq!(out.bound, Rational::from_integer(10));
    }

    #[test]
    fn stacked_closed_paths_glue_three_nodes() {
        // small x_i = 0..3 hangs off small x_j = 4..7, which hangs off
        // small x_k = 8..11
        let mut g = Graph::new(12);
        let mut h = add_small(&mut g, 0);
        h.extend(add_small(&mut g, 4));
        h.extend(add_small(&mut g, 8));
        // x_i unit edge 0-1 to x_j vertices 4 and 6 (not a shortcut pair of x_j)
        g.add_edge(0, 4, 1);
        g.add_edge(1, 6, 1);
        // 6 and 7 are the ends of a unit edge of x_j
        g.add_edge(6, 8, 1);
        g.add_edge(7, 8, 1);
        let s = special(&g, h);
        let q = Quotient::new(&g, &s.edges).unwrap();
        let arcs = closed_arcs(&g, &q);
        assert!(find_stacked(&arcs).is_some(), "arcs {arcs:?}");
        let mut stats = Stats::default();
        let out = glue(&g, &s, Mode::Strict, &mut stats).unwrap();
        assert_eq!(out.steps, vec![GlueStep::Stacked]);
        assert!(is_spanning_2ec(&g, &out.edges));
        assert_eq!(out.weight(&g), 8);
        assert_eq!(out.bound, Rational::from_integer(8));
    }

    #[test]
    fn open_two_augmenting_path_between_large_nodes() {
        // small x2 = 0..3 between large squares; its ports 0 and 1 are the
        // ends of unit edge 0-1, and the large nodes also meet directly
        let mut g = Graph::new(12);
        let mut h = add_small(&mut g, 0);
        h.extend(add_large(&mut g, 4));
        h.extend(add_large(&mut g, 8));
        g.add_edge(0, 4, 1);
        g.add_edge(1, 8, 1);
        g.add_edge(6, 10, 1);
        let s = special(&g, h);
        let q = Quotient::new(&g, &s.edges).unwrap();
        let p = find_open_2aug(&g, &q).unwrap();
        assert_eq!(p.nodes[1], 0);
        let mut stats = Stats::default();
        let out = glue(&g, &s, Mode::Strict, &mut stats).unwrap();
        assert!(is_spanning_2ec(&g, &out.edges));
        assert!(Rational::from_integer(out.weight(&g) as i64) <= out.bound);
    }
}
