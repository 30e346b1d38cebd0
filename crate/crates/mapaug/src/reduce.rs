//! The recursive reduction: forbidden configurations are split off in a
//! fixed type order, the parts are solved recursively and recombined;
//! structured graphs go through the full pipeline (D2, canonical form,
//! bridge covering, special configuration, contract or glue).

use thiserror::Error;

use crate::bridge::{cover_all_bridges, BridgeError};
use crate::cover::{
    canonical_violations, canonicalize_d2, compute_d2, CoverError, Provenance, TwoEdgeCover,
};
use crate::exact::{all_solutions_of_weight, opt_at_most, opt_exact, reverse_delete, ExactError};
use crate::glue::{glue, GlueError};
use crate::graph::{
    bridges, component_labels, components_without, contract, cut_vertices, decompose, expand_edges,
    is_spanning_2ec, size_measure, EdgeId, EdgeSet, Graph, GraphError, SizeClass, VertexId,
};
use crate::special::{build_special_config, ComponentCredits, SpecialError};
use crate::stats::{Mode, Stats};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Simple graphs with at most this many vertices are solved exactly.
    pub exact_threshold: usize,
    /// Largest vertex set tried as a contractible subgraph.
    pub contractible_t: usize,
    /// Connected vertex sets examined per contractible scan before giving up.
    pub contractible_cap: u64,
    /// Node budget for each exact solve; `None` is unlimited.
    pub exact_budget: Option<u64>,
    /// Components of `G - X` beyond this many are lumped into the last one
    /// when side groupings are enumerated.
    pub max_side_components: usize,
    pub mode: Mode,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            exact_threshold: 20,
            contractible_t: 12,
            contractible_cap: 1_000_000,
            exact_budget: None,
            max_side_components: 8,
            mode: Mode::Lenient,
        }
    }
}

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("no patch of at most {limit} edges repairs the {kind} combination")]
    PatchEdgeNotFound { kind: String, limit: usize },
    #[error("{kind} divide does not shrink the instance: {parts} >= {whole}")]
    NoDescent {
        kind: String,
        parts: u64,
        whole: u64,
    },
    #[error("graph is not structured: {0}")]
    NotStructured(String),
    #[error("both contract-vs-glue branches failed")]
    NoBranch,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Glue(#[from] GlueError),
}

// ---------------------------------------------------------------------
// parts

/// Where an edge of a part comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Real(EdgeId),
    /// A fictitious edge; the tag indexes the divide's pseudo-edge list.
    Pseudo(usize),
}

/// A smaller instance cut out of `G`: an induced subgraph with some vertex
/// groups contracted and possibly some pseudo-edges added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub graph: Graph,
    pub origin: Vec<Origin>,
    /// Original vertices behind each part vertex.
    pub members: Vec<Vec<VertexId>>,
    /// Zero edges turned into unit edges because a contraction put two
    /// zero edges on one vertex.
    pub demoted: usize,
}

impl Part {
    /// Induced subgraph on `keep`, each of `groups` (subsets of `keep`)
    /// contracted to one vertex, plus unit pseudo-edges between original
    /// vertices.
    pub fn build(
        g: &Graph,
        keep: &[VertexId],
        groups: &[&[VertexId]],
        pseudo: &[(VertexId, VertexId)],
    ) -> Part {
        let mut map = vec![usize::MAX; g.n()];
        let mut members: Vec<Vec<VertexId>> = Vec::new();
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        for &v in &sorted {
            if map[v] != usize::MAX {
                continue;
            }
            if let Some(group) = groups.iter().find(|grp| grp.contains(&v)) {
                let id = members.len();
                let mut vs = group.to_vec();
                vs.sort_unstable();
                for &x in &vs {
                    map[x] = id;
                }
                members.push(vs);
            } else {
                map[v] = members.len();
                members.push(vec![v]);
            }
        }
        let mut list: Vec<(usize, usize, u8, Origin)> = Vec::new();
        for (e, ed) in g.edges().iter().enumerate() {
            let (a, b) = (map[ed.u], map[ed.v]);
            if a != usize::MAX && b != usize::MAX && a != b {
                list.push((a, b, ed.weight, Origin::Real(e)));
            }
        }
        for (i, &(x, y)) in pseudo.iter().enumerate() {
            list.push((map[x], map[y], 1, Origin::Pseudo(i)));
        }
        let mut has_zero = vec![false; members.len()];
        let mut demoted = 0;
        for item in list.iter_mut() {
            if item.2 == 0 {
                if has_zero[item.0] || has_zero[item.1] {
                    item.2 = 1;
                    demoted += 1;
                } else {
                    has_zero[item.0] = true;
                    has_zero[item.1] = true;
                }
            }
        }
        let mut graph = Graph::new(members.len());
        let mut origin = Vec::with_capacity(list.len());
        for (a, b, w, o) in list {
            graph.add_edge(a, b, w);
            origin.push(o);
        }
        Part {
            graph,
            origin,
            members,
            demoted,
        }
    }

    /// Real edges of `sol` in `G` and the tags of the pseudo-edges it uses.
    pub fn lift(&self, sol: &EdgeSet) -> (Vec<EdgeId>, Vec<usize>) {
        let mut real = Vec::new();
        let mut pseudo = Vec::new();
        for e in sol.iter() {
            match self.origin[e] {
                Origin::Real(x) => real.push(x),
                Origin::Pseudo(t) => pseudo.push(t),
            }
        }
        (real, pseudo)
    }
}

fn touches(g: &Graph, edges: &[EdgeId], v: VertexId) -> bool {
    edges.iter().any(|&e| g.edge(e).touches(v))
}

/// `opt(part) >= k`. Every vertex of a 2-ECSS meets a unit edge, so
/// `2k - 1` vertices already force it.
fn opt_at_least(part: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if part.n() <= 1 {
        return false;
    }
    if part.n() >= 2 * k - 1 {
        return true;
    }
    opt_at_most(part, k - 1, None).is_none()
}

/// Ordered assignments of components to `groups` non-empty sides.
fn groupings(
    comps: &[Vec<VertexId>],
    groups: usize,
    max_components: usize,
) -> Vec<Vec<Vec<VertexId>>> {
    let mut comps: Vec<Vec<VertexId>> = comps.to_vec();
    if comps.len() > max_components {
        let rest: Vec<VertexId> = comps.drain(max_components - 1..).flatten().collect();
        comps.push(rest);
    }
    let r = comps.len();
    if r < groups {
        return Vec::new();
    }
    let total = groups.pow(r as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut sides = vec![Vec::new(); groups];
        let mut c = code;
        for comp in &comps {
            sides[c % groups].extend(comp.iter().copied());
            c /= groups;
        }
        if sides.iter().all(|s| !s.is_empty()) {
            for s in sides.iter_mut() {
                s.sort_unstable();
            }
            out.push(sides);
        }
    }
    out
}

fn without(n: usize, removed: &[VertexId]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in removed {
        mask[v] = true;
    }
    mask
}

fn union(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Simple cycles on 3 to `max_len` vertices of weight exactly `weight`,
/// one per vertex set, as (vertices in cycle order, edges).
pub fn light_cycles(g: &Graph, max_len: usize, weight: usize) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
    let mut out: Vec<(Vec<VertexId>, Vec<EdgeId>)> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<VertexId>> = Default::default();
    fn go(
        g: &Graph,
        s: VertexId,
        max_len: usize,
        weight: usize,
        verts: &mut Vec<VertexId>,
        edges: &mut Vec<EdgeId>,
        w: usize,
        seen: &mut std::collections::BTreeSet<Vec<VertexId>>,
        out: &mut Vec<(Vec<VertexId>, Vec<EdgeId>)>,
    ) {
        let at = *verts.last().expect("non-empty path");
        for &e in g.incident(at) {
            let y = g.edge(e).other(at);
            let nw = w + g.edge(e).weight as usize;
            if nw > weight {
                continue;
            }
            if y == s && verts.len() >= 3 && nw == weight && Some(&e) != edges.first() {
                let mut key = verts.clone();
                key.sort_unstable();
                if seen.insert(key) {
                    let mut es = edges.clone();
                    es.push(e);
                    out.push((verts.clone(), es));
                }
            } else if y > s && !verts.contains(&y) && verts.len() < max_len {
                verts.push(y);
                edges.push(e);
                go(g, s, max_len, weight, verts, edges, nw, seen, out);
                edges.pop();
                verts.pop();
            }
        }
    }
    for s in 0..g.n() {
        go(
            g,
            s,
            max_len,
            weight,
            &mut vec![s],
            &mut Vec::new(),
            0,
            &mut seen,
            &mut out,
        );
    }
    out
}

// ---------------------------------------------------------------------
// forbidden configurations

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    CutVertex,
    ParallelEdge,
    Contractible,
    S0,
    S1,
    S2,
    S34,
    Sk(usize),
    SkPrime(usize),
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::CutVertex => write!(f, "cut-vertex"),
            Kind::ParallelEdge => write!(f, "parallel-edge"),
            Kind::Contractible => write!(f, "contractible"),
            Kind::S0 => write!(f, "S0"),
            Kind::S1 => write!(f, "S1"),
            Kind::S2 => write!(f, "S2"),
            Kind::S34 => write!(f, "S34"),
            Kind::Sk(k) => write!(f, "S{k}"),
            Kind::SkPrime(k) => write!(f, "S{k}'"),
        }
    }
}

/// A located forbidden configuration.
///
/// `vertices`: the cut vertex; the parallel pair's ends; the contractible
/// set; `u, v` of an S0/S1; `u, v, w` of an S2; the cycle of an S34/Sk/Sk'
/// in cycle order. `edges`: the dropped parallel edge; the contractible
/// witness `H`; `uv`; `uv, vw, g` of an S2; the cycle edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenConfig {
    pub kind: Kind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub sides: Vec<Vec<VertexId>>,
}

/// Structured graphs have at least this many vertices.
pub const STRUCTURED_MIN_VERTICES: usize = 20;

/// Finds the first configuration in type order, if any.
pub fn detect_forbidden(g: &Graph, cfg: &Config, stats: &mut Stats) -> Option<ForbiddenConfig> {
    if let Some(c) = find_cut_vertex(g) {
        return Some(c);
    }
    if let Some(c) = find_parallel_edge(g) {
        return Some(c);
    }
    if let Some(c) = detect_contractible(g, cfg.contractible_t, cfg.contractible_cap, stats) {
        return Some(c);
    }
    let m = cfg.max_side_components;
    find_s0(g)
        .or_else(|| find_s1(g, m))
        .or_else(|| find_s2(g, m))
        .or_else(|| find_s34(g, m))
        .or_else(|| (3..=6).find_map(|k| find_sk(g, k, m)))
        .or_else(|| (3..=6).find_map(|k| find_sk_prime(g, k, m)))
}

pub fn find_cut_vertex(g: &Graph) -> Option<ForbiddenConfig> {
    let c = *cut_vertices(g, &g.full_set()).first()?;
    let comps = components_without(g, &without(g.n(), &[c]));
    let first = comps[0].clone();
    let rest: Vec<VertexId> = comps[1..].iter().flatten().copied().collect();
    let mut rest = rest;
    rest.sort_unstable();
    Some(ForbiddenConfig {
        kind: Kind::CutVertex,
        vertices: vec![c],
        edges: vec![],
        sides: vec![first, rest],
    })
}

pub fn find_parallel_edge(g: &Graph) -> Option<ForbiddenConfig> {
    let (a, b) = *g.parallel_pairs().first()?;
    // keep the cheaper edge of the pair
    let drop = if g.edge(a).weight > g.edge(b).weight {
        a
    } else {
        b
    };
    Some(ForbiddenConfig {
        kind: Kind::ParallelEdge,
        vertices: vec![g.edge(drop).u, g.edge(drop).v],
        edges: vec![drop],
        sides: vec![],
    })
}

pub fn find_s0(g: &Graph) -> Option<ForbiddenConfig> {
    for e in g.zero_edges() {
        let (u, v) = (g.edge(e).u, g.edge(e).v);
        let comps = components_without(g, &without(g.n(), &[u, v]));
        if comps.len() >= 2 {
            let mut rest: Vec<VertexId> = comps[1..].iter().flatten().copied().collect();
            rest.sort_unstable();
            return Some(ForbiddenConfig {
                kind: Kind::S0,
                vertices: vec![u, v],
                edges: vec![e],
                sides: vec![comps[0].clone(), rest],
            });
        }
    }
    None
}

pub fn find_s1(g: &Graph, max_components: usize) -> Option<ForbiddenConfig> {
    let n = g.n();
    for e in g.unit_edges() {
        for (u, v) in [(g.edge(e).u, g.edge(e).v), (g.edge(e).v, g.edge(e).u)] {
            let Some((_, z)) = g.zero_partner(u) else {
                continue;
            };
            if z == v {
                continue;
            }
            let comps = components_without(g, &without(n, &[u, v]));
            if comps.len() < 2 {
                continue;
            }
            for sides in groupings(&comps, 2, max_components) {
                let (v1, v2) = (&sides[0], &sides[1]);
                if !v2.contains(&z) || g.zero_partner(v).is_some_and(|(_, y)| v2.contains(&y)) {
                    continue;
                }
                let uv = [u, v];
                let h1 = Part::build(g, &union(v1, &uv), &[&uv], &[]);
                let h2 = Part::build(g, &union(v2, &uv), &[&uv], &[]);
                if opt_at_least(&h1.graph, 3) && opt_at_least(&h2.graph, 4) {
                    return Some(ForbiddenConfig {
                        kind: Kind::S1,
                        vertices: vec![u, v],
                        edges: vec![e],
                        sides,
                    });
                }
            }
        }
    }
    None
}

pub fn find_s2(g: &Graph, max_components: usize) -> Option<ForbiddenConfig> {
    let n = g.n();
    for e in g.unit_edges() {
        for (u, v) in [(g.edge(e).u, g.edge(e).v), (g.edge(e).v, g.edge(e).u)] {
            let Some((vw, w)) = g.zero_partner(v) else {
                continue;
            };
            let Some((gz, z)) = g.zero_partner(u) else {
                continue;
            };
            if w == u || z == v || z == w {
                continue;
            }
            let comps = components_without(g, &without(n, &[u, v, w]));
            if comps.len() < 2 {
                continue;
            }
            for sides in groupings(&comps, 2, max_components) {
                let (v1, v2) = (&sides[0], &sides[1]);
                if !v2.contains(&z) {
                    continue;
                }
                let uvw = [u, v, w];
                let h1 = Part::build(g, &union(v1, &uvw), &[&uvw], &[]);
                let h2 = Part::build(g, &union(v2, &uvw), &[&uvw], &[]);
                if opt_at_least(&h1.graph, 3) && opt_at_least(&h2.graph, 4) {
                    return Some(ForbiddenConfig {
                        kind: Kind::S2,
                        vertices: vec![u, v, w],
                        edges: vec![e, vw, gz],
                        sides,
                    });
                }
            }
        }
    }
    None
}

fn zero_edge_leaves(g: &Graph, set: &[VertexId]) -> bool {
    set.iter()
        .any(|&x| g.zero_partner(x).is_some_and(|(_, y)| !set.contains(&y)))
}

pub fn find_s34(g: &Graph, max_components: usize) -> Option<ForbiddenConfig> {
    let n = g.n();
    for (verts, edges) in light_cycles(g, 4, 2) {
        if zero_edge_leaves(g, &verts) {
            continue;
        }
        let comps = components_without(g, &without(n, &verts));
        if comps.len() < 2 {
            continue;
        }
        for sides in groupings(&comps, 2, max_components) {
            let h1 = Part::build(g, &union(&sides[0], &verts), &[&verts], &[]);
            let h2 = Part::build(g, &union(&sides[1], &verts), &[&verts], &[]);
            if opt_at_least(&h1.graph, 4) && opt_at_least(&h2.graph, 3) {
                return Some(ForbiddenConfig {
                    kind: Kind::S34,
                    vertices: verts,
                    edges,
                    sides,
                });
            }
        }
    }
    None
}

fn find_cost3(
    g: &Graph,
    k: usize,
    groups: usize,
    max_components: usize,
    prime: bool,
) -> Option<ForbiddenConfig> {
    let n = g.n();
    for (verts, edges) in light_cycles(g, k, 3) {
        if verts.len() != k || zero_edge_leaves(g, &verts) {
            continue;
        }
        if prime
            && !verts.iter().any(|&x| {
                g.incident(x)
                    .iter()
                    .all(|&e| verts.contains(&g.edge(e).other(x)))
            })
        {
            continue;
        }
        let comps = components_without(g, &without(n, &verts));
        if comps.len() < groups {
            continue;
        }
        for sides in groupings(&comps, groups, max_components) {
            let ok = sides.iter().all(|side| {
                let part = Part::build(g, &union(side, &verts), &[&verts], &[]);
                opt_at_least(&part.graph, 4)
            });
            if ok {
                return Some(ForbiddenConfig {
                    kind: if prime { Kind::SkPrime(k) } else { Kind::Sk(k) },
                    vertices: verts,
                    edges,
                    sides,
                });
            }
        }
    }
    None
}

pub fn find_sk(g: &Graph, k: usize, max_components: usize) -> Option<ForbiddenConfig> {
    find_cost3(g, k, 3, max_components, false)
}

pub fn find_sk_prime(g: &Graph, k: usize, max_components: usize) -> Option<ForbiddenConfig> {
    find_cost3(g, k, 2, max_components, true)
}

// ---------------------------------------------------------------------
// contractible subgraphs

/// Fewest inner unit edges that make `G - inner` 2-edge-connected again,
/// if at most `limit` suffice. The free part is shrunk to its bridge tree
/// (forest) first; the search branches on the links crossing one
/// violated cut.
fn fewest_links(g: &Graph, inner: &[EdgeId], limit: usize) -> Option<usize> {
    let mut free = g.full_set();
    for &e in inner {
        free.remove(e);
    }
    if is_spanning_2ec(g, &free) {
        return Some(0);
    }
    let tree_edges = bridges(g, &free);
    let mut body = free.clone();
    for &b in &tree_edges {
        body.remove(b);
    }
    let (label, count) = component_labels(g, &body);
    let mut small = Graph::new(count);
    for &b in &tree_edges {
        small.add_edge(label[g.edge(b).u], label[g.edge(b).v], 1);
    }
    let base = small.m();
    let mut seen = std::collections::BTreeSet::new();
    for &e in inner {
        let (a, b) = (label[g.edge(e).u], label[g.edge(e).v]);
        if a != b && seen.insert((a.min(b), a.max(b))) {
            small.add_edge(a, b, 1);
        }
    }
    let links: Vec<EdgeId> = (base..small.m()).collect();

    fn violated_cut(small: &Graph, chosen: &EdgeSet) -> Option<Vec<bool>> {
        let (label, count) = component_labels(small, chosen);
        if count > 1 {
            return Some(label.iter().map(|&l| l == label[0]).collect());
        }
        let b = *bridges(small, chosen).first()?;
        let mut rest = chosen.clone();
        rest.remove(b);
        let (label, _) = component_labels(small, &rest);
        Some(label.iter().map(|&l| l == label[small.edge(b).u]).collect())
    }

    fn search(small: &Graph, links: &[EdgeId], chosen: &mut EdgeSet, budget: usize) -> bool {
        let Some(side) = violated_cut(small, chosen) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for &l in links {
            let e = small.edge(l);
            if chosen.contains(l) || side[e.u] == side[e.v] {
                continue;
            }
            chosen.insert(l);
            if search(small, links, chosen, budget - 1) {
                return true;
            }
            chosen.remove(l);
        }
        false
    }

    let mut chosen = EdgeSet::from_ids(small.m(), 0..base);
    (1..=limit).find(|&k| search(&small, &links, &mut chosen, k))
}

/// Largest `k` with `13 k < 8 h`: fewer inner units than this refutes
/// contractibility.
fn refuting_limit(h: usize) -> usize {
    (8 * h).div_ceil(13) - 1
}

/// Minimum 2-ECSS of `G[set]` when `set` is contractible. Sets with more
/// than one zero edge leaving them are skipped: their contraction is not a
/// MAP instance.
/// Reusable buffers for the contractible scan.
struct Scratch {
    local: Vec<usize>,
    disc: Vec<u32>,
    low: Vec<u32>,
    stack: Vec<(VertexId, EdgeId, usize)>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            local: vec![usize::MAX; n],
            disc: vec![0; n],
            low: vec![0; n],
            stack: Vec::with_capacity(n),
        }
    }

    /// Whether `G` minus the unit edges inside the marked set is still
    /// spanning 2-edge-connected (lowpoint search, no allocation).
    fn survives(&mut self, g: &Graph) -> bool {
        let n = g.n();
        let local = &self.local;
        let skip = |e: EdgeId| {
            let ed = g.edge(e);
            ed.weight == 1 && local[ed.u] != usize::MAX && local[ed.v] != usize::MAX
        };
        self.disc.iter_mut().for_each(|d| *d = 0);
        self.stack.clear();
        let mut time = 1;
        self.disc[0] = time;
        self.low[0] = time;
        self.stack.push((0, usize::MAX, 0));
        let mut seen = 1;
        while let Some(&mut (v, via, ref mut next)) = self.stack.last_mut() {
            let inc = g.incident(v);
            if *next < inc.len() {
                let e = inc[*next];
                *next += 1;
                if e == via || skip(e) {
                    continue;
                }
                let y = g.edge(e).other(v);
                if self.disc[y] == 0 {
                    time += 1;
                    seen += 1;
                    self.disc[y] = time;
                    self.low[y] = time;
                    self.stack.push((y, e, 0));
                } else {
                    self.low[v] = self.low[v].min(self.disc[y]);
                }
            } else {
                self.stack.pop();
                if let Some(&(p, _, _)) = self.stack.last() {
                    if self.low[v] > self.disc[p] {
                        return false;
                    }
                    self.low[p] = self.low[p].min(self.low[v]);
                }
            }
        }
        seen == n
    }
}

fn contractible_witness(g: &Graph, set: &[VertexId], scratch: &mut Scratch) -> Option<Vec<EdgeId>> {
    for (i, &v) in set.iter().enumerate() {
        scratch.local[v] = i;
    }
    let found = witness_in(g, set, scratch);
    for &v in set {
        scratch.local[v] = usize::MAX;
    }
    found
}

fn witness_in(g: &Graph, set: &[VertexId], scratch: &mut Scratch) -> Option<Vec<EdgeId>> {
    let local = &scratch.local;
    let inside = |v: VertexId| local[v] != usize::MAX;
    let mut leaving = 0;
    for &v in set {
        if g.incident(v)
            .iter()
            .filter(|&&e| inside(g.edge(e).other(v)))
            .count()
            < 2
        {
            return None;
        }
        if g.zero_partner(v).is_some_and(|(_, z)| !inside(z)) {
            leaving += 1;
        }
    }
    if leaving > 1 || scratch.survives(g) {
        return None;
    }
    let local = &scratch.local;
    let mut inner = Graph::new(set.len());
    let mut inner_map = Vec::new();
    let mut inner_units = Vec::new();
    for &v in set {
        for &e in g.incident(v) {
            let ed = g.edge(e);
            if ed.u == v && local[ed.v] != usize::MAX {
                inner.add_edge(local[ed.u], local[ed.v], ed.weight);
                inner_map.push(e);
                if ed.weight == 1 {
                    inner_units.push(e);
                }
            }
        }
    }
    if !is_spanning_2ec(&inner, &inner.full_set()) {
        return None;
    }
    let zeros = inner.zero_edges().len();
    let h_low = set.len().div_ceil(2).max(set.len() - zeros);
    let low_limit = refuting_limit(h_low);
    if fewest_links(g, &inner_units, low_limit).is_some() {
        return None;
    }
    let best = opt_exact(&inner, Some(200_000)).ok()?;
    let limit = refuting_limit(best.weight);
    if limit > low_limit && fewest_links(g, &inner_units, limit).is_some() {
        return None;
    }
    Some(best.witness.iter().map(|e| inner_map[e]).collect())
}

/// First contractible vertex set (3 to `t` vertices, not all of `G`) in
/// connected-set enumeration order. Stops after `cap` sets.
pub fn detect_contractible(
    g: &Graph,
    t: usize,
    cap: u64,
    stats: &mut Stats,
) -> Option<ForbiddenConfig> {
    if !g.is_simple() || t < 3 {
        return None;
    }
    let n = g.n();
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|v| {
            let mut a: Vec<VertexId> = g.incident(v).iter().map(|&e| g.edge(e).other(v)).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    struct Ctx<'a> {
        g: &'a Graph,
        adj: &'a [Vec<VertexId>],
        t: usize,
        cap: u64,
        examined: u64,
        near: Vec<u32>,
        sub: Vec<VertexId>,
        /// Extension set per depth.
        pool: Vec<Vec<VertexId>>,
        scratch: Scratch,
        hit_cap: bool,
    }

    fn extend(ctx: &mut Ctx, depth: usize, root: VertexId) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
        if ctx.examined >= ctx.cap {
            ctx.hit_cap = true;
            return None;
        }
        ctx.examined += 1;
        if ctx.sub.len() >= 3 && ctx.sub.len() < ctx.g.n() {
            if let Some(h) = contractible_witness(ctx.g, &ctx.sub, &mut ctx.scratch) {
                let mut set = ctx.sub.clone();
                set.sort_unstable();
                return Some((set, h));
            }
        }
        if ctx.sub.len() == ctx.t {
            return None;
        }
        while let Some(w) = ctx.pool[depth].pop() {
            let mut next = std::mem::take(&mut ctx.pool[depth + 1]);
            next.clear();
            next.extend_from_slice(&ctx.pool[depth]);
            for &u in &ctx.adj[w] {
                if u > root && ctx.near[u] == 0 {
                    next.push(u);
                }
            }
            ctx.pool[depth + 1] = next;
            for &u in &ctx.adj[w] {
                ctx.near[u] += 1;
            }
            ctx.near[w] += 1;
            ctx.sub.push(w);
            let found = extend(ctx, depth + 1, root);
            ctx.sub.pop();
            ctx.near[w] -= 1;
            for &u in &ctx.adj[w] {
                ctx.near[u] -= 1;
            }
            if found.is_some() || ctx.hit_cap {
                return found;
            }
        }
        None
    }

    let mut ctx = Ctx {
        g,
        adj: &adj,
        t,
        cap,
        examined: 0,
        near: vec![0; n],
        sub: Vec::with_capacity(t),
        pool: vec![Vec::new(); t + 1],
        scratch: Scratch::new(n),
        hit_cap: false,
    };
    for v in 0..n {
        for &u in &adj[v] {
            ctx.near[u] += 1;
        }
        ctx.near[v] += 1;
        ctx.sub.clear();
        ctx.sub.push(v);
        ctx.pool[1].clear();
        ctx.pool[1].extend(adj[v].iter().copied().filter(|&u| u > v));
        let found = extend(&mut ctx, 1, v);
        ctx.near[v] -= 1;
        for &u in &adj[v] {
            ctx.near[u] -= 1;
        }
        if let Some((set, h)) = found {
            return Some(ForbiddenConfig {
                kind: Kind::Contractible,
                vertices: set,
                edges: h,
                sides: vec![],
            });
        }
        if ctx.hit_cap {
            stats.contractible_cap_hits += 1;
            return None;
        }
    }
    None
}

// ---------------------------------------------------------------------
// divide and combine

/// How pseudo-edges in part solutions are resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
enum PseudoRule {
    /// Dropped; the patch step reconnects.
    Drop,
    /// Diagonals of a weight-2 4-cycle: none used adds `any`, one used adds
    /// the side solution realizing it, both used adds the cycle and `any`.
    Diagonals {
        cycle: Vec<EdgeId>,
        any: Vec<EdgeId>,
        realizing: [Option<Vec<EdgeId>>; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivideResult {
    pub config: ForbiddenConfig,
    pub parts: Vec<Part>,
    /// Parts answered by a fixed optimal solution instead of recursion
    /// (their lifted edges).
    pub frozen: Vec<Option<Vec<EdgeId>>>,
    /// Edges of `G` always added on combine.
    pub extra: Vec<EdgeId>,
    rule: PseudoRule,
    patch_limit: usize,
}

impl DivideResult {
    pub fn measure(&self) -> u64 {
        self.parts.iter().map(|p| size_measure(&p.graph)).sum()
    }

    /// Variant label for reports, e.g. `S1/H2''`.
    pub fn variant(&self) -> String {
        let primes = self
            .parts
            .last()
            .map(|p| p.origin.iter().any(|o| matches!(o, Origin::Pseudo(_))))
            .unwrap_or(false);
        let frozen = self.frozen.iter().any(|f| f.is_some());
        format!(
            "{}{}{}",
            self.config.kind,
            if frozen { "/frozen" } else { "" },
            if primes { "/pseudo" } else { "" }
        )
    }
}

fn plain(
    config: ForbiddenConfig,
    parts: Vec<Part>,
    extra: Vec<EdgeId>,
    patch_limit: usize,
) -> DivideResult {
    let k = parts.len();
    DivideResult {
        config,
        parts,
        frozen: vec![None; k],
        extra,
        rule: PseudoRule::Drop,
        patch_limit,
    }
}

/// First weight-`w` solution of `part` whose lift touches every vertex of
/// `must`, lifted.
fn frozen_solution(g: &Graph, part: &Part, w: usize, must: &[VertexId]) -> Option<Vec<EdgeId>> {
    all_solutions_of_weight(&part.graph, w)
        .into_iter()
        .find_map(|s| {
            let (real, pseudo) = part.lift(&s);
            (pseudo.is_empty() && must.iter().all(|&v| touches(g, &real, v))).then_some(real)
        })
}

/// Splits `g` along `cfg` into smaller instances.
pub fn divide(g: &Graph, cfg: &ForbiddenConfig) -> DivideResult {
    let n = g.n();
    let c = cfg.clone();
    match cfg.kind {
        Kind::CutVertex => {
            let x = &cfg.vertices;
            let parts = cfg
                .sides
                .iter()
                .map(|s| Part::build(g, &union(s, x), &[], &[]))
                .collect();
            plain(c, parts, vec![], 0)
        }
        Kind::ParallelEdge => {
            let mut part = Part::build(g, &(0..n).collect::<Vec<_>>(), &[], &[]);
            let drop = cfg.edges[0];
            let keep: Vec<usize> = (0..part.graph.m())
                .filter(|&e| part.origin[e] != Origin::Real(drop))
                .collect();
            let mut graph = Graph::new(n);
            let mut origin = Vec::new();
            for e in keep {
                let ed = part.graph.edge(e);
                graph.add_edge(ed.u, ed.v, ed.weight);
                origin.push(part.origin[e]);
            }
            part.graph = graph;
            part.origin = origin;
            plain(c, vec![part], vec![], 0)
        }
        Kind::Contractible => {
            let part = Part::build(g, &(0..n).collect::<Vec<_>>(), &[&cfg.vertices], &[]);
            plain(c, vec![part], cfg.edges.clone(), 0)
        }
        Kind::S0 => {
            let x = &cfg.vertices;
            let parts = cfg
                .sides
                .iter()
                .map(|s| Part::build(g, &union(s, x), &[x], &[]))
                .collect();
            plain(c, parts, vec![cfg.edges[0]], 1)
        }
        Kind::S1 => divide_s1(g, c),
        Kind::S2 => divide_s2(g, c),
        Kind::S34 => divide_s34(g, c),
        Kind::Sk(_) | Kind::SkPrime(_) => {
            let x = &cfg.vertices;
            let parts = cfg
                .sides
                .iter()
                .map(|s| Part::build(g, &union(s, x), &[x], &[]))
                .collect();
            plain(c, parts, cfg.edges.clone(), 2)
        }
    }
}

fn divide_s1(g: &Graph, cfg: ForbiddenConfig) -> DivideResult {
    let (u, v) = (cfg.vertices[0], cfg.vertices[1]);
    let uv = [u, v];
    let e = cfg.edges[0];
    let h1 = Part::build(g, &union(&cfg.sides[0], &uv), &[&uv], &[]);
    let h2c = Part::build(g, &union(&cfg.sides[1], &uv), &[&uv], &[]);
    if opt_at_least(&h1.graph, 4) {
        return plain(cfg, vec![h1, h2c], vec![e], 2);
    }
    if let Some(sol) = frozen_solution(g, &h1, 3, &uv) {
        let mut d = plain(cfg, vec![h1, h2c], vec![e], 2);
        d.frozen[0] = Some(sol);
        return d;
    }
    let h2 = Part::build(g, &union(&cfg.sides[1], &uv), &[], &[(u, v)]);
    plain(cfg, vec![h1, h2], vec![], 2)
}

fn divide_s2(g: &Graph, cfg: ForbiddenConfig) -> DivideResult {
    let (u, v, w) = (cfg.vertices[0], cfg.vertices[1], cfg.vertices[2]);
    let uvw = [u, v, w];
    let vw_pair = [v, w];
    let (uv, vw, gz) = (cfg.edges[0], cfg.edges[1], cfg.edges[2]);
    let keep2 = union(&cfg.sides[1], &uvw);
    let h1 = Part::build(g, &union(&cfg.sides[0], &uvw), &[&uvw], &[]);
    let h2c = Part::build(g, &keep2, &[&uvw], &[]);
    if opt_at_least(&h1.graph, 4) {
        return plain(cfg, vec![h1, h2c], vec![uv, vw, gz], 2);
    }
    for (must, extra) in [(vec![u, w], vec![uv, vw]), (vec![u, v], vec![vw])] {
        if let Some(sol) = frozen_solution(g, &h1, 3, &must) {
            let mut d = plain(cfg, vec![h1, h2c], extra, 2);
            d.frozen[0] = Some(sol);
            return d;
        }
    }
    if let Some(sol) = frozen_solution(g, &h1, 3, &[v, w]) {
        let h2 = Part::build(g, &keep2, &[&vw_pair], &[(u, v)]);
        let mut d = plain(cfg, vec![h1, h2], vec![vw], 2);
        d.frozen[0] = Some(sol);
        return d;
    }
    // pseudo parallels for the pairs of u, v, w joined through V1
    let triangle: Vec<EdgeId> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, ed)| uvw.contains(&ed.u) && uvw.contains(&ed.v))
        .map(|(i, _)| i)
        .collect();
    let side1 = union(&cfg.sides[0], &uvw);
    let mut allowed = EdgeSet::new(g.m());
    for (i, ed) in g.edges().iter().enumerate() {
        if side1.contains(&ed.u) && side1.contains(&ed.v) && !triangle.contains(&i) {
            allowed.insert(i);
        }
    }
    let (label, _) = component_labels(g, &allowed);
    let mut pseudo = Vec::new();
    for (x, y) in [(u, v), (u, w), (v, w)] {
        if label[x] == label[y] {
            pseudo.push((x, y));
        }
    }
    let h2 = Part::build(g, &keep2, &[], &pseudo);
    plain(cfg, vec![h1, h2], vec![vw], 2)
}

fn divide_s34(g: &Graph, cfg: ForbiddenConfig) -> DivideResult {
    let verts = cfg.vertices.clone();
    let cycle = cfg.edges.clone();
    let h2 = Part::build(g, &union(&cfg.sides[1], &verts), &[&verts], &[]);
    if opt_at_least(&h2.graph, 4) {
        let h1 = Part::build(g, &union(&cfg.sides[0], &verts), &[&verts], &[]);
        return plain(cfg, vec![h1, h2], cycle, 2);
    }
    let any = frozen_solution(g, &h2, 3, &[]).unwrap_or_default();
    let keep1 = union(&cfg.sides[0], &verts);
    if verts.len() == 3 {
        let h1 = Part::build(g, &keep1, &[], &[]);
        let mut d = plain(cfg, vec![h1, h2], any, 2);
        d.frozen[1] = Some(vec![]);
        return d;
    }
    let diagonals = [(verts[0], verts[2]), (verts[1], verts[3])];
    let mut pseudo = Vec::new();
    let mut realizing: [Option<Vec<EdgeId>>; 2] = [None, None];
    for (i, &(a, b)) in diagonals.iter().enumerate() {
        if !g.edges_between(a, b).is_empty() {
            continue;
        }
        if let Some(sol) = frozen_solution(g, &h2, 3, &[a, b]) {
            pseudo.push((a, b));
            realizing[pseudo.len() - 1] = Some(sol);
            let _ = i;
        }
    }
    let h1 = Part::build(g, &keep1, &[], &pseudo);
    let mut d = plain(cfg, vec![h1, h2], vec![], 2);
    d.frozen[1] = Some(vec![]);
    d.rule = PseudoRule::Diagonals {
        cycle,
        any,
        realizing,
    };
    d
}

/// Adds at most `limit` edges touching the witness to make `edges`
/// spanning 2-edge-connected; with `fallback`, repairs any remaining
/// deficit from all of `G` and reports how many edges that took.
fn patch(g: &Graph, edges: &mut EdgeSet, near: &[VertexId], limit: usize) -> bool {
    if is_spanning_2ec(g, edges) {
        return true;
    }
    let mut cand: Vec<EdgeId> = (0..g.m())
        .filter(|&e| {
            !edges.contains(e) && (near.contains(&g.edge(e).u) || near.contains(&g.edge(e).v))
        })
        .collect();
    cand.sort_by_key(|&e| (g.edge(e).weight, e));
    if limit >= 1 {
        for &e in &cand {
            edges.insert(e);
            if is_spanning_2ec(g, edges) {
                return true;
            }
            edges.remove(e);
        }
    }
    if limit >= 2 {
        let mut best: Option<(u8, EdgeId, EdgeId)> = None;
        for (i, &a) in cand.iter().enumerate() {
            for &b in &cand[i + 1..] {
                let w = g.edge(a).weight + g.edge(b).weight;
                if best.is_some_and(|(bw, _, _)| bw <= w) {
                    continue;
                }
                edges.insert(a);
                edges.insert(b);
                if is_spanning_2ec(g, edges) {
                    best = Some((w, a, b));
                }
                edges.remove(a);
                edges.remove(b);
            }
        }
        if let Some((_, a, b)) = best {
            edges.insert(a);
            edges.insert(b);
            return true;
        }
    }
    false
}

/// Repairs `edges` with edges of `G`, dropping every added unit edge that
/// is not needed. Returns the number of edges added.
fn repair(g: &Graph, edges: &mut EdgeSet) -> usize {
    let before = edges.clone();
    let all = g.full_set();
    let mut f = all.clone();
    for e in (0..g.m()).rev() {
        if !before.contains(e) && g.edge(e).weight == 1 {
            f.remove(e);
            if !is_spanning_2ec(g, &f) {
                f.insert(e);
            }
        }
    }
    let added = f.len() - before.len();
    *edges = f;
    added
}

/// Reassembles a 2-ECSS of `g` from part solutions (`None` for frozen
/// parts).
pub fn combine(
    g: &Graph,
    d: &DivideResult,
    solutions: &[Option<EdgeSet>],
    mode: Mode,
    stats: &mut Stats,
) -> Result<EdgeSet, ReduceError> {
    let mut edges = EdgeSet::from_ids(g.m(), d.extra.iter().copied());
    let mut used = Vec::new();
    for (i, part) in d.parts.iter().enumerate() {
        if let Some(frozen) = &d.frozen[i] {
            for &e in frozen {
                edges.insert(e);
            }
            continue;
        }
        let sol = solutions[i]
            .as_ref()
            .expect("solution for every recursed part");
        let (real, pseudo) = part.lift(sol);
        for e in real {
            edges.insert(e);
        }
        used.extend(pseudo);
    }
    if let PseudoRule::Diagonals {
        cycle,
        any,
        realizing,
    } = &d.rule
    {
        let add: Vec<EdgeId> = match used.as_slice() {
            [] => any.clone(),
            [t] => realizing[*t].clone().unwrap_or_else(|| any.clone()),
            _ => cycle.iter().chain(any.iter()).copied().collect(),
        };
        for e in add {
            edges.insert(e);
        }
    }
    let mut near = d.config.vertices.clone();
    if d.config.kind == Kind::CutVertex || d.config.kind == Kind::ParallelEdge {
        near.clear();
    }
    if !patch(g, &mut edges, &near, d.patch_limit) {
        if mode == Mode::Strict {
            return Err(ReduceError::PatchEdgeNotFound {
                kind: d.config.kind.to_string(),
                limit: d.patch_limit,
            });
        }
        stats.patch_edges += repair(g, &mut edges) as u64;
    }
    Ok(edges)
}

// ---------------------------------------------------------------------
// driver

/// Runs the reduction with one configuration and accumulates counters.
#[derive(Clone, Debug, Default)]
pub struct Solver {
    pub config: Config,
    pub stats: Stats,
}

impl Solver {
    pub fn new(config: Config) -> Solver {
        Solver {
            config,
            stats: Stats::default(),
        }
    }

    pub fn reduce(&mut self, g: &Graph) -> Result<EdgeSet, ReduceError> {
        self.reduce_at(g, 0)
    }

    fn exact(&mut self, g: &Graph) -> Result<EdgeSet, ReduceError> {
        self.stats.exact_calls += 1;
        match opt_exact(g, self.config.exact_budget) {
            Ok(r) => {
                self.stats.exact_nodes += r.nodes_explored;
                Ok(r.witness)
            }
            Err(ExactError::BudgetExceeded(r)) => {
                self.stats.exact_nodes += r.nodes_explored;
                Ok(r.witness)
            }
            Err(e) => Err(e.into()),
        }
    }

    fn reduce_at(&mut self, g: &Graph, depth: u64) -> Result<EdgeSet, ReduceError> {
        self.stats.reduce_calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if g.n() <= 1 {
            return Ok(EdgeSet::new(g.m()));
        }
        if g.n() <= 2 || (g.is_simple() && g.n() <= self.config.exact_threshold) {
            return self.exact(g);
        }
        let cfg = self.config.clone();
        if let Some(found) = detect_forbidden(g, &cfg, &mut self.stats) {
            let d = divide(g, &found);
            let whole = size_measure(g);
            let parts = d.measure();
            self.stats.record_divide(&found.kind.to_string());
            if parts >= whole {
                self.stats.descent_violations += 1;
                return Err(ReduceError::NoDescent {
                    kind: found.kind.to_string(),
                    parts,
                    whole,
                });
            }
            let mut solutions = Vec::with_capacity(d.parts.len());
            for (i, part) in d.parts.iter().enumerate() {
                if d.frozen[i].is_some() {
                    solutions.push(None);
                } else {
                    solutions.push(Some(self.reduce_at(&part.graph, depth + 1)?));
                }
            }
            return combine(g, &d, &solutions, cfg.mode, &mut self.stats);
        }
        self.alg(g, depth)
    }

    /// The pipeline for a structured graph, checked by a fresh scan.
    pub fn alg_structured(&mut self, g: &Graph) -> Result<EdgeSet, ReduceError> {
        if g.n() < STRUCTURED_MIN_VERTICES {
            return Err(ReduceError::NotStructured(format!(
                "{} vertices, fewer than {STRUCTURED_MIN_VERTICES}",
                g.n()
            )));
        }
        let cfg = self.config.clone();
        if let Some(found) = detect_forbidden(g, &cfg, &mut self.stats) {
            return Err(ReduceError::NotStructured(format!(
                "{} at {:?}",
                found.kind, found.vertices
            )));
        }
        self.alg(g, 0)
    }

    /// The same pipeline without the structure check. On graphs that still
    /// contain forbidden configurations the bounds are not guaranteed and
    /// failures show up in the counters.
    pub fn pipeline(&mut self, g: &Graph) -> Result<EdgeSet, ReduceError> {
        self.alg(g, 0)
    }

    fn alg(&mut self, g: &Graph, depth: u64) -> Result<EdgeSet, ReduceError> {
        let mode = self.config.mode;
        self.stats.alg_calls += 1;
        let d2 = compute_d2(g)?;
        let (canon, cs) = canonicalize_d2(g, &d2)?;
        self.stats.canonical_exchanges += cs.exchanges as u64;
        self.stats.canonical_fallback_exchanges += cs.fallback_exchanges as u64;
        let descending = cs.rho_trace.windows(2).all(|w| w[1] < w[0]);
        if !descending || !canonical_violations(g, &canon.edges).is_empty() {
            if mode == Mode::Strict {
                return Err(ReduceError::NotStructured(
                    "canonical conditions fail".into(),
                ));
            }
            self.stats.canonical_failures += 1;
        }
        let covered = cover_all_bridges(g, &canon, mode, &mut self.stats)?;
        let dec = decompose(g, &covered.cover.edges)?;
        let totals = covered.ledger.component_totals(&dec);
        let credits = ComponentCredits::from_pairs(
            dec.components
                .iter()
                .map(|c| c.vertices.clone())
                .zip(totals),
        );
        let special =
            build_special_config(g, &covered.cover, Some(credits), mode, &mut self.stats)?;
        self.contract_vs_glue(g, &special.cover, depth)
    }

    /// The lighter of contracting the small components and recursing, and
    /// gluing; ties go to contraction.
    pub fn contract_vs_glue(
        &mut self,
        g: &Graph,
        s: &TwoEdgeCover,
        depth: u64,
    ) -> Result<EdgeSet, ReduceError> {
        let d = decompose(g, &s.edges)?;
        if d.components.len() == 1 {
            return Ok(s.edges.clone());
        }
        let small: Vec<Vec<VertexId>> = d
            .components
            .iter()
            .filter(|c| c.class == SizeClass::Small)
            .map(|c| c.vertices.clone())
            .collect();
        let contracted = if small.is_empty() {
            None
        } else {
            let (gc, map) = contract(g, &small)?;
            let sol = self.reduce_at(&gc, depth + 1)?;
            let mut edges = expand_edges(&map, g.m(), &sol)?;
            for c in d.components.iter().filter(|c| c.class == SizeClass::Small) {
                for &e in &c.edges {
                    edges.insert(e);
                }
            }
            Some(edges)
        };
        let glued = match glue(
            g,
            &TwoEdgeCover {
                edges: s.edges.clone(),
                provenance: Provenance::Special,
            },
            self.config.mode,
            &mut self.stats,
        ) {
            Ok(out) => Some(out.edges),
            Err(e) => {
                if self.config.mode == Mode::Strict || contracted.is_none() {
                    return Err(e.into());
                }
                self.stats.glue_fallbacks += 1;
                None
            }
        };
        match (contracted, glued) {
            (Some(a), Some(b)) => {
                if a.weight(g) <= b.weight(g) {
                    self.stats.contract_branch += 1;
                    Ok(a)
                } else {
                    self.stats.glue_branch += 1;
                    Ok(b)
                }
            }
            (Some(a), None) => {
                self.stats.contract_branch += 1;
                Ok(a)
            }
            (None, Some(b)) => {
                self.stats.glue_branch += 1;
                Ok(b)
            }
            (None, None) => Err(ReduceError::NoBranch),
        }
    }
}

/// Reduces `g` with `config`; returns the solution and the counters.
pub fn reduce(g: &Graph, config: &Config) -> Result<(EdgeSet, Stats), ReduceError> {
    let mut solver = Solver::new(config.clone());
    let sol = solver.reduce(g)?;
    Ok((sol, solver.stats))
}

/// Best-effort fallback used by callers that need some 2-ECSS: reverse
/// deletion from the whole graph.
pub fn trivial_solution(g: &Graph) -> EdgeSet {
    reverse_delete(g, &g.full_set())
}
