//! From an economical bridgeless 2-edge-cover to a special configuration:
//! no medium components, no good cycles, no open 3-augmenting paths and no
//! small merges. The quotient `G/H`, shortcut detection, the good-cycle
//! search and the merge bookkeeping are shared with the gluing phase.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::cover::{Provenance, TwoEdgeCover};
use crate::graph::{decompose, EdgeId, EdgeSet, Graph, GraphError, SizeClass, VertexId};
use crate::stats::{Mode, Stats};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecialError {
    #[error("merge over nodes {nodes:?} does not produce one bridgeless component")]
    InvalidMerge { nodes: Vec<usize> },
    #[error("merged component holds {have} credit but needs {need}")]
    CreditDeficit { have: Rational, need: Rational },
    #[error("no connector paths for the open 3-augmenting path over nodes {nodes:?}")]
    PathNotFound { nodes: [usize; 4] },
    #[error("medium component {vertices:?}: no case applies ({case})")]
    CaseExhausted {
        vertices: Vec<VertexId>,
        case: &'static str,
    },
    #[error("component count did not drop ({before} -> {after})")]
    NoProgress { before: usize, after: usize },
    #[error("obstruction left after the special configuration phase: {0}")]
    Postcondition(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A spanning path of `G[V(C)]` from `a` to `b` with one unit edge less
/// than the component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shortcut {
    pub a: VertexId,
    pub b: VertexId,
    pub path: Vec<EdgeId>,
}

impl Shortcut {
    pub fn joins(&self, x: VertexId, y: VertexId) -> bool {
        (self.a == x && self.b == y) || (self.a == y && self.b == x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub vertices: Vec<VertexId>,
    pub weight: usize,
    pub class: SizeClass,
    /// Unit edges of the cover inside the node.
    pub unit_edges: Vec<EdgeId>,
    /// One shortcut per endpoint pair; empty for large nodes.
    pub shortcuts: Vec<Shortcut>,
}

/// The quotient `G/H` of a bridgeless 2-edge-cover: one node per
/// component, one link per edge of `G` between different components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub nodes: Vec<Node>,
    pub node_of: Vec<usize>,
    /// `(edge, other node)` per node, sorted by edge id.
    pub links: Vec<Vec<(EdgeId, usize)>>,
}

/// Simple paths through all of `vertices` inside `G[vertices]` with exactly
/// `target` unit edges, one per unordered endpoint pair.
pub fn spanning_paths(g: &Graph, vertices: &[VertexId], target: usize) -> Vec<Shortcut> {
    let k = vertices.len();
    let index = |v: VertexId| vertices.iter().position(|&x| x == v);
    let mut local: Vec<Vec<(usize, EdgeId, u8)>> = vec![Vec::new(); k];
    for (i, &v) in vertices.iter().enumerate() {
        for &e in g.incident(v) {
            if let Some(j) = index(g.edge(e).other(v)) {
                if j != i {
                    local[i].push((j, e, g.edge(e).weight));
                }
            }
        }
    }
    let mut found: BTreeMap<(VertexId, VertexId), Shortcut> = BTreeMap::new();
    fn dfs(
        local: &[Vec<(usize, EdgeId, u8)>],
        vertices: &[VertexId],
        target: usize,
        at: usize,
        visited: &mut Vec<bool>,
        count: usize,
        weight: usize,
        path: &mut Vec<EdgeId>,
        start: usize,
        found: &mut BTreeMap<(VertexId, VertexId), Shortcut>,
    ) {
        if count == vertices.len() {
            if weight == target {
                let (a, b) = (vertices[start], vertices[at]);
                let key = (a.min(b), a.max(b));
                found.entry(key).or_insert_with(|| Shortcut {
                    a,
                    b,
                    path: path.clone(),
                });
            }
            return;
        }
        for &(j, e, w) in &local[at] {
            if visited[j] || weight + w as usize > target {
                continue;
            }
            visited[j] = true;
            path.push(e);
            dfs(
                local,
                vertices,
                target,
                j,
                visited,
                count + 1,
                weight + w as usize,
                path,
                start,
                found,
            );
            path.pop();
            visited[j] = false;
        }
    }
    for s in 0..k {
        let mut visited = vec![false; k];
        visited[s] = true;
        dfs(
            &local,
            vertices,
            target,
            s,
            &mut visited,
            1,
            0,
            &mut Vec::new(),
            s,
            &mut found,
        );
    }
    found.into_values().collect()
}

impl Quotient {
    /// `h` must be a bridgeless 2-edge-cover.
    pub fn new(g: &Graph, h: &EdgeSet) -> Result<Quotient, GraphError> {
        let d = decompose(g, h)?;
        let nodes: Vec<Node> = d
            .components
            .iter()
            .map(|c| {
                let unit_edges: Vec<EdgeId> = c
                    .edges
                    .iter()
                    .copied()
                    .filter(|&e| g.edge(e).weight == 1)
                    .collect();
                let shortcuts = if c.class == SizeClass::Large || c.weight == 0 {
                    Vec::new()
                } else {
                    spanning_paths(g, &c.vertices, c.weight - 1)
                };
                Node {
                    vertices: c.vertices.clone(),
                    weight: c.weight,
                    class: c.class,
                    unit_edges,
                    shortcuts,
                }
            })
            .collect();
        let mut links = vec![Vec::new(); nodes.len()];
        for (e, ed) in g.edges().iter().enumerate() {
            let (p, q) = (d.comp_of[ed.u], d.comp_of[ed.v]);
            if p != q {
                links[p].push((e, q));
                links[q].push((e, p));
            }
        }
        Ok(Quotient {
            nodes,
            node_of: d.comp_of,
            links,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn shortcut(&self, x: usize, a: VertexId, b: VertexId) -> Option<&Shortcut> {
        self.nodes[x].shortcuts.iter().find(|s| s.joins(a, b))
    }

    /// Endpoint of link `e` inside node `x`.
    pub fn end_in(&self, g: &Graph, x: usize, e: EdgeId) -> VertexId {
        let ed = g.edge(e);
        if self.node_of[ed.u] == x {
            ed.u
        } else {
            ed.v
        }
    }

    /// Links of node `x` leaving from vertex `v`.
    pub fn links_at<'a>(
        &'a self,
        g: &'a Graph,
        x: usize,
        v: VertexId,
    ) -> impl Iterator<Item = (EdgeId, usize)> + 'a {
        self.links[x]
            .iter()
            .copied()
            .filter(move |&(e, _)| g.edge(e).touches(v) && self.end_in(g, x, e) == v)
    }

    /// Shortest node path from `from` to `to` avoiding `forbidden`, as the
    /// node sequence and the links used.
    pub fn path(
        &self,
        from: usize,
        to: usize,
        forbidden: &[bool],
    ) -> Option<(Vec<usize>, Vec<EdgeId>)> {
        if forbidden[from] || forbidden[to] {
            return None;
        }
        let mut via: Vec<Option<(EdgeId, usize)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(e, y) in &self.links[x] {
                if !seen[y] && !forbidden[y] {
                    seen[y] = true;
                    via[y] = Some((e, x));
                    queue.push_back(y);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut nodes = vec![to];
        let mut edges = Vec::new();
        let mut x = to;
        while let Some((e, p)) = via[x] {
            edges.push(e);
            nodes.push(p);
            x = p;
        }
        nodes.reverse();
        edges.reverse();
        Some((nodes, edges))
    }
}

/// Minimum credit of a component under the special-configuration scheme
/// (5/4 small) or the gluing scheme (4/3 small).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Special,
    Glue,
}

impl Scheme {
    pub fn minimum(self, class: SizeClass) -> Rational {
        match (self, class) {
            (_, SizeClass::Large) => Rational::from_integer(2),
            (_, SizeClass::Medium) => Rational::new(15, 8),
            (Scheme::Special, SizeClass::Small) => Rational::new(5, 4),
            (Scheme::Glue, SizeClass::Small) => Rational::new(4, 3),
        }
    }
}

/// Credit per component, keyed by its sorted vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentCredits {
    credits: BTreeMap<Vec<VertexId>, Rational>,
}

impl ComponentCredits {
    pub fn minimum(q: &Quotient, scheme: Scheme) -> ComponentCredits {
        ComponentCredits {
            credits: q
                .nodes
                .iter()
                .map(|n| (n.vertices.clone(), scheme.minimum(n.class)))
                .collect(),
        }
    }

    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (Vec<VertexId>, Rational)>,
    ) -> ComponentCredits {
        ComponentCredits {
            credits: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, vertices: &[VertexId]) -> Rational {
        self.credits.get(vertices).copied().unwrap_or_default()
    }

    pub fn total(&self) -> Rational {
        self.credits.values().copied().sum()
    }

    /// First component below its minimum, if any.
    pub fn deficient(
        &self,
        q: &Quotient,
        scheme: Scheme,
    ) -> Option<(Vec<VertexId>, Rational, Rational)> {
        q.nodes.iter().find_map(|n| {
            let have = self.get(&n.vertices);
            let need = scheme.minimum(n.class);
            (have < need).then(|| (n.vertices.clone(), have, need))
        })
    }
}

/// Edges to add and remove, and the nodes whose union becomes the new
/// components `groups` (a single group unless the step is a small to
/// medium merge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merge {
    pub add: Vec<EdgeId>,
    pub remove: Vec<EdgeId>,
    pub nodes: Vec<usize>,
    pub groups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merged {
    pub cover: EdgeSet,
    pub credits: ComponentCredits,
    pub shortfall: Rational,
}

/// Applies `m`, checks that the touched nodes turn into exactly
/// `m.groups` bridgeless components, and moves their credit (minus the
/// weight increase) onto the new components: each gets its minimum, the
/// first one the remainder.
pub fn apply_merge(
    g: &Graph,
    h: &EdgeSet,
    q: &Quotient,
    credits: &ComponentCredits,
    m: &Merge,
    scheme: Scheme,
) -> Result<Merged, SpecialError> {
    let invalid = || SpecialError::InvalidMerge {
        nodes: m.nodes.clone(),
    };
    let mut cover = h.clone();
    for &e in &m.remove {
        cover.remove(e);
    }
    for &e in &m.add {
        cover.insert(e);
    }
    let d = decompose(g, &cover).map_err(|_| invalid())?;
    if !d.is_bridgeless() {
        return Err(invalid());
    }
    let mut touched: Vec<VertexId> = m
        .nodes
        .iter()
        .flat_map(|&x| q.nodes[x].vertices.iter().copied())
        .collect();
    touched.sort_unstable();
    touched.dedup();
    let mut new_comps: Vec<usize> = touched.iter().map(|&v| d.comp_of[v]).collect();
    new_comps.sort_unstable();
    new_comps.dedup();
    let covered: usize = new_comps
        .iter()
        .map(|&c| d.components[c].vertices.len())
        .sum();
    if new_comps.len() != m.groups || covered != touched.len() {
        return Err(invalid());
    }
    let delta = cover.weight(g) as i64 - h.weight(g) as i64;
    let mut pool = -Rational::from_integer(delta);
    let mut next = credits.clone();
    for &x in &m.nodes {
        if let Some(c) = next.credits.remove(&q.nodes[x].vertices) {
            pool += c;
        }
    }
    let mut shortfall = Rational::from_integer(0);
    let mut keys = Vec::new();
    for &c in &new_comps {
        let comp = &d.components[c];
        let need = scheme.minimum(comp.class);
        pool -= need;
        next.credits.insert(comp.vertices.clone(), need);
        keys.push(comp.vertices.clone());
    }
    if pool < Rational::from_integer(0) {
        shortfall = -pool;
    } else {
        *next.credits.get_mut(&keys[0]).expect("inserted above") += pool;
    }
    Ok(Merged {
        cover,
        credits: next,
        shortfall,
    })
}

fn sell_outside(q: &Quotient, x: usize, keep: &Shortcut) -> Vec<EdgeId> {
    q.nodes[x]
        .unit_edges
        .iter()
        .copied()
        .filter(|e| !keep.path.contains(e))
        .collect()
}

// ---------------------------------------------------------------------
// cycles through prescribed edges

/// A simple cycle of `g` containing every edge of `f`, found by depth-first
/// search over simple paths closing the first edge, pruned by reachability.
pub fn cycle_through_edges(g: &Graph, f: &[EdgeId]) -> Option<Vec<EdgeId>> {
    let (&first, rest) = f.split_first()?;
    let (s, t) = (g.edge(first).u, g.edge(first).v);
    if s == t {
        return None;
    }
    let n = g.n();
    let mut required_at = vec![0usize; n];
    for &e in rest {
        if e == first {
            continue;
        }
        required_at[g.edge(e).u] += 1;
        required_at[g.edge(e).v] += 1;
    }
    if required_at.iter().any(|&c| c > 2) {
        return None;
    }
    let mut on_path = vec![false; n];
    on_path[t] = true;
    let mut path = Vec::new();

    fn reachable(
        g: &Graph,
        from: VertexId,
        to: VertexId,
        on_path: &[bool],
        banned: EdgeId,
    ) -> bool {
        let mut seen = vec![false; g.n()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            for &e in g.incident(x) {
                if e == banned {
                    continue;
                }
                let y = g.edge(e).other(x);
                if !seen[y] && (y == to || !on_path[y]) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn go(
        g: &Graph,
        at: VertexId,
        s: VertexId,
        first: EdgeId,
        rest: &[EdgeId],
        on_path: &mut Vec<bool>,
        path: &mut Vec<EdgeId>,
    ) -> bool {
        if at == s {
            return rest.iter().all(|e| *e == first || path.contains(e));
        }
        if !reachable(g, at, s, on_path, first) {
            return false;
        }
        // an unused required edge ending here must be taken next
        let arrived = path.last().copied();
        let forced: Vec<EdgeId> = rest
            .iter()
            .copied()
            .filter(|&e| {
                e != first && g.edge(e).touches(at) && Some(e) != arrived && !path.contains(&e)
            })
            .collect();
        let candidates: Vec<EdgeId> = if forced.len() > 1 {
            return false;
        } else if let Some(&e) = forced.first() {
            vec![e]
        } else {
            g.incident(at).to_vec()
        };
        for e in candidates {
            if e == first {
                continue;
            }
            let y = g.edge(e).other(at);
            if y != s && on_path[y] {
                continue;
            }
            if y == at {
                continue;
            }
            on_path[y] = true;
            path.push(e);
            if go(g, y, s, first, rest, on_path, path) {
                return true;
            }
            path.pop();
            on_path[y] = false;
        }
        false
    }

    if go(g, t, s, first, rest, &mut on_path, &mut path) {
        path.push(first);
        Some(path)
    } else {
        None
    }
}

// ---------------------------------------------------------------------
// good cycles

/// How a node takes part in a candidate good cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// A large node; the cycle may touch it anywhere.
    Whole(usize),
    /// A small or medium node entered at `a` and left at `b` (or back).
    Ports(usize, Shortcut),
}

impl Anchor {
    pub fn node(&self) -> usize {
        match self {
            Anchor::Whole(x) | Anchor::Ports(x, _) => *x,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    TwoLarge,
    TwoShortcuts,
    LargeAndShortcut,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodCycle {
    pub nodes: Vec<usize>,
    pub edges: Vec<EdgeId>,
    pub shortcuts: Vec<(usize, Shortcut)>,
    pub flavor: Flavor,
}

impl GoodCycle {
    pub fn savings(&self) -> usize {
        self.shortcuts.len()
    }

    pub fn to_merge(&self, q: &Quotient) -> Merge {
        Merge {
            add: self
                .edges
                .iter()
                .chain(self.shortcuts.iter().flat_map(|(_, s)| s.path.iter()))
                .copied()
                .collect(),
            remove: self
                .shortcuts
                .iter()
                .flat_map(|(x, s)| sell_outside(q, *x, s))
                .collect(),
            nodes: self.nodes.clone(),
            groups: 1,
        }
    }
}

struct Flow {
    to: Vec<usize>,
    cap: Vec<u8>,
    label: Vec<Option<EdgeId>>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(n: usize) -> Flow {
        Flow {
            to: Vec::new(),
            cap: Vec::new(),
            label: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn arc(&mut self, u: usize, v: usize, label: Option<EdgeId>) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(1);
        self.label.push(label);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
        self.label.push(label);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &a in &self.adj[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut x = t;
        while x != s {
            let a = via[x];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            x = self.to[a ^ 1];
        }
        true
    }

    /// Splits a flow of value two into its two paths, as arc label lists.
    fn paths(&self, s: usize, t: usize) -> Vec<Vec<EdgeId>> {
        let mut used = vec![false; self.to.len()];
        let mut out = Vec::new();
        for _ in 0..2 {
            let mut labels = Vec::new();
            let mut x = s;
            let mut guard = 0;
            while x != t && guard <= self.to.len() {
                guard += 1;
                let a = self.adj[x]
                    .iter()
                    .copied()
                    .find(|&a| a % 2 == 0 && self.cap[a] == 0 && !used[a])
                    .expect("flow conservation");
                used[a] = true;
                if let Some(e) = self.label[a] {
                    labels.push(e);
                }
                x = self.to[a];
            }
            out.push(labels);
        }
        out
    }
}

/// A cycle of `G/H` through both anchors that respects their ports, if one
/// exists. Node-disjointness comes from splitting every other node into an
/// in/out pair of capacity one.
pub fn cycle_through_anchors(
    g: &Graph,
    q: &Quotient,
    x: &Anchor,
    y: &Anchor,
    banned: &[bool],
) -> Option<GoodCycle> {
    let (xn, yn) = (x.node(), y.node());
    if xn == yn {
        return None;
    }
    let k = q.len();
    let s = 2 * k;
    let t = 2 * k + 1;
    let (xa, xb, ya, yb) = (2 * k + 2, 2 * k + 3, 2 * k + 4, 2 * k + 5);
    let mut flow = Flow::new(2 * k + 6);
    for z in 0..k {
        if z != xn && z != yn && !banned[z] {
            flow.arc(2 * z, 2 * z + 1, None);
        }
    }
    if let Anchor::Ports(_, _) = x {
        flow.arc(s, xa, None);
        flow.arc(s, xb, None);
    }
    if let Anchor::Ports(_, _) = y {
        flow.arc(ya, t, None);
        flow.arc(yb, t, None);
    }
    let tail = |node: usize, v: VertexId| -> Option<usize> {
        if node == xn {
            match x {
                Anchor::Whole(_) => Some(s),
                Anchor::Ports(_, p) if v == p.a => Some(xa),
                Anchor::Ports(_, p) if v == p.b => Some(xb),
                _ => None,
            }
        } else if node == yn || banned[node] {
            None
        } else {
            Some(2 * node + 1)
        }
    };
    let head = |node: usize, v: VertexId| -> Option<usize> {
        if node == yn {
            match y {
                Anchor::Whole(_) => Some(t),
                Anchor::Ports(_, p) if v == p.a => Some(ya),
                Anchor::Ports(_, p) if v == p.b => Some(yb),
                _ => None,
            }
        } else if node == xn || banned[node] {
            None
        } else {
            Some(2 * node)
        }
    };
    for (e, ed) in g.edges().iter().enumerate() {
        let (p, r) = (q.node_of[ed.u], q.node_of[ed.v]);
        if p == r {
            continue;
        }
        for (a, b) in [(ed.u, ed.v), (ed.v, ed.u)] {
            let (pa, pb) = (q.node_of[a], q.node_of[b]);
            if let (Some(from), Some(to)) = (tail(pa, a), head(pb, b)) {
                flow.arc(from, to, Some(e));
            }
        }
    }
    if !(flow.augment(s, t) && flow.augment(s, t)) {
        return None;
    }
    let paths = flow.paths(s, t);
    let mut edges: Vec<EdgeId> = paths.iter().flatten().copied().collect();
    edges.sort_unstable();
    let mut nodes: Vec<usize> = edges
        .iter()
        .flat_map(|&e| [q.node_of[g.edge(e).u], q.node_of[g.edge(e).v]])
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut shortcuts = Vec::new();
    for anchor in [x, y] {
        if let Anchor::Ports(node, sc) = anchor {
            shortcuts.push((*node, sc.clone()));
        }
    }
    let flavor = match shortcuts.len() {
        0 => Flavor::TwoLarge,
        1 => Flavor::LargeAndShortcut,
        _ => Flavor::TwoShortcuts,
    };
    Some(GoodCycle {
        nodes,
        edges,
        shortcuts,
        flavor,
    })
}

/// Anchors of every node: large nodes once, small and medium nodes once
/// per shortcut.
pub fn anchors(q: &Quotient) -> Vec<Anchor> {
    let mut out = Vec::new();
    for (x, node) in q.nodes.iter().enumerate() {
        if node.class == SizeClass::Large {
            out.push(Anchor::Whole(x));
        } else {
            for s in &node.shortcuts {
                out.push(Anchor::Ports(x, s.clone()));
            }
        }
    }
    out
}

/// Biconnected blocks of `G/H` as node-membership lists; two nodes can lie
/// on a common cycle only if they share a block.
fn quotient_blocks(q: &Quotient) -> Vec<Vec<usize>> {
    let k = q.len();
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut disc = vec![usize::MAX; k];
    let mut low = vec![0usize; k];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut block_id = 0;
    for root in 0..k {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack: Vec<(usize, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (x, via, idx) = stack[top];
            if idx < q.links[x].len() {
                stack[top].2 += 1;
                let (e, y) = q.links[x][idx];
                if Some(e) == via {
                    continue;
                }
                if disc[y] == usize::MAX {
                    disc[y] = timer;
                    low[y] = timer;
                    timer += 1;
                    edge_stack.push((x, y));
                    stack.push((y, Some(e), 0));
                } else if disc[y] < disc[x] {
                    low[x] = low[x].min(disc[y]);
                    edge_stack.push((x, y));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if low[x] >= disc[p] {
                        while let Some((a, b)) = edge_stack.pop() {
                            for z in [a, b] {
                                if member[z].last() != Some(&block_id) {
                                    member[z].push(block_id);
                                }
                            }
                            if (a, b) == (p, x) {
                                break;
                            }
                        }
                        block_id += 1;
                    }
                }
            }
        }
    }
    member
}

/// First good cycle of `G/H` over anchor pairs in node order, if any.
pub fn find_good_cycle(g: &Graph, q: &Quotient) -> Option<GoodCycle> {
    let list = anchors(q);
    let blocks = quotient_blocks(q);
    let share = |a: usize, b: usize| blocks[a].iter().any(|x| blocks[b].contains(x));
    let banned = vec![false; q.len()];
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            let (x, y) = (list[i].node(), list[j].node());
            if x == y || !share(x, y) {
                continue;
            }
            if let Some(c) = cycle_through_anchors(g, q, &list[i], &list[j], &banned) {
                return Some(c);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------
// small merges

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallMerge {
    pub nodes: [usize; 3],
    /// Two weight-3 cycles (to medium) or one weight-6 cycle (to large).
    pub cycles: Vec<Vec<EdgeId>>,
}

impl SmallMerge {
    pub fn to_large(&self) -> bool {
        self.cycles.len() == 1
    }

    pub fn to_merge(&self, g: &Graph, h: &EdgeSet, q: &Quotient) -> Merge {
        let keep: Vec<EdgeId> = self.cycles.iter().flatten().copied().collect();
        let remove = self
            .nodes
            .iter()
            .flat_map(|&x| q.nodes[x].unit_edges.iter().copied())
            .filter(|e| !keep.contains(e))
            .collect();
        let add = keep
            .iter()
            .copied()
            .filter(|&e| !h.contains(e) && g.edge(e).weight == 1)
            .collect();
        Merge {
            add,
            remove,
            nodes: self.nodes.to_vec(),
            groups: self.cycles.len(),
        }
    }
}

/// A Hamiltonian cycle of `G[vertices]` with exactly `target` unit edges.
pub fn hamiltonian_cycle(g: &Graph, vertices: &[VertexId], target: usize) -> Option<Vec<EdgeId>> {
    let k = vertices.len();
    if k < 3 {
        return None;
    }
    let index = |v: VertexId| vertices.iter().position(|&x| x == v);
    let mut local: Vec<Vec<(usize, EdgeId, usize)>> = vec![Vec::new(); k];
    for (i, &v) in vertices.iter().enumerate() {
        for &e in g.incident(v) {
            if let Some(j) = index(g.edge(e).other(v)) {
                if j != i {
                    local[i].push((j, e, g.edge(e).weight as usize));
                }
            }
        }
    }
    fn go(
        local: &[Vec<(usize, EdgeId, usize)>],
        target: usize,
        at: usize,
        visited: &mut [bool],
        count: usize,
        weight: usize,
        path: &mut Vec<EdgeId>,
    ) -> bool {
        let k = local.len();
        if count == k {
            for &(j, e, w) in &local[at] {
                if j == 0 && weight + w == target && path.first() != Some(&e) {
                    path.push(e);
                    return true;
                }
            }
            return false;
        }
        // every unvisited vertex still needs at least one more unit edge
        // unless it has a zero edge; cheap bound: remaining vertices / 2
        if weight + (k - count) / 2 > target {
            return false;
        }
        for &(j, e, w) in &local[at] {
            if visited[j] || weight + w > target {
                continue;
            }
            visited[j] = true;
            path.push(e);
            if go(local, target, j, visited, count + 1, weight + w, path) {
                return true;
            }
            path.pop();
            visited[j] = false;
        }
        false
    }
    let mut visited = vec![false; k];
    visited[0] = true;
    let mut path = Vec::new();
    go(&local, target, 0, &mut visited, 1, 0, &mut path).then_some(path)
}

fn small_merge_on(g: &Graph, q: &Quotient, triple: [usize; 3]) -> Option<SmallMerge> {
    let mut union: Vec<VertexId> = triple
        .iter()
        .flat_map(|&x| q.nodes[x].vertices.iter().copied())
        .collect();
    union.sort_unstable();
    if union.len() > 12 {
        return None;
    }
    // two cycles: split along zero-edge pairs so no zero edge crosses
    let mut units: Vec<Vec<VertexId>> = Vec::new();
    let mut placed = vec![false; union.len()];
    for (i, &v) in union.iter().enumerate() {
        if placed[i] {
            continue;
        }
        placed[i] = true;
        let mut unit = vec![v];
        if let Some((_, w)) = g.zero_partner(v) {
            if let Some(j) = union.iter().position(|&x| x == w) {
                placed[j] = true;
                unit.push(w);
            }
        }
        units.push(unit);
    }
    let count = units.len();
    for mask in 0u32..(1 << (count - 1)) {
        // unit 0 always on the first side
        let side: Vec<VertexId> = (0..count)
            .filter(|&i| i == 0 || mask >> (i - 1) & 1 == 1)
            .flat_map(|i| units[i].iter().copied())
            .collect();
        let other: Vec<VertexId> = union
            .iter()
            .copied()
            .filter(|v| !side.contains(v))
            .collect();
        if !(3..=6).contains(&side.len()) || !(3..=6).contains(&other.len()) {
            continue;
        }
        if let Some(c1) = hamiltonian_cycle(g, &side, 3) {
            if let Some(c2) = hamiltonian_cycle(g, &other, 3) {
                return Some(SmallMerge {
                    nodes: triple,
                    cycles: vec![c1, c2],
                });
            }
        }
    }
    hamiltonian_cycle(g, &union, 6).map(|c| SmallMerge {
        nodes: triple,
        cycles: vec![c],
    })
}

/// First small to medium (or small to large) merge over triples of small
/// nodes that are connected in `G/H`.
pub fn find_small_merge(g: &Graph, q: &Quotient) -> Option<SmallMerge> {
    let small: Vec<usize> = (0..q.len())
        .filter(|&x| q.nodes[x].class == SizeClass::Small)
        .collect();
    let adjacent = |a: usize, b: usize| q.links[a].iter().any(|&(_, y)| y == b);
    for i in 0..small.len() {
        for j in i + 1..small.len() {
            for k in j + 1..small.len() {
                let (a, b, c) = (small[i], small[j], small[k]);
                let edges = [adjacent(a, b), adjacent(b, c), adjacent(a, c)];
                if edges.iter().filter(|&&x| x).count() < 2 {
                    continue;
                }
                if let Some(m) = small_merge_on(g, q, [a, b, c]) {
                    return Some(m);
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------
// open 3-augmenting paths

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugPath3 {
    pub nodes: [usize; 4],
    pub edges: [EdgeId; 3],
    /// Spanning paths of the interior nodes `x2` and `x3`.
    pub paths: [Shortcut; 2],
}

fn open_3aug_candidates(g: &Graph, q: &Quotient, visit: &mut dyn FnMut(AugPath3) -> bool) {
    for x2 in 0..q.len() {
        if q.nodes[x2].class != SizeClass::Small {
            continue;
        }
        for &(e2, x3) in &q.links[x2] {
            if q.nodes[x3].class != SizeClass::Small {
                continue;
            }
            let b = q.end_in(g, x2, e2);
            let c = q.end_in(g, x3, e2);
            for &(e1, x1) in &q.links[x2] {
                if x1 == x3 || e1 == e2 {
                    continue;
                }
                let a = q.end_in(g, x2, e1);
                let Some(p2) = q.shortcut(x2, a, b) else {
                    continue;
                };
                for &(e3, x4) in &q.links[x3] {
                    if x4 == x1 || x4 == x2 || e3 == e2 {
                        continue;
                    }
                    let d = q.end_in(g, x3, e3);
                    let Some(p3) = q.shortcut(x3, c, d) else {
                        continue;
                    };
                    let aug = AugPath3 {
                        nodes: [x1, x2, x3, x4],
                        edges: [e1, e2, e3],
                        paths: [p2.clone(), p3.clone()],
                    };
                    if !visit(aug) {
                        return;
                    }
                }
            }
        }
    }
}

pub fn find_open_3aug(g: &Graph, q: &Quotient) -> Option<AugPath3> {
    let mut found = None;
    open_3aug_candidates(g, q, &mut |p| {
        found = Some(p);
        false
    });
    found
}

/// The merge for an open 3-augmenting path: the path itself, a connector
/// `P1` from `x1` to `x3` avoiding `x2` and `x4`, and a connector `P2` from
/// `x4` to `x2` avoiding `x1`, `x3` and the nodes of `P1`.
pub fn open_3aug_merge(q: &Quotient, p: &AugPath3) -> Result<Merge, SpecialError> {
    let [x1, x2, x3, x4] = p.nodes;
    let mut forbidden = vec![false; q.len()];
    forbidden[x2] = true;
    forbidden[x4] = true;
    let missing = || SpecialError::PathNotFound { nodes: p.nodes };
    let (n1, e1) = q.path(x1, x3, &forbidden).ok_or_else(missing)?;
    let mut forbidden = vec![false; q.len()];
    for &z in &n1 {
        forbidden[z] = true;
    }
    let (n2, e2) = q.path(x4, x2, &forbidden).ok_or_else(missing)?;
    let mut nodes: Vec<usize> = p.nodes.iter().copied().chain(n1).chain(n2).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut add: Vec<EdgeId> = p
        .edges
        .iter()
        .copied()
        .chain(e1)
        .chain(e2)
        .chain(p.paths.iter().flat_map(|s| s.path.iter().copied()))
        .collect();
    add.sort_unstable();
    add.dedup();
    let mut remove = sell_outside(q, x2, &p.paths[0]);
    remove.extend(sell_outside(q, x3, &p.paths[1]));
    Ok(Merge {
        add,
        remove,
        nodes,
        groups: 1,
    })
}

// ---------------------------------------------------------------------
// medium components

/// Which branch of the medium-component case analysis produced a merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MediumCase {
    NonSeparator,
    AdjacentMedium,
    AdjacentSmall,
    SameSide,
    Nice,
    Generic,
}

/// Ear through `G/H` leaving node `x` at both ends of its unit edge `e`
/// (links `l1`, `l2`), closed by a path avoiding `x`; `e` is sold.
fn ear_selling(
    g: &Graph,
    q: &Quotient,
    x: usize,
    e: EdgeId,
    l1: (EdgeId, usize),
    l2: (EdgeId, usize),
) -> Option<Merge> {
    let mut forbidden = vec![false; q.len()];
    forbidden[x] = true;
    let (path_nodes, path_edges) = q.path(l1.1, l2.1, &forbidden)?;
    let mut nodes: Vec<usize> = path_nodes;
    nodes.push(x);
    nodes.sort_unstable();
    nodes.dedup();
    let _ = g;
    Some(Merge {
        add: [l1.0, l2.0].into_iter().chain(path_edges).collect(),
        remove: vec![e],
        nodes,
        groups: 1,
    })
}

/// Candidate merges for medium node `x`, in the order of the case
/// analysis; each is validated by the caller.
pub fn medium_candidates(g: &Graph, q: &Quotient, x: usize) -> Vec<(MediumCase, Merge)> {
    let node = &q.nodes[x];
    let mut out = Vec::new();
    let mut forbidden = vec![false; q.len()];
    forbidden[x] = true;
    // parts of G/H - x
    let mut part = vec![usize::MAX; q.len()];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for z in 0..q.len() {
        if z == x || part[z] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut members = vec![z];
        part[z] = id;
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            i += 1;
            for &(_, w) in &q.links[y] {
                if w != x && part[w] == usize::MAX {
                    part[w] = id;
                    members.push(w);
                }
            }
        }
        parts.push(members);
    }
    let ends = |e: EdgeId| (g.edge(e).u, g.edge(e).v);
    let links_at = |v: VertexId| q.links_at(g, x, v).collect::<Vec<_>>();

    if parts.len() <= 1 {
        for &e in &node.unit_edges {
            let (u1, u2) = ends(e);
            let (o1, o2) = (links_at(u1), links_at(u2));
            if let (Some(&l1), Some(&l2)) = (o1.first(), o2.first()) {
                if let Some(m) = ear_selling(g, q, x, e, l1, l2) {
                    out.push((MediumCase::NonSeparator, m));
                }
            }
        }
    } else {
        for members in &parts {
            if members.len() != 1 {
                continue;
            }
            let y = members[0];
            match q.nodes[y].class {
                SizeClass::Medium => {
                    for &e in &q.nodes[y].unit_edges {
                        let (u1, u2) = ends(e);
                        let o1: Vec<_> = q.links_at(g, y, u1).collect();
                        let o2: Vec<_> = q.links_at(g, y, u2).collect();
                        if let (Some(&l1), Some(&l2)) = (o1.first(), o2.first()) {
                            out.push((
                                MediumCase::AdjacentMedium,
                                Merge {
                                    add: vec![l1.0, l2.0],
                                    remove: vec![e],
                                    nodes: vec![x.min(y), x.max(y)],
                                    groups: 1,
                                },
                            ));
                        }
                    }
                }
                SizeClass::Small => {
                    for s in &q.nodes[y].shortcuts {
                        let fa = q.links_at(g, y, s.a).find(|&(_, z)| z == x);
                        let fb = q.links_at(g, y, s.b).find(|&(_, z)| z == x);
                        if let (Some(fa), Some(fb)) = (fa, fb) {
                            out.push((
                                MediumCase::AdjacentSmall,
                                Merge {
                                    add: [fa.0, fb.0]
                                        .into_iter()
                                        .chain(s.path.iter().copied())
                                        .collect(),
                                    remove: sell_outside(q, y, s),
                                    nodes: vec![x.min(y), x.max(y)],
                                    groups: 1,
                                },
                            ));
                        }
                    }
                }
                SizeClass::Large => {}
            }
        }
        // both ends of a unit edge reach the same part
        for &e in &node.unit_edges {
            let (u1, u2) = ends(e);
            for l1 in links_at(u1) {
                if let Some(l2) = links_at(u2).into_iter().find(|l2| part[l2.1] == part[l1.1]) {
                    if let Some(m) = ear_selling(g, q, x, e, l1, l2) {
                        out.push((MediumCase::SameSide, m));
                        break;
                    }
                }
            }
        }
        // nice case: two unit edges, each with one end towards either part
        if parts.len() == 2 {
            let toward = |v: VertexId, p: usize| links_at(v).into_iter().find(|l| part[l.1] == p);
            let units = &node.unit_edges;
            for i in 0..units.len() {
                for j in i + 1..units.len() {
                    let (a1, b1) = ends(units[i]);
                    let (a2, b2) = ends(units[j]);
                    for (p1, q1) in [(a1, b1), (b1, a1)] {
                        for (p2, q2) in [(a2, b2), (b2, a2)] {
                            let (Some(f1), Some(f2), Some(g1), Some(g2)) =
                                (toward(p1, 0), toward(p2, 0), toward(q1, 1), toward(q2, 1))
                            else {
                                continue;
                            };
                            let Some((n1, e1)) = q.path(f1.1, f2.1, &forbidden) else {
                                continue;
                            };
                            let Some((n2, e2)) = q.path(g1.1, g2.1, &forbidden) else {
                                continue;
                            };
                            let mut nodes: Vec<usize> =
                                n1.into_iter().chain(n2).chain([x]).collect();
                            nodes.sort_unstable();
                            nodes.dedup();
                            let mut add: Vec<EdgeId> = [f1.0, f2.0, g1.0, g2.0]
                                .into_iter()
                                .chain(e1)
                                .chain(e2)
                                .collect();
                            add.sort_unstable();
                            add.dedup();
                            out.push((
                                MediumCase::Nice,
                                Merge {
                                    add,
                                    remove: vec![units[i], units[j]],
                                    nodes,
                                    groups: 1,
                                },
                            ));
                        }
                    }
                }
            }
        }
    }
    // any unit edge with any pair of outgoing links
    for &e in &node.unit_edges {
        let (u1, u2) = ends(e);
        for l1 in links_at(u1) {
            for l2 in links_at(u2) {
                if let Some(m) = ear_selling(g, q, x, e, l1, l2) {
                    out.push((MediumCase::Generic, m));
                }
            }
        }
    }
    // plain ear through x without selling anything
    let all: Vec<(EdgeId, usize)> = q.links[x].clone();
    'outer: for i in 0..all.len() {
        for j in i + 1..all.len() {
            if let Some((pn, pe)) = q.path(all[i].1, all[j].1, &forbidden) {
                let mut nodes: Vec<usize> = pn.into_iter().chain([x]).collect();
                nodes.sort_unstable();
                nodes.dedup();
                out.push((
                    MediumCase::Generic,
                    Merge {
                        add: [all[i].0, all[j].0].into_iter().chain(pe).collect(),
                        remove: vec![],
                        nodes,
                        groups: 1,
                    },
                ));
                break 'outer;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------
// driver

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    GoodCycle(Flavor),
    SmallMerge { to_large: bool },
    Open3Aug,
    Medium(MediumCase),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialOutcome {
    pub cover: TwoEdgeCover,
    pub credits: ComponentCredits,
    pub steps: Vec<Step>,
}

/// Which obstructions of a special configuration are present.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Obstructions {
    pub medium: bool,
    pub good_cycle: bool,
    pub open_3aug: bool,
    pub small_merge: bool,
}

impl Obstructions {
    pub fn none(&self) -> bool {
        !(self.medium || self.good_cycle || self.open_3aug || self.small_merge)
    }
}

pub fn obstructions(g: &Graph, h: &EdgeSet) -> Result<Obstructions, GraphError> {
    let q = Quotient::new(g, h)?;
    Ok(Obstructions {
        medium: q.nodes.iter().any(|n| n.class == SizeClass::Medium),
        good_cycle: find_good_cycle(g, &q).is_some(),
        open_3aug: find_open_3aug(g, &q).is_some(),
        small_merge: find_small_merge(g, &q).is_some(),
    })
}

fn commit(
    merged: Merged,
    before: usize,
    g: &Graph,
    mode: Mode,
    stats: &mut Stats,
    cover: &mut EdgeSet,
    credits: &mut ComponentCredits,
) -> Result<(), SpecialError> {
    if merged.shortfall > Rational::from_integer(0) {
        if mode == Mode::Strict {
            return Err(SpecialError::CreditDeficit {
                have: Rational::from_integer(0) - merged.shortfall,
                need: Rational::from_integer(0),
            });
        }
        stats.credit_deficits += 1;
    }
    let after = decompose(g, &merged.cover)?.components.len();
    if after >= before {
        return Err(SpecialError::NoProgress { before, after });
    }
    *cover = merged.cover;
    *credits = merged.credits;
    Ok(())
}

/// Removes every obstruction in the order good cycle, small merge, open
/// 3-augmenting path, medium component, until none is left.
pub fn build_special_config(
    g: &Graph,
    h: &TwoEdgeCover,
    initial: Option<ComponentCredits>,
    mode: Mode,
    stats: &mut Stats,
) -> Result<SpecialOutcome, SpecialError> {
    let mut cover = h.edges.clone();
    let q0 = Quotient::new(g, &cover)?;
    let mut credits = initial.unwrap_or_else(|| ComponentCredits::minimum(&q0, Scheme::Special));
    let mut steps = Vec::new();
    loop {
        let q = Quotient::new(g, &cover)?;
        let before = q.len();
        if before <= 1 {
            break;
        }
        if let Some(gc) = find_good_cycle(g, &q) {
            let merged = apply_merge(g, &cover, &q, &credits, &gc.to_merge(&q), Scheme::Special)?;
            commit(merged, before, g, mode, stats, &mut cover, &mut credits)?;
            stats.good_cycles += 1;
            steps.push(Step::GoodCycle(gc.flavor));
            continue;
        }
        if let Some(sm) = find_small_merge(g, &q) {
            let merged = apply_merge(
                g,
                &cover,
                &q,
                &credits,
                &sm.to_merge(g, &cover, &q),
                Scheme::Special,
            )?;
            commit(merged, before, g, mode, stats, &mut cover, &mut credits)?;
            stats.small_merges += 1;
            steps.push(Step::SmallMerge {
                to_large: sm.to_large(),
            });
            continue;
        }
        let mut done = None;
        let mut first_error = None;
        open_3aug_candidates(g, &q, &mut |p| match open_3aug_merge(&q, &p)
            .and_then(|m| apply_merge(g, &cover, &q, &credits, &m, Scheme::Special))
        {
            Ok(merged) => {
                done = Some(merged);
                false
            }
            Err(e) => {
                first_error.get_or_insert(e);
                true
            }
        });
        if let Some(merged) = done {
            commit(merged, before, g, mode, stats, &mut cover, &mut credits)?;
            stats.open_3aug += 1;
            steps.push(Step::Open3Aug);
            continue;
        }
        if let (Some(e), Mode::Strict) = (first_error, mode) {
            return Err(e);
        }
        if let Some(x) = (0..q.len()).find(|&x| q.nodes[x].class == SizeClass::Medium) {
            let mut applied = None;
            for (case, m) in medium_candidates(g, &q, x) {
                if let Ok(merged) = apply_merge(g, &cover, &q, &credits, &m, Scheme::Special) {
                    if merged.shortfall == Rational::from_integer(0) || case == MediumCase::Generic
                    {
                        applied = Some((case, merged));
                        break;
                    }
                }
            }
            let Some((case, merged)) = applied else {
                if mode == Mode::Strict {
                    return Err(SpecialError::CaseExhausted {
                        vertices: q.nodes[x].vertices.clone(),
                        case: "all",
                    });
                }
                break;
            };
            if case == MediumCase::Generic {
                if mode == Mode::Strict {
                    return Err(SpecialError::CaseExhausted {
                        vertices: q.nodes[x].vertices.clone(),
                        case: "structured cases",
                    });
                }
                stats.medium_generic += 1;
            }
            commit(merged, before, g, mode, stats, &mut cover, &mut credits)?;
            stats.medium_eliminations += 1;
            steps.push(Step::Medium(case));
            continue;
        }
        break;
    }
    let left = obstructions(g, &cover)?;
    if !left.none() {
        if mode == Mode::Strict {
            return Err(SpecialError::Postcondition(if left.medium {
                "medium component"
            } else if left.good_cycle {
                "good cycle"
            } else if left.open_3aug {
                "open 3-augmenting path"
            } else {
                "small merge"
            }));
        }
        stats.special_postcondition_failures += 1;
    }
    Ok(SpecialOutcome {
        cover: TwoEdgeCover {
            edges: cover,
            provenance: Provenance::Special,
        },
        credits,
        steps,
    })
}
