//! Multigraph core: 0/1-weighted undirected multigraphs, edge subsets,
//! bridge/block decomposition and contraction with an exact edge map.

use std::collections::VecDeque;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    /// Either 0 or 1.
    pub weight: u8,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_zero(&self) -> bool {
        self.weight == 0
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge weight {0} is not 0 or 1")]
    WeightOutOfRange(u32),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("zero edges {0} and {1} share a vertex")]
    ZeroEdgesNotMatching(EdgeId, EdgeId),
    #[error("graph is not 2-edge-connected: {0}")]
    NotTwoEdgeConnected(Disconnection),
    #[error("vertex {vertex} has degree {degree} in the subgraph, expected at least 2")]
    NotTwoEdgeCover { vertex: VertexId, degree: usize },
    #[error("contraction parts overlap at vertex {0}")]
    OverlappingParts(VertexId),
    #[error("unknown edge id {0}")]
    UnknownEdgeId(EdgeId),
}

/// Why a graph fails to be 2-edge-connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disconnection {
    Bridge(EdgeId),
    Disconnected { a: VertexId, b: VertexId },
}

impl std::fmt::Display for Disconnection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Disconnection::Bridge(e) => write!(f, "edge {e} is a bridge"),
            Disconnection::Disconnected { a, b } => {
                write!(f, "vertices {a} and {b} are in different components")
            }
        }
    }
}

/// Undirected multigraph with 0/1 edge weights. Vertices are `0..n`,
/// edge ids are indices into the edge list and never change.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from `(u, v, weight)` triples. Panics on loops or
    /// out-of-range endpoints; use the parser for untrusted input.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId, u8)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w);
        }
        g
    }

    pub fn try_add_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        weight: u8,
    ) -> Result<EdgeId, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if weight > 1 {
            return Err(GraphError::WeightOutOfRange(weight as u32));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, weight });
        self.adj[u].push(id);
        self.adj[v].push(id);
        Ok(id)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: u8) -> EdgeId {
        match self.try_add_edge(u, v, weight) {
            Ok(id) => id,
            Err(e) => panic!("add_edge({u}, {v}, {weight}): {e}"),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn unit_degree(&self, v: VertexId) -> usize {
        self.adj[v]
            .iter()
            .filter(|&&e| self.edges[e].weight == 1)
            .count()
    }

    /// The zero edge at `v` and its other endpoint, if any (the first one
    /// found when the matching invariant is violated).
    pub fn zero_partner(&self, v: VertexId) -> Option<(EdgeId, VertexId)> {
        self.adj[v]
            .iter()
            .find(|&&e| self.edges[e].is_zero())
            .map(|&e| (e, self.edges[e].other(v)))
    }

    pub fn zero_edges(&self) -> Vec<EdgeId> {
        (0..self.m()).filter(|&e| self.edges[e].is_zero()).collect()
    }

    pub fn unit_edges(&self) -> Vec<EdgeId> {
        (0..self.m())
            .filter(|&e| !self.edges[e].is_zero())
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.parallel_pairs().is_empty()
    }

    /// Pairs `(kept, duplicate)` of parallel edges, sorted by duplicate id.
    pub fn parallel_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut seen = std::collections::HashMap::new();
        let mut out = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            let key = (e.u.min(e.v), e.u.max(e.v));
            match seen.get(&key) {
                Some(&first) => out.push((first, id)),
                None => {
                    seen.insert(key, id);
                }
            }
        }
        out
    }

    /// Edges between `u` and `v`, in id order.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.adj[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].other(u) == v)
            .collect()
    }

    pub fn full_set(&self) -> EdgeSet {
        EdgeSet::full(self.m())
    }

    pub fn empty_set(&self) -> EdgeSet {
        EdgeSet::new(self.m())
    }
}

/// A subset of the edges of a graph, stored as a membership mask.
/// This is the crate's edge-subgraph type: its weight `||F||` is the
/// number of unit edges it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    bits: Vec<bool>,
    len: usize,
}

impl EdgeSet {
    pub fn new(m: usize) -> Self {
        EdgeSet {
            bits: vec![false; m],
            len: 0,
        }
    }

    pub fn full(m: usize) -> Self {
        EdgeSet {
            bits: vec![true; m],
            len: m,
        }
    }

    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(m: usize, ids: I) -> Self {
        let mut s = EdgeSet::new(m);
        for e in ids {
            s.insert(e);
        }
        s
    }

    /// Size of the ground set.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.bits.get(e).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        if self.bits[e] {
            false
        } else {
            self.bits[e] = true;
            self.len += 1;
            true
        }
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        if self.bits[e] {
            self.bits[e] = false;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn ids(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        for e in other.iter() {
            self.insert(e);
        }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    pub fn weight(&self, g: &Graph) -> usize {
        subgraph_weight(g, self)
    }
}

/// `||F||`: the number of unit edges in `f`.
pub fn subgraph_weight(g: &Graph, f: &EdgeSet) -> usize {
    f.iter().filter(|&e| g.edge(e).weight == 1).count()
}

/// `s(G) = 10|V|^2 + |E|`.
pub fn size_measure(g: &Graph) -> u64 {
    10 * (g.n() as u64) * (g.n() as u64) + g.m() as u64
}

/// Connected-component label per vertex in `(V, f)`, labels ordered by
/// lowest contained vertex.
pub fn component_labels(g: &Graph, f: &EdgeSet) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                if !f.contains(e) {
                    continue;
                }
                let y = g.edge(e).other(x);
                if label[y] == usize::MAX {
                    label[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Bridges of `(V, f)`, sorted by id. Parallel edges are handled by edge
/// identity, so a doubled edge is never a bridge.
pub fn bridges(g: &Graph, f: &EdgeSet) -> Vec<EdgeId> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut out = Vec::new();
    // (vertex, edge used to enter it, next adjacency index)
    let mut stack: Vec<(VertexId, EdgeId, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.len().checked_sub(1) {
            let (x, via, idx) = stack[top];
            let inc = g.incident(x);
            if idx < inc.len() {
                let e = inc[idx];
                stack[top].2 += 1;
                if e == via || !f.contains(e) {
                    continue;
                }
                let y = g.edge(e).other(x);
                if disc[y] == usize::MAX {
                    disc[y] = timer;
                    low[y] = timer;
                    timer += 1;
                    stack.push((y, e, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if low[x] > disc[p] {
                        out.push(via);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// First reason `(V(g), f)` fails to be 2-edge-connected, if any.
pub fn two_ec_violation(g: &Graph, f: &EdgeSet) -> Option<Disconnection> {
    if g.n() <= 1 {
        return None;
    }
    let (label, count) = component_labels(g, f);
    if count > 1 {
        let b = (0..g.n()).find(|&v| label[v] != label[0]).unwrap();
        return Some(Disconnection::Disconnected { a: 0, b });
    }
    bridges(g, f).first().map(|&e| Disconnection::Bridge(e))
}

/// True iff `(V(g), f)` is connected, spans every vertex and has no bridge.
pub fn is_spanning_2ec(g: &Graph, f: &EdgeSet) -> bool {
    two_ec_violation(g, f).is_none()
}

/// Articulation points of `(V, f)`, sorted.
pub fn cut_vertices(g: &Graph, f: &EdgeSet) -> Vec<VertexId> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    let mut stack: Vec<(VertexId, EdgeId, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.len().checked_sub(1) {
            let (x, via, idx) = stack[top];
            let inc = g.incident(x);
            if idx < inc.len() {
                let e = inc[idx];
                stack[top].2 += 1;
                if e == via || !f.contains(e) {
                    continue;
                }
                let y = g.edge(e).other(x);
                if disc[y] == usize::MAX {
                    disc[y] = timer;
                    low[y] = timer;
                    timer += 1;
                    if x == root {
                        root_children += 1;
                    }
                    stack.push((y, e, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if p != root && low[x] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected components of `G - removed` (vertex deletion), each sorted,
/// ordered by lowest vertex. Removed vertices belong to no component.
pub fn components_without(g: &Graph, removed: &[bool]) -> Vec<Vec<VertexId>> {
    let n = g.n();
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(x) = queue.pop_front() {
            comp.push(x);
            for &e in g.incident(x) {
                let y = g.edge(e).other(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum SizeClass {
    Small,
    Medium,
    Large,
}

impl SizeClass {
    pub fn of_weight(w: usize) -> SizeClass {
        match w {
            0..=2 => SizeClass::Small,
            3 => SizeClass::Medium,
            _ => SizeClass::Large,
        }
    }
}

/// A maximal 2-edge-connected piece (with at least two vertices) of a
/// component of a 2-edge-cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub weight: usize,
    pub class: SizeClass,
    /// Incident to exactly one bridge of a complex component.
    pub pendant: bool,
    pub bridges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub bridges: Vec<EdgeId>,
    pub blocks: Vec<Block>,
    pub black: Vec<VertexId>,
    pub weight: usize,
    pub class: SizeClass,
}

impl Component {
    pub fn is_complex(&self) -> bool {
        !self.bridges.is_empty()
    }
}

/// Components, blocks, bridges and black vertices of a 2-edge-cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Component>,
    /// Component index per vertex.
    pub comp_of: Vec<usize>,
    /// `(component, block)` per vertex; `None` for black vertices.
    pub block_of: Vec<Option<(usize, usize)>>,
}

impl Decomposition {
    pub fn bridge_count(&self) -> usize {
        self.components.iter().map(|c| c.bridges.len()).sum()
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridge_count() == 0
    }

    pub fn count_class(&self, class: SizeClass) -> usize {
        self.components.iter().filter(|c| c.class == class).count()
    }
}

/// Decomposes `f`, which must have minimum degree 2 at every vertex.
pub fn decompose(g: &Graph, f: &EdgeSet) -> Result<Decomposition, GraphError> {
    for v in 0..g.n() {
        let degree = g.incident(v).iter().filter(|&&e| f.contains(e)).count();
        if degree < 2 {
            return Err(GraphError::NotTwoEdgeCover { vertex: v, degree });
        }
    }
    Ok(decompose_unchecked(g, f))
}

/// Same as [`decompose`] without the degree check; isolated vertices
/// show up as black single-vertex components.
pub fn decompose_unchecked(g: &Graph, f: &EdgeSet) -> Decomposition {
    let n = g.n();
    let bridge_list = bridges(g, f);
    let mut is_bridge = vec![false; g.m()];
    for &b in &bridge_list {
        is_bridge[b] = true;
    }
    let (comp_label, comp_count) = component_labels(g, f);
    let mut no_bridges = f.clone();
    for &b in &bridge_list {
        no_bridges.remove(b);
    }
    let (piece_label, piece_count) = component_labels(g, &no_bridges);
    let mut piece_vertices = vec![Vec::new(); piece_count];
    for v in 0..n {
        piece_vertices[piece_label[v]].push(v);
    }
    let mut piece_edges = vec![Vec::new(); piece_count];
    let mut piece_bridges = vec![Vec::new(); piece_count];
    for e in f.iter() {
        let ed = g.edge(e);
        if is_bridge[e] {
            piece_bridges[piece_label[ed.u]].push(e);
            piece_bridges[piece_label[ed.v]].push(e);
        } else {
            piece_edges[piece_label[ed.u]].push(e);
        }
    }

    let mut components: Vec<Component> = (0..comp_count)
        .map(|_| Component {
            vertices: Vec::new(),
            edges: Vec::new(),
            bridges: Vec::new(),
            blocks: Vec::new(),
            black: Vec::new(),
            weight: 0,
            class: SizeClass::Small,
        })
        .collect();
    for v in 0..n {
        components[comp_label[v]].vertices.push(v);
    }
    for e in f.iter() {
        let c = comp_label[g.edge(e).u];
        components[c].edges.push(e);
        if is_bridge[e] {
            components[c].bridges.push(e);
        }
    }
    let mut block_of = vec![None; n];
    // pieces are labelled in order of lowest vertex, so blocks come out sorted
    for p in 0..piece_count {
        let vs = &piece_vertices[p];
        let c = comp_label[vs[0]];
        if vs.len() == 1 {
            components[c].black.push(vs[0]);
            continue;
        }
        let weight = piece_edges[p]
            .iter()
            .filter(|&&e| g.edge(e).weight == 1)
            .count();
        let bi = components[c].blocks.len();
        for &v in vs {
            block_of[v] = Some((c, bi));
        }
        components[c].blocks.push(Block {
            vertices: vs.clone(),
            edges: piece_edges[p].clone(),
            weight,
            class: SizeClass::of_weight(weight),
            pendant: piece_bridges[p].len() == 1,
            bridges: piece_bridges[p].clone(),
        });
    }
    for comp in &mut components {
        comp.weight = comp
            .edges
            .iter()
            .filter(|&&e| g.edge(e).weight == 1)
            .count();
        comp.class = SizeClass::of_weight(comp.weight);
    }
    Decomposition {
        components,
        comp_of: comp_label,
        block_of,
    }
}

/// Vertex and edge correspondence produced by [`contract`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    /// Original vertex to contracted vertex.
    pub vertex_map: Vec<VertexId>,
    /// Contracted edge id to original edge id.
    pub edge_map: Vec<EdgeId>,
    /// Original edge id to contracted edge id (`None` for dropped loops).
    pub edge_inverse: Vec<Option<EdgeId>>,
    pub dropped_loops: Vec<EdgeId>,
}

/// Contracts each part to one vertex. New vertex ids follow the order in
/// which original vertices are first met; loops are dropped and recorded.
pub fn contract(g: &Graph, parts: &[Vec<VertexId>]) -> Result<(Graph, ContractionMap), GraphError> {
    let n = g.n();
    let mut group = vec![usize::MAX; n];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if group[v] != usize::MAX {
                return Err(GraphError::OverlappingParts(v));
            }
            group[v] = i;
        }
    }
    let mut vertex_map = vec![usize::MAX; n];
    let mut group_id = vec![usize::MAX; parts.len()];
    let mut next = 0;
    for v in 0..n {
        if group[v] == usize::MAX {
            vertex_map[v] = next;
            next += 1;
        } else {
            let gi = group[v];
            if group_id[gi] == usize::MAX {
                group_id[gi] = next;
                next += 1;
            }
            vertex_map[v] = group_id[gi];
        }
    }
    let mut h = Graph::new(next);
    let mut edge_map = Vec::new();
    let mut edge_inverse = vec![None; g.m()];
    let mut dropped_loops = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
        if a == b {
            dropped_loops.push(id);
        } else {
            edge_inverse[id] = Some(h.add_edge(a, b, e.weight));
            edge_map.push(id);
        }
    }
    Ok((
        h,
        ContractionMap {
            vertex_map,
            edge_map,
            edge_inverse,
            dropped_loops,
        },
    ))
}

/// Maps an edge set of the contracted graph back to the original graph.
pub fn expand_edges(
    map: &ContractionMap,
    original_m: usize,
    f: &EdgeSet,
) -> Result<EdgeSet, GraphError> {
    let mut out = EdgeSet::new(original_m);
    for e in f.iter() {
        let orig = *map.edge_map.get(e).ok_or(GraphError::UnknownEdgeId(e))?;
        out.insert(orig);
    }
    Ok(out)
}

/// A validated MAP instance: zero edges form a matching and the graph is
/// 2-edge-connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapInstance {
    graph: Graph,
    zero_edges: Vec<EdgeId>,
}

impl MapInstance {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn zero_edges(&self) -> &[EdgeId] {
        &self.zero_edges
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

/// Checks the zero-edge matching invariant only.
pub fn check_zero_matching(g: &Graph) -> Result<(), GraphError> {
    let mut owner = vec![usize::MAX; g.n()];
    for (id, e) in g.edges().iter().enumerate() {
        if !e.is_zero() {
            continue;
        }
        for x in [e.u, e.v] {
            if owner[x] != usize::MAX {
                return Err(GraphError::ZeroEdgesNotMatching(owner[x], id));
            }
            owner[x] = id;
        }
    }
    Ok(())
}

pub fn validate_map_instance(g: Graph) -> Result<MapInstance, GraphError> {
    for e in g.edges() {
        if e.u == e.v {
            return Err(GraphError::SelfLoop(e.u));
        }
        if e.weight > 1 {
            return Err(GraphError::WeightOutOfRange(e.weight as u32));
        }
    }
    check_zero_matching(&g)?;
    if let Some(why) = two_ec_violation(&g, &g.full_set()) {
        return Err(GraphError::NotTwoEdgeConnected(why));
    }
    let zero_edges = g.zero_edges();
    Ok(MapInstance {
        graph: g,
        zero_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating_cycle(k: usize) -> Graph {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k, (i % 2) as u8)).collect();
        Graph::from_edges(k, &edges)
    }

    /// Bridges by deleting each edge and recounting components.
    fn naive_bridges(g: &Graph, f: &EdgeSet) -> Vec<EdgeId> {
        let (_, base) = component_labels(g, f);
        f.iter()
            .filter(|&e| {
                let mut h = f.clone();
                h.remove(e);
                component_labels(g, &h).1 > base
            })
            .collect()
    }

    #[test]
    fn alternating_four_cycle_validates() {
        let g = alternating_cycle(4);
        let inst = validate_map_instance(g).unwrap();
        assert_eq!(inst.zero_edges(), &[0, 2]);
    }

    #[test]
    fn triangle_with_two_zero_edges_rejected() {
        let g = Graph::from_edges(3, &[(0, 1, 0), (1, 2, 0), (2, 0, 1)]);
        assert_eq!(
            validate_map_instance(g),
            Err(GraphError::ZeroEdgesNotMatching(0, 1))
        );
    }

    #[test]
    fn dumbbell_reports_its_connector() {
        let g = Graph::from_edges(
            6,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 0, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 3, 1),
                (2, 3, 1),
            ],
        );
        assert_eq!(
            validate_map_instance(g),
            Err(GraphError::NotTwoEdgeConnected(Disconnection::Bridge(6)))
        );
    }

    #[test]
    fn weights_and_sizes() {
        let c4 = alternating_cycle(4);
        assert_eq!(subgraph_weight(&c4, &c4.full_set()), 2);
        assert_eq!(subgraph_weight(&c4, &c4.empty_set()), 0);
        let mut k4 = Graph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v, 1);
            }
        }
        assert_eq!(subgraph_weight(&k4, &k4.full_set()), 6);
        assert_eq!(
            size_measure(&Graph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)])),
            93
        );
        assert_eq!(size_measure(&Graph::new(0)), 0);
        assert_eq!(size_measure(&c4), 164);
    }

    #[test]
    fn spanning_two_edge_connectivity() {
        let c4 = alternating_cycle(4);
        assert!(is_spanning_2ec(&c4, &c4.full_set()));
        let mut path = c4.full_set();
        path.remove(1);
        assert!(!is_spanning_2ec(&c4, &path));
        let g = Graph::from_edges(
            6,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 0, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 3, 1),
                (2, 3, 1),
                (0, 5, 1),
            ],
        );
        let triangles = EdgeSet::from_ids(8, 0..6);
        assert!(!is_spanning_2ec(&g, &triangles));
        assert!(is_spanning_2ec(&g, &g.full_set()));
    }

    #[test]
    fn parallel_edges_are_not_bridges() {
        let g = Graph::from_edges(2, &[(0, 1, 0), (0, 1, 1)]);
        assert!(bridges(&g, &g.full_set()).is_empty());
        assert!(is_spanning_2ec(&g, &g.full_set()));
        assert!(!g.is_simple());
    }

    #[test]
    fn dumbbell_decomposition() {
        // triangle - bridge - black vertex - bridge - 4-cycle
        let g = Graph::from_edges(
            8,
            &[
                (0, 1, 0),
                (1, 2, 1),
                (2, 0, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 5, 0),
                (5, 6, 1),
                (6, 7, 0),
                (7, 4, 1),
            ],
        );
        let d = decompose_unchecked(&g, &g.full_set());
        assert_eq!(d.components.len(), 1);
        let c = &d.components[0];
        assert_eq!(c.blocks.len(), 2);
        assert_eq!(c.black, vec![3]);
        assert_eq!(c.bridges, naive_bridges(&g, &g.full_set()));
        assert_eq!(c.bridges.len(), c.blocks.len() + c.black.len() - 1);
        assert!(c.blocks.iter().all(|b| b.pendant));
        assert_eq!(c.class, SizeClass::Large);
        assert_eq!(c.blocks[0].class, SizeClass::Small);
    }

    #[test]
    fn decomposition_classes() {
        let c4 = alternating_cycle(4);
        let d = decompose(&c4, &c4.full_set()).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].blocks.len(), 1);
        assert_eq!(d.components[0].class, SizeClass::Small);
        let c6 = alternating_cycle(6);
        let d = decompose(&c6, &c6.full_set()).unwrap();
        assert_eq!(d.components[0].class, SizeClass::Medium);
        assert!(!d.components[0].blocks[0].pendant);
        let mut path = c6.full_set();
        path.remove(0);
        assert!(matches!(
            decompose(&c6, &path),
            Err(GraphError::NotTwoEdgeCover { .. })
        ));
    }

    #[test]
    fn contracting_an_edge_of_a_triangle() {
        let g = Graph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 0)]);
        let (h, map) = contract(&g, &[vec![0, 1]]).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.m(), 2);
        assert_eq!(map.dropped_loops, vec![0]);
        assert!(!h.is_simple());
        let back = expand_edges(&map, g.m(), &h.full_set()).unwrap();
        assert_eq!(back.ids(), vec![1, 2]);
    }

    #[test]
    fn contracting_nothing_is_identity() {
        let g = alternating_cycle(6);
        let (h, map) = contract(&g, &[]).unwrap();
        assert_eq!(h, g);
        assert_eq!(map.edge_map, (0..6).collect::<Vec<_>>());
        assert!(contract(&g, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn cut_vertices_of_bowtie() {
        let g = Graph::from_edges(
            5,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 0, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 2, 1),
            ],
        );
        assert_eq!(cut_vertices(&g, &g.full_set()), vec![2]);
        let mut removed = vec![false; 5];
        removed[2] = true;
        assert_eq!(
            components_without(&g, &removed),
            vec![vec![0, 1], vec![3, 4]]
        );
    }
}
