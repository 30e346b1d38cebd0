//! Maximum cardinality matching (Edmonds' blossom algorithm) and maximum
//! degree-constrained subgraphs through the vertex-copy gadget.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("capacity {capacity} at vertex {vertex} exceeds its degree {degree}")]
    CapacityExceedsDegree {
        vertex: VertexId,
        capacity: usize,
        degree: usize,
    },
    #[error("gadget matching has {matched} edges, expected {expected}")]
    GadgetOffset { matched: usize, expected: usize },
}

/// Maximum matching on a simple graph given by adjacency lists. Returns the
/// mate of every vertex. Deterministic: vertices and neighbours are
/// scanned in the given order.
pub fn max_matching_adj(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    for v in 0..n {
        if mate[v] != NONE {
            continue;
        }
        if let Some(&u) = adj[v].iter().find(|&&u| u != v && mate[u] == NONE) {
            mate[u] = v;
            mate[v] = u;
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = search.find_path(adj, &mate, root) {
                let mut v = end;
                while v != NONE {
                    let pv = search.parent[v];
                    let next = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    mate.into_iter().map(|x| (x != NONE).then_some(x)).collect()
}

struct BlossomSearch {
    used: Vec<bool>,
    parent: Vec<usize>,
    base: Vec<usize>,
    blossom: Vec<bool>,
    mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            used: vec![false; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            blossom: vec![false; n],
            mark: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.mark.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.mark[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.mark[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<usize> {
        let n = adj.len();
        for i in 0..n {
            self.used[i] = false;
            self.parent[i] = NONE;
            self.base[i] = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Maximum cardinality matching of a multigraph, as edge ids. For each
/// matched pair the lowest-id edge between them is reported.
pub fn max_matching(g: &Graph) -> Vec<EdgeId> {
    let mut adj = vec![Vec::new(); g.n()];
    for v in 0..g.n() {
        for &e in g.incident(v) {
            let u = g.edge(e).other(v);
            if !adj[v].contains(&u) {
                adj[v].push(u);
            }
        }
    }
    let mate = max_matching_adj(&adj);
    let mut out = Vec::new();
    for v in 0..g.n() {
        if let Some(u) = mate[v] {
            if v < u {
                out.push(g.edges_between(v, u)[0]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Maximum-cardinality subset of `allowed` with degree at most `bounds[v]`
/// at every vertex. Each allowed edge becomes a two-vertex path whose ends
/// see the copies of the respective endpoint; an edge is selected when
/// both path ends are matched into copies.
pub fn max_dcs_within(
    g: &Graph,
    allowed: &EdgeSet,
    bounds: &[usize],
) -> Result<EdgeSet, MatchingError> {
    let n = g.n();
    let mut degree = vec![0usize; n];
    for e in allowed.iter() {
        degree[g.edge(e).u] += 1;
        degree[g.edge(e).v] += 1;
    }
    for v in 0..n {
        if bounds[v] > degree[v] {
            return Err(MatchingError::CapacityExceedsDegree {
                vertex: v,
                capacity: bounds[v],
                degree: degree[v],
            });
        }
    }
    let mut copy_start = vec![0usize; n + 1];
    for v in 0..n {
        copy_start[v + 1] = copy_start[v] + bounds[v];
    }
    let copies = copy_start[n];
    let edges: Vec<EdgeId> = allowed.iter().collect();
    let total = copies + 2 * edges.len();
    let mut adj = vec![Vec::new(); total];
    for (i, &e) in edges.iter().enumerate() {
        let a = copies + 2 * i;
        let b = a + 1;
        adj[a].push(b);
        adj[b].push(a);
        let ed = g.edge(e);
        for (end, x) in [(a, ed.u), (b, ed.v)] {
            for c in copy_start[x]..copy_start[x + 1] {
                adj[end].push(c);
                adj[c].push(end);
            }
        }
    }
    let mate = max_matching_adj(&adj);
    let matched = mate.iter().filter(|m| m.is_some()).count() / 2;
    let mut out = EdgeSet::new(g.m());
    for (i, &e) in edges.iter().enumerate() {
        let a = copies + 2 * i;
        let b = a + 1;
        let into_copy = |x: usize| mate[x].is_some_and(|c| c < copies);
        if into_copy(a) && into_copy(b) {
            out.insert(e);
        }
    }
    let expected = edges.len() + out.len();
    if matched != expected {
        return Err(MatchingError::GadgetOffset { matched, expected });
    }
    Ok(out)
}

/// [`max_dcs_within`] over all edges of `g`.
pub fn max_degree_constrained_subgraph(
    g: &Graph,
    bounds: &[usize],
) -> Result<EdgeSet, MatchingError> {
    max_dcs_within(g, &g.full_set(), bounds)
}
