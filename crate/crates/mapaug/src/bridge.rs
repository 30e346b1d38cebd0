//! Bridge covering: turns a canonical D2 into a bridgeless 2-edge-cover by
//! repeated pseudo-ear augmentation, with the 13/8 credit scheme kept as
//! an explicit ledger.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::cover::{Provenance, TwoEdgeCover};
use crate::graph::{
    decompose, Decomposition, EdgeId, EdgeSet, Graph, GraphError, SizeClass, VertexId,
};
use crate::stats::{Mode, Stats};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entity {
    Component(Vec<VertexId>),
    Block(Vec<VertexId>),
    Vertex(VertexId),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("{entity:?} holds {have} credit but needs {need}")]
    InvariantViolated {
        entity: Entity,
        have: Rational,
        need: Rational,
    },
    #[error("no pseudo-ear from block {block:?} (bridge {bridge}, exclusion set {z:?})")]
    NoPseudoEar {
        block: Vec<VertexId>,
        bridge: EdgeId,
        z: Vec<VertexId>,
    },
    #[error("credit shortfall of {shortfall} after covering bridge {bridge}")]
    CreditDeficit { bridge: EdgeId, shortfall: Rational },
    #[error("block {block:?} is not a pendant block with a bridge")]
    NotPendant { block: Vec<VertexId> },
    #[error("bridge count did not drop ({before} -> {after})")]
    NoProgress { before: usize, after: usize },
    #[error("weight {weight} exceeds the economical budget {budget}")]
    NotEconomical { weight: usize, budget: Rational },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which clause of the witness-path credit rule certifies an ear.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCondition {
    /// A white vertex other than `r`.
    A,
    /// Only `r` is white and the path has at least three unit edges.
    B,
    /// Only `r` is white, two unit edges, and the head has another unit edge.
    C,
    /// Only `r` is white, two unit edges, and the covered bridge is a zero edge.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoEar {
    pub block: Vec<VertexId>,
    pub component: Vec<VertexId>,
    pub bridge: EdgeId,
    pub r: VertexId,
    pub u: VertexId,
    /// The new edges `f1..fk` in order from the block to the head.
    pub edges: Vec<EdgeId>,
    /// Vertex sets of the intermediate components `C1..C(k-1)`.
    pub visited: Vec<Vec<VertexId>>,
    pub head: VertexId,
    pub witness: Vec<VertexId>,
    pub z: Vec<VertexId>,
    pub z_fallback: bool,
    pub condition: Option<WitnessCondition>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CreditLedger {
    credits: BTreeMap<Entity, Rational>,
}

fn r(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

fn sorted(mut v: Vec<VertexId>) -> Vec<VertexId> {
    v.sort_unstable();
    v
}

fn unit_degree_in(g: &Graph, h: &EdgeSet, v: VertexId) -> usize {
    g.incident(v)
        .iter()
        .filter(|&&e| h.contains(e) && g.edge(e).weight == 1)
        .count()
}

/// Minimum credit each entity of `d` must hold under the invariant.
pub fn requirements(g: &Graph, h: &EdgeSet, d: &Decomposition) -> BTreeMap<Entity, Rational> {
    let mut out = BTreeMap::new();
    for comp in &d.components {
        out.insert(
            Entity::Component(comp.vertices.clone()),
            Rational::from_integer(1),
        );
        for block in &comp.blocks {
            let need = if comp.is_complex() {
                Rational::from_integer(1)
            } else {
                match block.class {
                    SizeClass::Small => r(1, 4),
                    SizeClass::Medium => r(7, 8),
                    SizeClass::Large => Rational::from_integer(1),
                }
            };
            out.insert(Entity::Block(block.vertices.clone()), need);
        }
        for &v in &comp.black {
            out.insert(
                Entity::Vertex(v),
                r(5, 16) * Rational::from_integer(unit_degree_in(g, h, v) as i64),
            );
        }
    }
    out
}

impl CreditLedger {
    pub fn get(&self, entity: &Entity) -> Rational {
        self.credits.get(entity).copied().unwrap_or_default()
    }

    pub fn total(&self) -> Rational {
        self.credits.values().copied().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Entity, &Rational)> {
        self.credits.iter()
    }

    pub fn len(&self) -> usize {
        self.credits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.credits.is_empty()
    }

    /// First entity of `d` holding less than its minimum.
    pub fn check(&self, g: &Graph, h: &EdgeSet, d: &Decomposition) -> Result<(), BridgeError> {
        for (entity, need) in requirements(g, h, d) {
            let have = self.get(&entity);
            if have < need {
                return Err(BridgeError::InvariantViolated { entity, have, need });
            }
        }
        Ok(())
    }

    /// Combined component and block credit per component; on a bridgeless
    /// cover this is the credit each component carries into the special
    /// configuration phase.
    pub fn component_totals(&self, d: &Decomposition) -> Vec<Rational> {
        d.components
            .iter()
            .map(|c| {
                let mut t = self.get(&Entity::Component(c.vertices.clone()));
                for b in &c.blocks {
                    t += self.get(&Entity::Block(b.vertices.clone()));
                }
                for &v in &c.black {
                    t += self.get(&Entity::Vertex(v));
                }
                t
            })
            .collect()
    }
}

/// Distributes 5/8 per unit edge of a canonical D2: 5/16 to each endpoint,
/// then pools white vertices into their blocks and takes one component
/// credit per component out of block surplus.
pub fn init_credits(g: &Graph, h: &TwoEdgeCover) -> Result<CreditLedger, BridgeError> {
    let d = h.decomposition(g)?;
    let share =
        |v: VertexId| r(5, 16) * Rational::from_integer(unit_degree_in(g, &h.edges, v) as i64);
    let mut credits = BTreeMap::new();
    for comp in &d.components {
        let comp_key = Entity::Component(comp.vertices.clone());
        for &v in &comp.black {
            credits.insert(Entity::Vertex(v), share(v));
        }
        let pools: Vec<Rational> = comp
            .blocks
            .iter()
            .map(|b| b.vertices.iter().map(|&v| share(v)).sum())
            .collect();
        if !comp.is_complex() {
            let block = &comp.blocks[0];
            let b_credit = pools[0] - Rational::from_integer(1);
            let need = match block.class {
                SizeClass::Small => r(1, 4),
                SizeClass::Medium => r(7, 8),
                SizeClass::Large => Rational::from_integer(1),
            };
            let key = Entity::Block(block.vertices.clone());
            if b_credit < need {
                return Err(BridgeError::InvariantViolated {
                    entity: key,
                    have: b_credit,
                    need,
                });
            }
            credits.insert(comp_key, Rational::from_integer(1));
            credits.insert(key, b_credit);
            continue;
        }
        let one = Rational::from_integer(1);
        let mut b_credits = pools.clone();
        for (i, b) in comp.blocks.iter().enumerate() {
            if b_credits[i] < one {
                return Err(BridgeError::InvariantViolated {
                    entity: Entity::Block(b.vertices.clone()),
                    have: b_credits[i],
                    need: one,
                });
            }
        }
        let mut order: Vec<usize> = (0..comp.blocks.len()).collect();
        order.sort_by(|&a, &b| pools[b].cmp(&pools[a]).then(a.cmp(&b)));
        let mut missing = one;
        for i in order {
            if missing == Rational::from_integer(0) {
                break;
            }
            let take = (b_credits[i] - one).min(missing);
            b_credits[i] -= take;
            missing -= take;
        }
        if missing > Rational::from_integer(0) {
            return Err(BridgeError::InvariantViolated {
                entity: comp_key,
                have: one - missing,
                need: one,
            });
        }
        credits.insert(comp_key, one);
        for (i, b) in comp.blocks.iter().enumerate() {
            credits.insert(Entity::Block(b.vertices.clone()), b_credits[i]);
        }
    }
    Ok(CreditLedger { credits })
}

/// Shortest path from `from` to `to` using only edges of `allowed`, by edge
/// count; among shortest paths the lexicographically smallest vertex
/// sequence. Returns the vertices and the edges used.
pub fn shortest_path_in(
    g: &Graph,
    allowed: &EdgeSet,
    from: VertexId,
    to: VertexId,
) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[to] = 0;
    let mut queue = VecDeque::from([to]);
    while let Some(x) = queue.pop_front() {
        for &e in g.incident(x) {
            if !allowed.contains(e) {
                continue;
            }
            let y = g.edge(e).other(x);
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if dist[from] == usize::MAX {
        return None;
    }
    let mut path = vec![from];
    let mut used = Vec::new();
    let mut x = from;
    while x != to {
        let (y, e) = g
            .incident(x)
            .iter()
            .filter(|&&e| allowed.contains(e))
            .map(|&e| (g.edge(e).other(x), e))
            .filter(|&(y, _)| dist[y] + 1 == dist[x])
            .min()
            .expect("distance labels are consistent");
        path.push(y);
        used.push(e);
        x = y;
    }
    Some((path, used))
}

fn exclusion_set(g: &Graph, prefix: &[VertexId], prefix_edges: &[EdgeId]) -> Vec<VertexId> {
    // prefix = r, u1, u2, ..., uk with uk the first white vertex
    let k = prefix.len() - 1;
    let units = |count: usize| {
        prefix_edges[..count]
            .iter()
            .filter(|&&e| g.edge(e).weight == 1)
            .count()
    };
    match k {
        1 => vec![],
        2 => vec![prefix[1]],
        3 => {
            if units(3) == 3 {
                vec![prefix[1]]
            } else {
                vec![prefix[1], prefix[2]]
            }
        }
        _ => match units(4) {
            0..=2 => vec![prefix[1], prefix[2], prefix[3]],
            3 => vec![prefix[1], prefix[2]],
            _ => vec![prefix[1]],
        },
    }
}

/// Finds a pseudo-ear covering the bridge at pendant block `block` of
/// component `comp`, using the exclusion-set case analysis.
pub fn find_pseudo_ear(
    g: &Graph,
    h: &EdgeSet,
    d: &Decomposition,
    comp: usize,
    block: usize,
) -> Result<PseudoEar, BridgeError> {
    let c0 = &d.components[comp];
    let b = &c0.blocks[block];
    if !b.pendant {
        return Err(BridgeError::NotPendant {
            block: b.vertices.clone(),
        });
    }
    let bridge = b.bridges[0];
    let in_b = |v: VertexId| d.block_of[v] == Some((comp, block));
    let (r, u) = {
        let e = g.edge(bridge);
        if in_b(e.u) {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        }
    };
    let mut c0_edges = EdgeSet::new(g.m());
    for &e in &c0.edges {
        c0_edges.insert(e);
    }

    // P': shortest path r, u, ... to the nearest white vertex outside B
    let n = g.n();
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[r] = true;
    seen[u] = true;
    parent[u] = Some(bridge);
    let mut queue = VecDeque::from([u]);
    let mut white_end = None;
    while let Some(x) = queue.pop_front() {
        if d.block_of[x].is_some() {
            white_end = Some(x);
            break;
        }
        let mut next: Vec<(VertexId, EdgeId)> = g
            .incident(x)
            .iter()
            .filter(|&&e| c0_edges.contains(e))
            .map(|&e| (g.edge(e).other(x), e))
            .filter(|&(y, _)| !seen[y] && !in_b(y))
            .collect();
        next.sort_unstable();
        for (y, e) in next {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(e);
                queue.push_back(y);
            }
        }
    }
    let white_end = white_end.expect("a complex component has at least two pendant blocks");
    let mut prefix = vec![white_end];
    let mut prefix_edges = Vec::new();
    let mut x = white_end;
    while x != r {
        let e = parent[x].expect("path reconstruction");
        prefix_edges.push(e);
        x = g.edge(e).other(x);
        prefix.push(x);
    }
    prefix.reverse();
    prefix_edges.reverse();
    let z = exclusion_set(g, &prefix, &prefix_edges);

    let attempt = |z: &[VertexId]| -> Option<(VertexId, Vec<EdgeId>, Vec<Vec<VertexId>>)> {
        let mut banned = vec![false; n];
        for &v in z {
            banned[v] = true;
        }
        let is_target = |v: VertexId| d.comp_of[v] == comp && !in_b(v) && !banned[v];
        let mut dist = vec![usize::MAX; n];
        let mut via: Vec<Option<EdgeId>> = vec![None; n];
        let mut deque = VecDeque::new();
        for &v in &b.vertices {
            dist[v] = 0;
            deque.push_back(v);
        }
        let mut best: Option<(usize, VertexId)> = None;
        while let Some(x) = deque.pop_front() {
            if best.is_some_and(|(bd, _)| dist[x] > bd) {
                continue;
            }
            if is_target(x) {
                if best.is_none_or(|(bd, bv)| (dist[x], x) < (bd, bv)) {
                    best = Some((dist[x], x));
                }
                continue;
            }
            for &e in g.incident(x) {
                if c0_edges.contains(e) {
                    continue;
                }
                let y = g.edge(e).other(x);
                if banned[y] {
                    continue;
                }
                let w = usize::from(!h.contains(e));
                let nd = dist[x] + w;
                if nd < dist[y] {
                    dist[y] = nd;
                    via[y] = Some(e);
                    if w == 0 {
                        deque.push_front(y);
                    } else {
                        deque.push_back(y);
                    }
                }
            }
        }
        let (_, head) = best?;
        let mut new_edges = Vec::new();
        let mut x = head;
        while let Some(e) = via[x] {
            if !h.contains(e) {
                new_edges.push(e);
            }
            x = g.edge(e).other(x);
        }
        new_edges.reverse();
        let mut comps: Vec<usize> = Vec::new();
        for &e in &new_edges {
            for y in [g.edge(e).u, g.edge(e).v] {
                let c = d.comp_of[y];
                if c != comp && !comps.contains(&c) {
                    comps.push(c);
                }
            }
        }
        let visited = comps
            .into_iter()
            .map(|c| d.components[c].vertices.clone())
            .collect();
        Some((head, new_edges, visited))
    };

    let (found, z_fallback) = match attempt(&z) {
        Some(x) => (x, false),
        None => match attempt(&[]) {
            Some(x) => (x, true),
            None => {
                return Err(BridgeError::NoPseudoEar {
                    block: b.vertices.clone(),
                    bridge,
                    z,
                })
            }
        },
    };
    let (head, edges, visited) = found;
    let (witness, witness_edges) =
        shortest_path_in(g, &c0_edges, r, head).expect("component is connected");

    let white: Vec<VertexId> = witness
        .iter()
        .copied()
        .filter(|&v| d.block_of[v].is_some())
        .collect();
    let units = witness_edges
        .iter()
        .filter(|&&e| g.edge(e).weight == 1)
        .count();
    let condition = if white.iter().any(|&v| v != r) {
        Some(WitnessCondition::A)
    } else if units >= 3 {
        Some(WitnessCondition::B)
    } else if units == 2
        && g.incident(head)
            .iter()
            .any(|&e| h.contains(e) && g.edge(e).weight == 1 && !witness_edges.contains(&e))
    {
        Some(WitnessCondition::C)
    } else if units == 2 && g.edge(bridge).is_zero() {
        Some(WitnessCondition::D)
    } else {
        None
    };

    Ok(PseudoEar {
        block: b.vertices.clone(),
        component: c0.vertices.clone(),
        bridge,
        r,
        u,
        edges,
        visited,
        head,
        witness,
        z,
        z_fallback,
        condition,
    })
}

/// Result of adding one pseudo-ear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmented {
    pub cover: TwoEdgeCover,
    pub ledger: CreditLedger,
    /// Credit missing to satisfy the invariant; zero on a sound step.
    pub shortfall: Rational,
}

/// Adds the ear's edges and reassigns credit: credit of every entity that
/// disappears is pooled, the ear edges are paid from the pool, new
/// entities receive their minimum, and the remainder goes to the block
/// that now contains `B`.
pub fn apply_pseudo_ear(
    g: &Graph,
    h: &TwoEdgeCover,
    ledger: &CreditLedger,
    ear: &PseudoEar,
) -> Result<Augmented, BridgeError> {
    let mut edges = h.edges.clone();
    for &e in &ear.edges {
        edges.insert(e);
    }
    let d = decompose(g, &edges)?;
    let req = requirements(g, &edges, &d);
    let mut pool = Rational::from_integer(0);
    for (entity, &credit) in &ledger.credits {
        if !req.contains_key(entity) {
            pool += credit;
        }
    }
    pool -=
        Rational::from_integer(ear.edges.iter().filter(|&&e| g.edge(e).weight == 1).count() as i64);
    let mut credits = BTreeMap::new();
    let mut fresh = Vec::new();
    let mut shortfall = Rational::from_integer(0);
    for (entity, need) in &req {
        match ledger.credits.get(entity) {
            Some(&have) => {
                if have < *need {
                    shortfall += *need - have;
                }
                credits.insert(entity.clone(), have.max(*need));
            }
            None => {
                pool -= *need;
                credits.insert(entity.clone(), *need);
                fresh.push(entity.clone());
            }
        }
    }
    let (c, bi) = d.block_of[ear.r].expect("r lies on the ear cycle");
    let target = Entity::Block(d.components[c].blocks[bi].vertices.clone());
    if pool < Rational::from_integer(0) {
        shortfall -= pool;
    } else {
        *credits.get_mut(&target).expect("target block is an entity") += pool;
    }
    Ok(Augmented {
        cover: TwoEdgeCover {
            edges,
            provenance: h.provenance,
        },
        ledger: CreditLedger { credits },
        shortfall,
    })
}

/// `13/8 d2 - 2 n_l - 15/8 n_m - 5/4 n_s - ||H||`; non-negative for an
/// economical cover.
pub fn economical_slack(g: &Graph, d2_weight: usize, h: &EdgeSet) -> Result<Rational, GraphError> {
    let d = decompose(g, h)?;
    let budget = r(13, 8) * Rational::from_integer(d2_weight as i64)
        - Rational::from_integer(2 * d.count_class(SizeClass::Large) as i64)
        - r(15, 8) * Rational::from_integer(d.count_class(SizeClass::Medium) as i64)
        - r(5, 4) * Rational::from_integer(d.count_class(SizeClass::Small) as i64);
    Ok(budget - Rational::from_integer(h.weight(g) as i64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeOutcome {
    pub cover: TwoEdgeCover,
    pub ledger: CreditLedger,
    pub ears: Vec<PseudoEar>,
    pub slack: Rational,
}

/// Covers every bridge of a canonical D2, one pendant block at a time
/// (lowest component, then lowest block first).
pub fn cover_all_bridges(
    g: &Graph,
    h: &TwoEdgeCover,
    mode: Mode,
    stats: &mut Stats,
) -> Result<BridgeOutcome, BridgeError> {
    let d2_weight = h.weight(g);
    let mut ledger = match init_credits(g, h) {
        Ok(l) => l,
        Err(e) if mode == Mode::Strict => return Err(e),
        Err(_) => {
            stats.invariant_violations += 1;
            let d = h.decomposition(g)?;
            CreditLedger {
                credits: requirements(g, &h.edges, &d),
            }
        }
    };
    let mut cover = h.clone();
    let mut ears = Vec::new();
    loop {
        let d = cover.decomposition(g)?;
        let before = d.bridge_count();
        if before == 0 {
            break;
        }
        let (ci, bi) = d
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_complex())
            .find_map(|(ci, c)| c.blocks.iter().position(|b| b.pendant).map(|bi| (ci, bi)))
            .expect("a component with a bridge has a pendant block");
        let ear = find_pseudo_ear(g, &cover.edges, &d, ci, bi)?;
        stats.pseudo_ears += 1;
        match ear.condition {
            Some(c) => stats.ear_conditions[c as usize] += 1,
            None => stats.uncertified_witnesses += 1,
        }
        if ear.z_fallback {
            stats.z_fallbacks += 1;
        }
        let step = apply_pseudo_ear(g, &cover, &ledger, &ear)?;
        if step.shortfall > Rational::from_integer(0) {
            if mode == Mode::Strict {
                return Err(BridgeError::CreditDeficit {
                    bridge: ear.bridge,
                    shortfall: step.shortfall,
                });
            }
            stats.credit_deficits += 1;
        }
        let after = step.cover.decomposition(g)?.bridge_count();
        if after >= before {
            return Err(BridgeError::NoProgress { before, after });
        }
        cover = step.cover;
        ledger = step.ledger;
        ears.push(ear);
    }
    cover.provenance = Provenance::Bridgeless;

    let input_small: Vec<Vec<VertexId>> = h
        .decomposition(g)?
        .components
        .into_iter()
        .filter(|c| !c.is_complex() && c.class == SizeClass::Small)
        .map(|c| c.vertices)
        .collect();
    let out = cover.decomposition(g)?;
    for c in &out.components {
        if c.class == SizeClass::Small && !input_small.contains(&sorted(c.vertices.clone())) {
            stats.foreign_small_components += 1;
        }
    }
    let slack = economical_slack(g, d2_weight, &cover.edges)?;
    if slack < Rational::from_integer(0) {
        if mode == Mode::Strict {
            return Err(BridgeError::NotEconomical {
                weight: cover.weight(g),
                budget: Rational::from_integer(cover.weight(g) as i64) + slack,
            });
        }
        stats.economical_violations += 1;
    }
    Ok(BridgeOutcome {
        cover,
        ledger,
        ears,
        slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_spanning_2ec;

    fn cover_of(g: &Graph, ids: &[EdgeId]) -> TwoEdgeCover {
        TwoEdgeCover {
            edges: EdgeSet::from_ids(g.m(), ids.iter().copied()),
            provenance: Provenance::Canonical,
        }
    }

    /// Two unit 4-cycles joined by a unit bridge 3-4, plus extra edges
    /// 0-5 and 2-7 available in the graph.
    fn dumbbell() -> (Graph, TwoEdgeCover) {
        let mut g = Graph::new(8);
        let mut ids = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                ids.push(g.add_edge(base + i, base + (i + 1) % 4, 1));
            }
        }
        ids.push(g.add_edge(3, 4, 1));
        g.add_edge(0, 5, 1);
        g.add_edge(2, 7, 1);
        let h = cover_of(&g, &ids);
        (g, h)
    }

    #[test]
    fn lone_large_block_credits() {
        let g = Graph::from_edges(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        let h = cover_of(&g, &[0, 1, 2, 3]);
        let ledger = init_credits(&g, &h).unwrap();
        assert_eq!(
            ledger.get(&Entity::Component(vec![0, 1, 2, 3])),
            Rational::from_integer(1)
        );
        assert_eq!(ledger.get(&Entity::Block(vec![0, 1, 2, 3])), r(3, 2));
        assert_eq!(ledger.total(), r(5, 2));
    }

    #[test]
    fn lone_small_block_credits() {
        let g = Graph::from_edges(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]);
        let h = cover_of(&g, &[0, 1, 2, 3]);
        let ledger = init_credits(&g, &h).unwrap();
        assert_eq!(ledger.get(&Entity::Block(vec![0, 1, 2, 3])), r(1, 4));
        assert_eq!(
            ledger.get(&Entity::Component(vec![0, 1, 2, 3])),
            Rational::from_integer(1)
        );
    }

    #[test]
    fn complex_component_credits() {
        let (g, h) = dumbbell();
        let ledger = init_credits(&g, &h).unwrap();
        let d = h.decomposition(&g).unwrap();
        ledger.check(&g, &h.edges, &d).unwrap();
        assert_eq!(ledger.total(), r(5, 8) * Rational::from_integer(9));
    }

    #[test]
    fn single_component_ear() {
        let (g, h) = dumbbell();
        let d = h.decomposition(&g).unwrap();
        let ear = find_pseudo_ear(&g, &h.edges, &d, 0, 0).unwrap();
        assert_eq!(ear.edges.len(), 1);
        assert!(ear.visited.is_empty());
        let ledger = init_credits(&g, &h).unwrap();
        let step = apply_pseudo_ear(&g, &h, &ledger, &ear).unwrap();
        let d2 = step.cover.decomposition(&g).unwrap();
        assert!(d2.is_bridgeless());
        assert_eq!(d2.components.len(), 1);
        assert_eq!(step.shortfall, Rational::from_integer(0));
        assert_eq!(
            step.ledger.total(),
            ledger.total() - Rational::from_integer(1)
        );
        step.ledger.check(&g, &step.cover.edges, &d2).unwrap();
    }

    #[test]
    fn ear_across_components() {
        // component A: unit 4-cycle 0..3 with pendant path 3-4-5-6 into a
        // unit 4-cycle 6..9; components B (10..13) and C (14..17) are
        // alternating 4-cycles; the ear runs 0 -> B -> C -> 8.
        let mut g = Graph::new(18);
        let mut ids = Vec::new();
        for base in [0, 6] {
            for i in 0..4 {
                ids.push(g.add_edge(base + i, base + (i + 1) % 4, 1));
            }
        }
        ids.push(g.add_edge(3, 4, 1));
        ids.push(g.add_edge(4, 5, 0));
        ids.push(g.add_edge(5, 6, 1));
        for base in [10, 14] {
            for i in 0..4 {
                ids.push(g.add_edge(base + i, base + (i + 1) % 4, (i % 2) as u8));
            }
        }
        g.add_edge(0, 10, 1);
        g.add_edge(12, 14, 1);
        g.add_edge(16, 8, 1);
        let h = cover_of(&g, &ids);
        let d = h.decomposition(&g).unwrap();
        let before = d.components.len();
        let ear = find_pseudo_ear(&g, &h.edges, &d, 0, 0).unwrap();
        assert_eq!(ear.edges.len(), 3);
        assert_eq!(ear.visited.len(), 2);
        let ledger = init_credits(&g, &h).unwrap();
        let step = apply_pseudo_ear(&g, &h, &ledger, &ear).unwrap();
        let after = step.cover.decomposition(&g).unwrap();
        assert_eq!(after.components.len(), before - 2);
        assert!(is_spanning_2ec(&g, &step.cover.edges));
    }

    #[test]
    fn bridgeless_input_is_unchanged() {
        let g = Graph::from_edges(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]);
        let h = cover_of(&g, &[0, 1, 2, 3]);
        let mut stats = Stats::default();
        let out = cover_all_bridges(&g, &h, Mode::Strict, &mut stats).unwrap();
        assert_eq!(out.cover.edges, h.edges);
        assert!(out.ears.is_empty());
        assert_eq!(out.slack, r(13, 4) - Rational::from_integer(2) - r(5, 4));
    }

    #[test]
    fn exclusion_sets() {
        let g = Graph::from_edges(6, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 0), (4, 5, 1)]);
        let p = [0, 1, 2, 3, 4, 5];
        assert_eq!(exclusion_set(&g, &p[..2], &[0]), Vec::<usize>::new());
        assert_eq!(exclusion_set(&g, &p[..3], &[0, 1]), vec![1]);
        assert_eq!(exclusion_set(&g, &p[..4], &[0, 1, 2]), vec![1]);
        assert_eq!(exclusion_set(&g, &p[..5], &[0, 1, 2, 3]), vec![1, 2]);
        assert_eq!(exclusion_set(&g, &p, &[0, 1, 2, 3, 4]), vec![1, 2]);
    }
}
