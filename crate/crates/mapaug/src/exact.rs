//! Exact optimum by branch and bound, bounded-weight enumeration, and the
//! target bound `f(opt) = max(13/8 opt - 2, opt)`.

use thiserror::Error;

use crate::cover::min_cover_completion;
use crate::graph::{bridges, component_labels, is_spanning_2ec, EdgeId, EdgeSet, Graph, VertexId};
use crate::Rational;

/// Hard ceiling for the exact solver; well above the configured threshold.
pub const EXACT_MAX_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub weight: usize,
    pub witness: EdgeSet,
    pub nodes_explored: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("node budget exhausted; best known weight {}", .0.weight)]
    BudgetExceeded(ExactResult),
    #[error("{n} vertices exceed the exact solver limit")]
    TooLarge { n: usize },
    #[error("instance has no 2-edge-connected spanning subgraph")]
    Infeasible,
    #[error("optimum is {actual}, not {expected}")]
    WeightMismatch { expected: usize, actual: usize },
}

/// `max(13/8 w - 2, w)` as an exact rational.
pub fn f_value(opt_weight: usize) -> Rational {
    let w = Rational::from_integer(opt_weight as i64);
    let scaled = Rational::new(13, 8) * w - Rational::from_integer(2);
    if scaled > w {
        scaled
    } else {
        w
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Free,
    In,
    Out,
}

struct Search<'a> {
    g: &'a Graph,
    state: Vec<State>,
    best: EdgeSet,
    best_weight: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    fn sets(&self) -> (EdgeSet, EdgeSet, EdgeSet) {
        let m = self.g.m();
        let mut avail = EdgeSet::new(m);
        let mut fixed = EdgeSet::new(m);
        let mut free = EdgeSet::new(m);
        for e in 0..m {
            match self.state[e] {
                State::In => {
                    avail.insert(e);
                    fixed.insert(e);
                }
                State::Free => {
                    avail.insert(e);
                    free.insert(e);
                }
                State::Out => {}
            }
        }
        (avail, fixed, free)
    }

    fn run(&mut self) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let g = self.g;
        let (avail, fixed, free) = self.sets();
        if !is_spanning_2ec(g, &avail) {
            return;
        }
        let Ok(cover) = min_cover_completion(g, &fixed, &free) else {
            return;
        };
        let lower = fixed.weight(g) + cover.len();
        if lower >= self.best_weight {
            return;
        }
        let mut candidate = fixed.clone();
        candidate.union_with(&cover);
        // a side S of a cut crossed by at most one candidate edge
        let side: Vec<bool> = {
            let (label, count) = component_labels(g, &candidate);
            if count > 1 {
                let mut sizes = vec![0usize; count];
                for &l in &label {
                    sizes[l] += 1;
                }
                let smallest = (0..count).min_by_key(|&c| (sizes[c], c)).unwrap();
                label.iter().map(|&l| l == smallest).collect()
            } else if let Some(&b) = bridges(g, &candidate).first() {
                let mut without = candidate.clone();
                without.remove(b);
                let (label, _) = component_labels(g, &without);
                let a = label[g.edge(b).u];
                label.iter().map(|&l| l == a).collect()
            } else {
                self.best = candidate;
                self.best_weight = lower;
                return;
            }
        };
        let mut crossing: Vec<EdgeId> = free
            .iter()
            .filter(|&e| side[g.edge(e).u] != side[g.edge(e).v])
            .collect();
        crossing.sort_by_key(|&e| (candidate.contains(e), e));
        let Some(&e) = crossing.first() else {
            return;
        };
        self.state[e] = State::In;
        self.run();
        if self.aborted {
            self.state[e] = State::Free;
            return;
        }
        self.state[e] = State::Out;
        self.run();
        self.state[e] = State::Free;
    }
}

/// Minimal 2-ECSS by reverse deletion of unit edges (highest id first).
pub fn reverse_delete(g: &Graph, start: &EdgeSet) -> EdgeSet {
    let mut f = start.clone();
    for e in (0..g.m()).rev() {
        if f.contains(e) && g.edge(e).weight == 1 {
            f.remove(e);
            if !is_spanning_2ec(g, &f) {
                f.insert(e);
            }
        }
    }
    f
}

/// Minimum-weight 2-ECSS. Zero edges are always taken; the search
/// branches on unit edges crossing a cut that the 2-edge-cover lower
/// bound fails to cover twice.
pub fn opt_exact(g: &Graph, budget: Option<u64>) -> Result<ExactResult, ExactError> {
    if g.n() > EXACT_MAX_VERTICES {
        return Err(ExactError::TooLarge { n: g.n() });
    }
    let all = g.full_set();
    if !is_spanning_2ec(g, &all) {
        return Err(ExactError::Infeasible);
    }
    let incumbent = reverse_delete(g, &all);
    let mut search = Search {
        g,
        state: (0..g.m())
            .map(|e| {
                if g.edge(e).is_zero() {
                    State::In
                } else {
                    State::Free
                }
            })
            .collect(),
        best_weight: incumbent.weight(g),
        best: incumbent,
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
        aborted: false,
    };
    search.run();
    let result = ExactResult {
        weight: search.best_weight,
        witness: search.best,
        nodes_explored: search.nodes,
    };
    if search.aborted {
        Err(ExactError::BudgetExceeded(result))
    } else {
        Ok(result)
    }
}

fn touches_all(g: &Graph, f: &EdgeSet, must_touch: &[VertexId]) -> bool {
    must_touch
        .iter()
        .all(|&v| g.incident(v).iter().any(|&e| f.contains(e)))
}

/// Calls `visit` on every 2-ECSS made of all zero edges plus exactly `k`
/// unit edges, in lexicographic order of the unit-edge ids, until `visit`
/// returns `false`.
fn for_each_solution_of_size(g: &Graph, k: usize, visit: &mut dyn FnMut(&EdgeSet) -> bool) {
    let unit = g.unit_edges();
    if k > unit.len() {
        return;
    }
    let mut f = EdgeSet::from_ids(g.m(), g.zero_edges());
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        for &i in &idx {
            f.insert(unit[i]);
        }
        let keep_going = if is_spanning_2ec(g, &f) {
            visit(&f)
        } else {
            true
        };
        for &i in &idx {
            f.remove(unit[i]);
        }
        if !keep_going {
            return;
        }
        // next combination
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < unit.len() - (k - pos) {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A 2-ECSS of weight at most `k` (all zero edges plus at most `k` unit
/// edges) whose edges touch every vertex in `attach`, if one exists.
pub fn opt_at_most(g: &Graph, k: usize, attach: Option<&[VertexId]>) -> Option<EdgeSet> {
    // every vertex of a 2-ECSS meets at least one unit edge
    if g.n() > 1 && g.n() > 2 * k {
        return None;
    }
    let must: &[VertexId] = attach.unwrap_or(&[]);
    for size in 0..=k {
        let mut found = None;
        for_each_solution_of_size(g, size, &mut |f| {
            if touches_all(g, f, must) {
                found = Some(f.clone());
                false
            } else {
                true
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Every 2-ECSS consisting of all zero edges plus exactly `w` unit edges.
/// When `w` is the optimum these are all optimal solutions (up to
/// dropping zero edges).
pub fn all_solutions_of_weight(g: &Graph, w: usize) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    if g.n() > 1 && g.n() > 2 * w {
        return out;
    }
    for_each_solution_of_size(g, w, &mut |f| {
        out.push(f.clone());
        true
    });
    out
}

/// Exact optimum when it is at most `k`, `None` when it exceeds `k`.
pub fn opt_if_at_most(g: &Graph, k: usize) -> Option<usize> {
    (0..=k).find(|&w| opt_at_most(g, w, None).is_some())
}

/// Whether some optimal solution of weight `w` touches every vertex of
/// `must_touch`. Fails when the optimum is not `w`.
pub fn has_opt_with_attachment(
    g: &Graph,
    w: usize,
    must_touch: &[VertexId],
) -> Result<bool, ExactError> {
    match opt_if_at_most(g, w) {
        Some(actual) if actual == w => {}
        Some(actual) => {
            return Err(ExactError::WeightMismatch {
                expected: w,
                actual,
            })
        }
        None => {
            let actual = opt_exact(g, None).map(|r| r.weight).unwrap_or(usize::MAX);
            return Err(ExactError::WeightMismatch {
                expected: w,
                actual,
            });
        }
    }
    let mut found = false;
    for_each_solution_of_size(g, w, &mut |f| {
        found = touches_all(g, f, must_touch);
        !found
    });
    Ok(found)
}

/// Minimum weight of a subgraph with minimum degree 2, by exhaustive
/// search over unit edges (zero edges are free and always taken).
pub fn min_2edge_cover_bruteforce(g: &Graph) -> Result<usize, ExactError> {
    if g.n() > 10 {
        return Err(ExactError::TooLarge { n: g.n() });
    }
    let n = g.n();
    let mut deg = vec![0usize; n];
    for e in g.zero_edges() {
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    let unit = g.unit_edges();
    // remaining[i][v]: unit edges at v among unit[i..]
    let mut remaining = vec![vec![0usize; n]; unit.len() + 1];
    for i in (0..unit.len()).rev() {
        remaining[i] = remaining[i + 1].clone();
        remaining[i][g.edge(unit[i]).u] += 1;
        remaining[i][g.edge(unit[i]).v] += 1;
    }
    if (0..n).any(|v| deg[v] + remaining[0][v] < 2) {
        return Err(ExactError::Infeasible);
    }
    fn go(
        g: &Graph,
        unit: &[EdgeId],
        remaining: &[Vec<usize>],
        i: usize,
        deg: &mut [usize],
        taken: usize,
        best: &mut usize,
    ) {
        if taken >= *best {
            return;
        }
        if deg.iter().all(|&d| d >= 2) {
            *best = taken;
            return;
        }
        if i == unit.len() {
            return;
        }
        if (0..deg.len()).any(|v| deg[v] + remaining[i][v] < 2) {
            return;
        }
        let e = g.edge(unit[i]);
        deg[e.u] += 1;
        deg[e.v] += 1;
        go(g, unit, remaining, i + 1, deg, taken + 1, best);
        deg[e.u] -= 1;
        deg[e.v] -= 1;
        go(g, unit, remaining, i + 1, deg, taken, best);
    }
    let mut best = usize::MAX;
    go(g, &unit, &remaining, 0, &mut deg, 0, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating_cycle(k: usize) -> Graph {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k, (i % 2) as u8)).collect();
        Graph::from_edges(k, &edges)
    }

    fn unit_k4() -> Graph {
        let mut g = Graph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v, 1);
            }
        }
        g
    }

    /// Exhaustive minimum over all unit-edge subsets.
    fn brute_opt(g: &Graph) -> usize {
        let unit = g.unit_edges();
        let zero = g.zero_edges();
        let mut best = usize::MAX;
        for mask in 0u32..(1 << unit.len()) {
            let w = mask.count_ones() as usize;
            if w >= best {
                continue;
            }
            let f = EdgeSet::from_ids(
                g.m(),
                zero.iter().copied().chain(
                    (0..unit.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| unit[i]),
                ),
            );
            if is_spanning_2ec(g, &f) {
                best = w;
            }
        }
        best
    }

    #[test]
    fn small_optima() {
        assert_eq!(opt_exact(&alternating_cycle(4), None).unwrap().weight, 2);
        assert_eq!(opt_exact(&alternating_cycle(6), None).unwrap().weight, 3);
        let k4 = unit_k4();
        let r = opt_exact(&k4, None).unwrap();
        assert_eq!(r.weight, 4);
        assert_eq!(brute_opt(&k4), 4);
        assert!(is_spanning_2ec(&k4, &r.witness));
    }

    #[test]
    fn bounded_queries() {
        let c4 = alternating_cycle(4);
        assert_eq!(opt_at_most(&c4, 2, None).unwrap().len(), 4);
        assert!(opt_at_most(&c4, 1, None).is_none());
        assert!(opt_at_most(&unit_k4(), 3, None).is_none());
        assert!(opt_at_most(&unit_k4(), 4, None).is_some());
    }

    #[test]
    fn attachment_queries() {
        let c6 = alternating_cycle(6);
        assert_eq!(has_opt_with_attachment(&c6, 3, &[0, 3]), Ok(true));
        assert_eq!(has_opt_with_attachment(&c6, 3, &[]), Ok(true));
        assert!(matches!(
            has_opt_with_attachment(&c6, 4, &[]),
            Err(ExactError::WeightMismatch {
                expected: 4,
                actual: 3
            })
        ));
    }

    #[test]
    fn unique_optimum_avoids_a_vertex_edge() {
        // 0..3 alternating 4-cycle plus vertex 4 joined to 0 and 2 by unit
        // edges and to 1 by a zero edge? zero edges must stay a matching,
        // so 4 hangs on unit edges: optimum is 4 and must touch 4.
        let g = Graph::from_edges(
            5,
            &[
                (0, 1, 0),
                (1, 2, 1),
                (2, 3, 0),
                (3, 0, 1),
                (4, 0, 1),
                (4, 2, 1),
                (4, 1, 1),
            ],
        );
        let opt = opt_exact(&g, None).unwrap().weight;
        assert_eq!(opt, brute_opt(&g));
        assert_eq!(has_opt_with_attachment(&g, opt, &[4]), Ok(true));
    }

    #[test]
    fn f_values() {
        assert_eq!(f_value(2), Rational::from_integer(2));
        assert_eq!(f_value(4), Rational::new(9, 2));
        assert_eq!(f_value(16), Rational::from_integer(24));
        for w in 0..40 {
            assert!(f_value(w) >= Rational::from_integer(w as i64));
            assert!(f_value(w + 1) >= f_value(w));
        }
    }

    #[test]
    fn cover_bruteforce_examples() {
        assert_eq!(min_2edge_cover_bruteforce(&alternating_cycle(4)), Ok(2));
        assert_eq!(min_2edge_cover_bruteforce(&alternating_cycle(6)), Ok(3));
        assert_eq!(min_2edge_cover_bruteforce(&unit_k4()), Ok(4));
        assert!(matches!(
            min_2edge_cover_bruteforce(&Graph::new(11)),
            Err(ExactError::TooLarge { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_returns_best_known() {
        let k4 = unit_k4();
        match opt_exact(&k4, Some(1)) {
            Err(ExactError::BudgetExceeded(r)) => assert!(is_spanning_2ec(&k4, &r.witness)),
            Ok(r) => assert_eq!(r.weight, 4),
            Err(e) => panic!("{e}"),
        }
    }
}
