//! Exact anti-forcing numbers and their certificates.
//!
//! `af(G, M)` is the least number of non-matching edges whose removal leaves
//! M as the unique perfect matching; equivalently, a minimum transversal of
//! all M-alternating cycles. The search is a lazy hitting-set
//! branch-and-bound: branch on the non-matching edges of one surviving
//! cycle, with the alternating-4-cycle count as lower bound (two distinct
//! alternating 4-cycles never share a non-matching edge, so each needs its
//! own hit). The reported witness is the lexicographically least optimal
//! one, rebuilt by a greedy prefix pass once the value is known.

use num_rational::Rational64;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::matchings::{
    count_alternating_4cycles, enumerate_perfect_matchings, find_alternating_cycle_unchecked,
    has_unique_pm, PerfectMatching,
};
use crate::nice::is_nice;

/// Outcome of an exact `af(G, M)` computation.
#[derive(Clone, Debug)]
pub struct AfResult {
    /// The anti-forcing number of M.
    pub value: usize,
    /// Lexicographically least anti-forcing set attaining `value`.
    pub witness: EdgeSet,
    /// Alternating-4-cycle lower bound that held at the root.
    pub lower_bound_c4: usize,
    /// Nodes visited by the value search.
    pub nodes_explored: u64,
}

/// The two closed-form bounds of the theory, computed exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    /// `e - v + c` (equals `e - v + 1` on connected graphs).
    pub cyclomatic: usize,
    /// `(2e - v) / 4` as an exact rational.
    pub quarter: Rational64,
    /// True iff some degree occurs an odd number of times; then the quarter
    /// bound cannot be attained.
    pub degree_parity_obstruction: bool,
}

/// True iff removing S leaves M as the unique perfect matching. S must be a
/// set of non-matching edges of the graph.
pub fn is_antiforcing_set(g: &Graph, m: &PerfectMatching, s: &EdgeSet) -> Result<bool> {
    m.validate_for(g)?;
    for e in s {
        if m.contains_edge(*e) {
            return Err(Error::invalid(format!(
                "anti-forcing candidate intersects the matching at {e}"
            )));
        }
        if !g.contains(*e) {
            return Err(Error::invalid(format!("edge {e} not in graph")));
        }
    }
    has_unique_pm(g, m, s)
}

/// Exact arithmetic bounds plus the degree-parity obstruction flag.
pub fn bounds(g: &Graph) -> BoundsReport {
    let v = g.vertex_count();
    let e = g.edge_count();
    let c = g.components().len();
    let mut degree_counts = vec![0usize; v.max(1)];
    for x in g.vertices() {
        degree_counts[g.degree(x)] += 1;
    }
    BoundsReport {
        cyclomatic: (e + c).saturating_sub(v),
        quarter: Rational64::new(2 * e as i64 - v as i64, 4),
        degree_parity_obstruction: degree_counts.iter().any(|&k| k % 2 == 1),
    }
}

/// The anti-forcing set `E_A^w  union  E(A)` built from a transversal A of M
/// and a bijection `omega: M -> 1..=|M|` (given by rank, in canonical
/// M-edge order). Removing it always leaves M unique, for any perfect
/// matching M; when M is nice the set has size exactly `(2e - v)/4`.
pub fn omega_antiforcing_set(
    g: &Graph,
    m: &PerfectMatching,
    a: &VertexSet,
    omega: &[usize],
) -> Result<EdgeSet> {
    m.validate_for(g)?;
    if a.universe() != g.vertex_count() {
        return Err(Error::invalid("side selection over a different universe"));
    }
    let m_edges = m.edges();
    for e in &m_edges {
        if a.contains(e.u()) == a.contains(e.v()) {
            return Err(Error::invalid(format!(
                "side selection must contain exactly one endpoint of {e}"
            )));
        }
    }
    if omega.len() != m_edges.len() {
        return Err(Error::invalid("weight list length differs from |M|"));
    }
    let mut seen = vec![false; m_edges.len() + 1];
    for &w in omega {
        if w == 0 || w > m_edges.len() || seen[w] {
            return Err(Error::invalid("weights must be a bijection onto 1..=|M|"));
        }
        seen[w] = true;
    }
    // extend the edge weights to vertices
    let mut weight = vec![0usize; g.vertex_count()];
    for (i, e) in m_edges.iter().enumerate() {
        weight[e.u()] = omega[i];
        weight[e.v()] = omega[i];
    }
    let mut out = EdgeSet::new();
    for e in g.edges() {
        let (x, y) = e.endpoints();
        let both_in_a = a.contains(x) && a.contains(y);
        let split = a.contains(x) != a.contains(y);
        if both_in_a {
            out.insert(*e); // E(A)
        } else if split {
            let (inside, outside) = if a.contains(x) { (x, y) } else { (y, x) };
            if weight[inside] > weight[outside] {
                out.insert(*e); // E_A^w
            }
        }
    }
    debug_assert!(is_antiforcing_set(g, m, &out).unwrap());
    Ok(out)
}

/// Greedy minimalization: drop edges in ascending canonical order whenever
/// the remainder still anti-forces. One pass suffices because losing an
/// anti-forcing superset can only shrink what later removals may keep.
pub fn minimalize_antiforcing_set(
    g: &Graph,
    m: &PerfectMatching,
    s: &EdgeSet,
) -> Result<EdgeSet> {
    if !is_antiforcing_set(g, m, s)? {
        return Err(Error::invalid("input set is not anti-forcing"));
    }
    let mut current = s.clone();
    for e in s {
        current.remove(e);
        if !has_unique_pm(g, m, &current)? {
            current.insert(*e);
        }
    }
    Ok(current)
}

/// The alternating 4-cycles of (G, M), each reported as its pair of
/// non-matching edges.
fn alternating_4cycle_pairs(g: &Graph, m: &PerfectMatching) -> Vec<[Edge; 2]> {
    let edges = m.edges();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        let (x, y) = edges[i].endpoints();
        for e2 in edges.iter().skip(i + 1) {
            let (u, v) = e2.endpoints();
            for (a, b) in [(u, v), (v, u)] {
                let e_xa = Edge::new(x, a);
                let e_yb = Edge::new(y, b);
                if g.contains(e_xa) && g.contains(e_yb) {
                    out.push([e_xa.min(e_yb), e_xa.max(e_yb)]);
                }
            }
        }
    }
    out
}

struct HitSearch<'a> {
    g: &'a Graph,
    m: &'a PerfectMatching,
    four_cycles: Vec<[Edge; 2]>,
    nodes: u64,
}

impl<'a> HitSearch<'a> {
    fn new(g: &'a Graph, m: &'a PerfectMatching) -> Self {
        HitSearch {
            g,
            m,
            four_cycles: alternating_4cycle_pairs(g, m),
            nodes: 0,
        }
    }

    /// Lower bound on additional hits, or None when some surviving 4-cycle
    /// has no pickable edge left.
    fn remaining_4cycle_bound(&self, chosen: &EdgeSet, banned: &EdgeSet) -> Option<usize> {
        let mut count = 0;
        for [e, f] in &self.four_cycles {
            if chosen.contains(e) || chosen.contains(f) {
                continue;
            }
            if banned.contains(e) && banned.contains(f) {
                return None;
            }
            count += 1;
        }
        Some(count)
    }

    /// Depth-first improvement search. `best` holds the incumbent witness;
    /// explores only sets strictly smaller than it.
    fn improve(&mut self, chosen: &mut EdgeSet, banned: &mut EdgeSet, best: &mut EdgeSet) {
        self.nodes += 1;
        let Some(lb) = self.remaining_4cycle_bound(chosen, banned) else {
            return;
        };
        if chosen.len() + lb >= best.len() {
            return;
        }
        let Some(cycle) = find_alternating_cycle_unchecked(self.g, self.m, chosen) else {
            *best = chosen.clone();
            return;
        };
        let cands: Vec<Edge> = cycle
            .non_matching_edges()
            .into_iter()
            .filter(|e| !banned.contains(e))
            .collect();
        let mut newly_banned = Vec::new();
        for e in cands {
            chosen.insert(e);
            self.improve(chosen, banned, best);
            chosen.remove(&e);
            banned.insert(e);
            newly_banned.push(e);
        }
        for e in newly_banned {
            banned.remove(&e);
        }
    }

    /// Is there an anti-forcing set of size at most `budget + |chosen|`
    /// whose extra edges all come from `allowed`?
    fn feasible(&mut self, chosen: &mut EdgeSet, allowed: &EdgeSet, budget: usize) -> bool {
        self.nodes += 1;
        let mut pickable = 0;
        for [e, f] in &self.four_cycles {
            if chosen.contains(e) || chosen.contains(f) {
                continue;
            }
            if !allowed.contains(e) && !allowed.contains(f) {
                return false;
            }
            pickable += 1;
        }
        if pickable > budget {
            return false;
        }
        let Some(cycle) = find_alternating_cycle_unchecked(self.g, self.m, chosen) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let cands: Vec<Edge> = cycle
            .non_matching_edges()
            .into_iter()
            .filter(|e| allowed.contains(e) && !chosen.contains(e))
            .collect();
        for (i, e) in cands.iter().enumerate() {
            // edges skipped at this node stay skipped below it, partitioning
            // the space
            let mut allowed_child = allowed.clone();
            for earlier in &cands[..i] {
                allowed_child.remove(earlier);
            }
            chosen.insert(*e);
            let ok = self.feasible(chosen, &allowed_child, budget - 1);
            chosen.remove(e);
            if ok {
                return true;
            }
        }
        false
    }
}

/// Exact minimum anti-forcing number of M with a deterministic witness.
pub fn min_antiforcing(g: &Graph, m: &PerfectMatching) -> Result<AfResult> {
    m.validate_for(g)?;
    let lower_bound_c4 = count_alternating_4cycles(g, m)?;

    // Incumbent: the omega construction is already optimal when M is nice;
    // otherwise start from all non-matching edges minus greedy redundancies.
    let incumbent = if is_nice(g, m)? {
        let a = default_transversal(m);
        let omega: Vec<usize> = (1..=m.size()).collect();
        omega_antiforcing_set(g, m, &a, &omega)?
    } else {
        let all: EdgeSet = g
            .edges()
            .iter()
            .filter(|e| !m.contains_edge(**e))
            .copied()
            .collect();
        minimalize_antiforcing_set(g, m, &all)?
    };

    let mut search = HitSearch::new(g, m);
    let mut best = incumbent;
    let mut chosen = EdgeSet::new();
    let mut banned = EdgeSet::new();
    search.improve(&mut chosen, &mut banned, &mut best);
    let value = best.len();

    // Rebuild the witness as the lexicographically least optimal one.
    let witness = lex_min_witness(g, m, value, &mut search);
    debug_assert!(is_antiforcing_set(g, m, &witness)?);
    Ok(AfResult {
        value,
        witness,
        lower_bound_c4,
        nodes_explored: search.nodes,
    })
}

fn default_transversal(m: &PerfectMatching) -> VertexSet {
    let mut a = VertexSet::new(m.vertex_count());
    for e in m.edges() {
        a.insert(e.u());
    }
    a
}

fn lex_min_witness(g: &Graph, m: &PerfectMatching, k: usize, search: &mut HitSearch) -> EdgeSet {
    let candidates: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !m.contains_edge(**e))
        .copied()
        .collect();
    let mut chosen = EdgeSet::new();
    let mut next = 0;
    while chosen.len() < k {
        let mut picked = None;
        for j in next..candidates.len() {
            let e = candidates[j];
            let allowed: EdgeSet = candidates[j + 1..].iter().copied().collect();
            chosen.insert(e);
            let budget = k - chosen.len();
            if search.feasible(&mut chosen, &allowed, budget) {
                picked = Some(j + 1);
                break;
            }
            chosen.remove(&e);
        }
        next = picked.expect("value search certified a witness of this size");
    }
    chosen
}

/// Maximum anti-forcing number over all perfect matchings, with the first
/// maximizer in canonical enumeration order.
pub fn max_antiforcing(g: &Graph) -> Result<(usize, PerfectMatching)> {
    max_antiforcing_with_threads(g, 1)
}

/// Same as [`max_antiforcing`], evaluating matchings in parallel. The
/// result is independent of the thread count: values are reduced in
/// canonical matching order.
pub fn max_antiforcing_with_threads(g: &Graph, threads: usize) -> Result<(usize, PerfectMatching)> {
    let pms = enumerate_perfect_matchings(g);
    if pms.is_empty() {
        return Err(Error::NoPerfectMatching);
    }
    let threads = threads.max(1).min(pms.len());
    let values: Vec<usize> = if threads == 1 {
        pms.iter()
            .map(|m| min_antiforcing(g, m).map(|r| r.value))
            .collect::<Result<_>>()?
    } else {
        let chunk = pms.len().div_ceil(threads);
        let mut out: Vec<Result<Vec<usize>>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = pms
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|m| min_antiforcing(g, m).map(|r| r.value))
                            .collect::<Result<Vec<usize>>>()
                    })
                })
                .collect();
            for h in handles {
                out.push(h.join().expect("af worker panicked"));
            }
        });
        let mut values = Vec::with_capacity(pms.len());
        for part in out {
            values.extend(part?);
        }
        values
    };
    let (best_idx, &best) = values
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))
        .expect("nonempty");
    Ok((best, pms[best_idx].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, FamilySpec};

    fn c4() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn pm(g: &Graph, pairs: &[(usize, usize)]) -> PerfectMatching {
        let edges: EdgeSet = pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        PerfectMatching::from_edges(g, &edges).unwrap()
    }

    fn q3_with_classes() -> (Graph, crate::generators::LabeledClasses) {
        generate(&FamilySpec::Hypercube { n: 3 }).unwrap()
    }

    #[test]
    fn antiforcing_set_examples_on_c4() {
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        let one: EdgeSet = [Edge::new(1, 2)].into_iter().collect();
        assert!(is_antiforcing_set(&g, &m, &one).unwrap());
        assert!(!is_antiforcing_set(&g, &m, &EdgeSet::new()).unwrap());
        // intersecting M is an input error
        let bad: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        assert!(is_antiforcing_set(&g, &m, &bad).is_err());
    }

    /// The whole class E2 hits only the E2-rung alternating 4-cycles of E1;
    /// the E3-rung cycles survive, so E2 is not anti-forcing even though it
    /// has the optimal size.
    #[test]
    fn e2_class_is_not_antiforcing_for_e1_in_q3() {
        let (g, classes) = q3_with_classes();
        let e1 = PerfectMatching::from_edges(&g, classes.get(1).unwrap()).unwrap();
        let e2 = classes.get(2).unwrap().clone();
        assert_eq!(e2.len(), 4);
        assert!(!is_antiforcing_set(&g, &e1, &e2).unwrap());
    }

    #[test]
    fn bounds_examples() {
        let (q3, _) = q3_with_classes();
        let b = bounds(&q3);
        assert_eq!(b.cyclomatic, 5);
        assert_eq!(b.quarter, Rational64::from_integer(4));
        assert!(!b.degree_parity_obstruction);

        let b = bounds(&k4());
        assert_eq!(b.cyclomatic, 3);
        assert_eq!(b.quarter, Rational64::from_integer(2));

        // triangle plus pendant: degrees 3, 2, 2, 1
        let g = Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let b = bounds(&g);
        assert_eq!(b.quarter, Rational64::from_integer(1));
        assert!(b.degree_parity_obstruction);
    }

    #[test]
    fn omega_construction_on_c4() {
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        let a = VertexSet::from_ids(4, [0, 2]);
        let s = omega_antiforcing_set(&g, &m, &a, &[1, 2]).unwrap();
        let expected: EdgeSet = [Edge::new(1, 2)].into_iter().collect();
        assert_eq!(s, expected);
    }

    #[test]
    fn omega_on_k2_is_empty() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let m = pm(&k2, &[(0, 1)]);
        let a = VertexSet::from_ids(2, [0]);
        assert!(omega_antiforcing_set(&k2, &m, &a, &[1]).unwrap().is_empty());
    }

    #[test]
    fn omega_on_nice_matching_attains_quarter() {
        let (g, classes) = q3_with_classes();
        let e1 = PerfectMatching::from_edges(&g, classes.get(1).unwrap()).unwrap();
        let a = default_transversal(&e1);
        let s = omega_antiforcing_set(&g, &e1, &a, &[1, 2, 3, 4]).unwrap();
        assert_eq!(s.len(), 4);
        assert!(is_antiforcing_set(&g, &e1, &s).unwrap());
    }

    #[test]
    fn omega_rejects_bad_inputs() {
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        // not a transversal
        let a = VertexSet::from_ids(4, [0, 1]);
        assert!(omega_antiforcing_set(&g, &m, &a, &[1, 2]).is_err());
        // not a bijection
        let a = VertexSet::from_ids(4, [0, 2]);
        assert!(omega_antiforcing_set(&g, &m, &a, &[1, 1]).is_err());
    }

    #[test]
    fn minimalize_examples() {
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        let both: EdgeSet = [Edge::new(0, 3), Edge::new(1, 2)].into_iter().collect();
        let minimal = minimalize_antiforcing_set(&g, &m, &both).unwrap();
        assert_eq!(minimal.len(), 1);
        // fixed point on a minimal input
        assert_eq!(minimalize_antiforcing_set(&g, &m, &minimal).unwrap(), minimal);
        // non-anti-forcing input is an error
        assert!(minimalize_antiforcing_set(&g, &m, &EdgeSet::new()).is_err());
    }

    #[test]
    fn min_af_values() {
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        let r = min_antiforcing(&g, &m).unwrap();
        assert_eq!(r.value, 1);
        assert!(is_antiforcing_set(&g, &m, &r.witness).unwrap());

        let (q3, classes) = q3_with_classes();
        let e1 = PerfectMatching::from_edges(&q3, classes.get(1).unwrap()).unwrap();
        let r = min_antiforcing(&q3, &e1).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.lower_bound_c4, 4);
        assert_eq!(r.witness.len(), 4);
        assert!(is_antiforcing_set(&q3, &e1, &r.witness).unwrap());

        let g = k4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        assert_eq!(min_antiforcing(&g, &m).unwrap().value, 2);
    }

    /// Complement behavior in the bipartite Q3: minimalizing the full
    /// non-matching edge set leaves a minimal set whose complement (within
    /// the non-matching edges) is again anti-forcing.
    #[test]
    fn q3_complement_of_minimal_set_antiforces() {
        let (q3, classes) = q3_with_classes();
        let e1 = PerfectMatching::from_edges(&q3, classes.get(1).unwrap()).unwrap();
        let all: EdgeSet = q3
            .edges()
            .iter()
            .filter(|e| !e1.contains_edge(**e))
            .copied()
            .collect();
        let minimal = minimalize_antiforcing_set(&q3, &e1, &all).unwrap();
        assert!(minimal.len() >= 4);
        let complement: EdgeSet = all.difference(&minimal).copied().collect();
        assert!(is_antiforcing_set(&q3, &e1, &complement).unwrap());
    }

    #[test]
    fn max_af_reports_first_maximizer() {
        let g = c4();
        let pms = enumerate_perfect_matchings(&g);
        let (value, argmax) = max_antiforcing(&g).unwrap();
        assert_eq!(value, 1);
        assert_eq!(argmax, pms[0], "ties resolve to the canonical first matching");
    }

    #[test]
    fn max_af_values() {
        assert_eq!(max_antiforcing(&k4()).unwrap().0, 2);
        let mut pairs = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                pairs.push((u, v));
            }
        }
        let k33 = Graph::from_edge_list(6, &pairs).unwrap();
        assert_eq!(max_antiforcing(&k33).unwrap().0, 3);
        let (q3, _) = q3_with_classes();
        assert_eq!(max_antiforcing(&q3).unwrap().0, 4);
        assert_eq!(max_antiforcing_with_threads(&q3, 4).unwrap().0, 4);
        // a graph without a perfect matching
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(max_antiforcing(&star), Err(Error::NoPerfectMatching)));
    }

    /// Exhaustive oracle: scan subsets of the non-matching edges by
    /// ascending size, in lexicographic order, testing uniqueness by
    /// counting perfect matchings of the residual graph. Fully independent
    /// of the branch-and-bound and of the alternating-cycle search.
    fn brute_force_af(g: &Graph, m: &PerfectMatching) -> (usize, EdgeSet) {
        use itertools::Itertools;
        let candidates: Vec<Edge> = g
            .edges()
            .iter()
            .filter(|e| !m.contains_edge(**e))
            .copied()
            .collect();
        for k in 0..=candidates.len() {
            for combo in candidates.iter().combinations(k) {
                let removed: EdgeSet = combo.into_iter().copied().collect();
                let kept: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .filter(|e| !removed.contains(e))
                    .map(|e| e.endpoints())
                    .collect();
                let h = Graph::from_edge_list(g.vertex_count(), &kept).unwrap();
                if crate::matchings::count_perfect_matchings_up_to(&h, 2) == 1 {
                    return (k, removed);
                }
            }
        }
        unreachable!("removing all non-matching edges always isolates M");
    }

    #[test]
    fn min_af_matches_exhaustive_oracle_with_lex_witness() {
        let (q3, _) = q3_with_classes();
        let graphs = vec![c4(), k4(), q3];
        for g in graphs {
            for m in enumerate_perfect_matchings(&g) {
                let fast = min_antiforcing(&g, &m).unwrap();
                let (value, witness) = brute_force_af(&g, &m);
                assert_eq!(fast.value, value, "value mismatch on {m:?}");
                assert_eq!(fast.witness, witness, "witness mismatch on {m:?}");
                assert!(fast.lower_bound_c4 <= fast.value);
            }
        }
    }

    #[test]
    fn sandwich_bounds_hold() {
        let (q3, _) = q3_with_classes();
        for g in [c4(), k4(), q3] {
            let b = bounds(&g);
            for m in enumerate_perfect_matchings(&g) {
                let r = min_antiforcing(&g, &m).unwrap();
                assert!(Rational64::from_integer(r.value as i64) <= b.quarter);
                assert!(r.value <= b.cyclomatic);
                assert!(r.lower_bound_c4 <= r.value);
            }
        }
    }
}
