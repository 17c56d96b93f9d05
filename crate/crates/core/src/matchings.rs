//! Perfect-matching enumeration and M-alternating-cycle machinery.
//!
//! Everything downstream (anti-forcing search, niceness, construction)
//! reduces to two primitives here: deterministic backtracking over perfect
//! matchings, and exact detection of M-alternating cycles. Cycle detection
//! is two-tier: alternating 4-cycles are read off the matching directly (a
//! non-matching edge lies in at most one of them), and longer cycles come
//! from a second perfect matching through a chosen edge, extracted from the
//! symmetric difference. The second tier is exact on non-bipartite graphs,
//! where shortest-walk digraph arguments break down (closed alternating
//! walks need not contain alternating cycles).

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};

/// A perfect matching stored as the total partner involution.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerfectMatching {
    partner: Vec<usize>,
}

impl PerfectMatching {
    /// Builds from an explicit edge list, which must cover every vertex of
    /// `g` exactly once.
    pub fn from_edges(g: &Graph, edges: &EdgeSet) -> Result<PerfectMatching> {
        let n = g.vertex_count();
        let mut partner = vec![usize::MAX; n];
        for e in edges {
            if !g.contains(*e) {
                return Err(Error::invalid(format!("matching edge {e} not in graph")));
            }
            if partner[e.u()] != usize::MAX || partner[e.v()] != usize::MAX {
                return Err(Error::invalid(format!("vertex covered twice at {e}")));
            }
            partner[e.u()] = e.v();
            partner[e.v()] = e.u();
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::invalid("matching does not cover every vertex"));
        }
        Ok(PerfectMatching { partner })
    }

    pub fn from_partner(g: &Graph, partner: Vec<usize>) -> Result<PerfectMatching> {
        let m = PerfectMatching { partner };
        m.validate_for(g)?;
        Ok(m)
    }

    /// Checks the matching invariants against `g`: fixed-point-free
    /// involution whose pairs are edges.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if self.partner.len() != n {
            return Err(Error::invalid(format!(
                "matching is over {} vertices, graph has {n}",
                self.partner.len()
            )));
        }
        for v in 0..n {
            let p = self.partner[v];
            if p >= n || p == v || self.partner[p] != v {
                return Err(Error::invalid(format!("partner map broken at vertex {v}")));
            }
            if !g.has_edge(v, p) {
                return Err(Error::invalid(format!("matching pair ({v},{p}) is not an edge")));
            }
        }
        Ok(())
    }

    pub fn partner(&self, v: usize) -> usize {
        self.partner[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.partner.len()
    }

    /// Number of matching edges.
    pub fn size(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        e.u() < self.partner.len() && self.partner[e.u()] == e.v()
    }

    /// Matching edges in canonical ascending order.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.partner.len())
            .filter(|&v| v < self.partner[v])
            .map(|v| Edge::new(v, self.partner[v]))
            .collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().into_iter().collect()
    }

    /// Matching text format: one line `u v` per edge, ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.u(), e.v()));
        }
        out
    }

    /// Parses the matching text format against its companion graph.
    pub fn parse_text(text: &str, g: &Graph) -> Result<PerfectMatching> {
        let mut edges = EdgeSet::new();
        let mut prev: Option<Edge> = None;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                return Err(Error::parse(lineno, "blank line in matching file"));
            }
            let mut it = line.split_whitespace();
            let parse_id = |t: Option<&str>| -> Result<usize> {
                t.and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "expected matching line `u v`"))
            };
            let u = parse_id(it.next())?;
            let v = parse_id(it.next())?;
            if it.next().is_some() {
                return Err(Error::parse(lineno, "trailing tokens after edge"));
            }
            if u >= v {
                return Err(Error::parse(lineno, format!("edge {u} {v} must have u < v")));
            }
            let e = Edge::new(u, v);
            if let Some(p) = prev {
                if p >= e {
                    return Err(Error::parse(lineno, "edges not in ascending order"));
                }
            }
            prev = Some(e);
            edges.insert(e);
        }
        PerfectMatching::from_edges(g, &edges)
    }
}

impl fmt::Debug for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.edges()).finish()
    }
}

/// An M-alternating cycle, stored as its vertex sequence with the edge
/// `(v[0], v[1])` in M and membership alternating along the cycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlternatingCycle {
    vertices: Vec<usize>,
}

#[allow(clippy::len_without_is_empty)] // a cycle has at least 4 vertices
impl AlternatingCycle {
    fn new(vertices: Vec<usize>) -> AlternatingCycle {
        debug_assert!(vertices.len() >= 4 && vertices.len().is_multiple_of(2));
        AlternatingCycle { vertices }.canonical()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Cycle length; always even and at least 4.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Cycle edges in traversal order, starting with a matching edge.
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    /// The cycle edges outside M, ascending. These are the candidates an
    /// anti-forcing set must hit.
    pub fn non_matching_edges(&self) -> EdgeSet {
        self.edges().into_iter().skip(1).step_by(2).collect()
    }

    pub fn matching_edges(&self) -> EdgeSet {
        self.edges().into_iter().step_by(2).collect()
    }

    /// True iff the stored sequence really is an M-alternating cycle of `g`
    /// avoiding `forbidden`.
    pub fn verify(&self, g: &Graph, m: &PerfectMatching, forbidden: &EdgeSet) -> bool {
        let k = self.vertices.len();
        if k < 4 || !k.is_multiple_of(2) {
            return false;
        }
        let mut seen = std::collections::BTreeSet::new();
        if !self.vertices.iter().all(|v| seen.insert(*v)) {
            return false;
        }
        for (i, e) in self.edges().into_iter().enumerate() {
            if !g.contains(e) || forbidden.contains(&e) {
                return false;
            }
            if m.contains_edge(e) != (i % 2 == 0) {
                return false;
            }
        }
        true
    }

    /// Lexicographically least representative over even rotations and
    /// M-edge-preserving reversals.
    fn canonical(self) -> AlternatingCycle {
        let k = self.vertices.len();
        let mut best: Option<Vec<usize>> = None;
        for start in (0..k).step_by(2) {
            let forward: Vec<usize> = (0..k).map(|i| self.vertices[(start + i) % k]).collect();
            // reversal that keeps the first edge in M: v1 v0 v_{k-1} ... v2
            let mut backward = Vec::with_capacity(k);
            backward.push(forward[1]);
            backward.push(forward[0]);
            for i in (2..k).rev() {
                backward.push(forward[i]);
            }
            for cand in [forward, backward] {
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        AlternatingCycle {
            vertices: best.unwrap(),
        }
    }
}

/// Deterministic backtracking: branch on the lowest-id unmatched vertex,
/// neighbors ascending. Finds the lexicographically first completion of
/// `partner` (entries `usize::MAX` are unmatched); `true` on success with
/// `partner` filled in.
fn complete_matching(g: &Graph, partner: &mut [usize]) -> bool {
    let v = match partner.iter().position(|&p| p == usize::MAX) {
        None => return true,
        Some(v) => v,
    };
    for w in g.neighbors(v).iter() {
        if partner[w] == usize::MAX && w != v {
            partner[v] = w;
            partner[w] = v;
            if complete_matching(g, partner) {
                return true;
            }
            partner[v] = usize::MAX;
            partner[w] = usize::MAX;
        }
    }
    false
}

/// All perfect matchings of `g`, complete and duplicate-free, in canonical
/// order (lexicographic on ascending edge lists). Empty when `v(G)` is odd
/// or no perfect matching exists.
pub fn enumerate_perfect_matchings(g: &Graph) -> Vec<PerfectMatching> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut partner = vec![usize::MAX; n];
    enumerate_rec(g, &mut partner, &mut out);
    out
}

fn enumerate_rec(g: &Graph, partner: &mut Vec<usize>, out: &mut Vec<PerfectMatching>) {
    let v = match partner.iter().position(|&p| p == usize::MAX) {
        None => {
            out.push(PerfectMatching {
                partner: partner.clone(),
            });
            return;
        }
        Some(v) => v,
    };
    for w in g.neighbors(v).iter() {
        if partner[w] == usize::MAX && w != v {
            partner[v] = w;
            partner[w] = v;
            enumerate_rec(g, partner, out);
            partner[v] = usize::MAX;
            partner[w] = usize::MAX;
        }
    }
}

/// Number of perfect matchings, stopping early once `limit` are found.
pub fn count_perfect_matchings_up_to(g: &Graph, limit: usize) -> usize {
    let n = g.vertex_count();
    if n % 2 == 1 || limit == 0 {
        return 0;
    }
    let mut partner = vec![usize::MAX; n];
    let mut count = 0;
    count_rec(g, &mut partner, limit, &mut count);
    count
}

fn count_rec(g: &Graph, partner: &mut Vec<usize>, limit: usize, count: &mut usize) {
    if *count >= limit {
        return;
    }
    let v = match partner.iter().position(|&p| p == usize::MAX) {
        None => {
            *count += 1;
            return;
        }
        Some(v) => v,
    };
    for w in g.neighbors(v).iter() {
        if *count >= limit {
            return;
        }
        if partner[w] == usize::MAX && w != v {
            partner[v] = w;
            partner[w] = v;
            count_rec(g, partner, limit, count);
            partner[v] = usize::MAX;
            partner[w] = usize::MAX;
        }
    }
}

/// Some perfect matching of `g` containing `e`, or `None`. Deterministic:
/// the lexicographically first such matching is returned.
pub fn pm_containing_edge(g: &Graph, e: Edge) -> Option<PerfectMatching> {
    if !g.contains(e) || g.vertex_count() % 2 == 1 {
        return None;
    }
    let mut partner = vec![usize::MAX; g.vertex_count()];
    partner[e.u()] = e.v();
    partner[e.v()] = e.u();
    if complete_matching(g, &mut partner) {
        Some(PerfectMatching { partner })
    } else {
        None
    }
}

/// Exact count of 4-cycles whose edges alternate between M and non-M.
///
/// Any two distinct alternating 4-cycles share non-M edges with nothing (the
/// 4-cycle through a non-M edge is unique), so the whole family is pairwise
/// compatible and this count is a valid lower bound on `af(G, M)`.
pub fn count_alternating_4cycles(g: &Graph, m: &PerfectMatching) -> Result<usize> {
    m.validate_for(g)?;
    Ok(count_surviving_4cycles(g, m, &EdgeSet::new()))
}

/// Alternating 4-cycles none of whose non-M edges lie in `forbidden`.
pub(crate) fn count_surviving_4cycles(g: &Graph, m: &PerfectMatching, forbidden: &EdgeSet) -> usize {
    let edges = m.edges();
    let mut count = 0;
    for i in 0..edges.len() {
        let (x, y) = edges[i].endpoints();
        for e2 in edges.iter().skip(i + 1) {
            let (u, v) = e2.endpoints();
            for (a, b) in [(u, v), (v, u)] {
                let e_xa = Edge::new(x, a);
                let e_yb = Edge::new(y, b);
                if g.contains(e_xa)
                    && g.contains(e_yb)
                    && !forbidden.contains(&e_xa)
                    && !forbidden.contains(&e_yb)
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Finds an M-alternating cycle of `G - forbidden` if one exists.
///
/// Short cycles are preferred (they keep the branch-and-bound factor small):
/// alternating 4-cycles are scanned first, and only if none survives does
/// the search fall back to longer cycles, obtained exactly as the symmetric
/// difference of M with another perfect matching through a candidate edge.
/// The returned cycle is deterministic: shortest first, then the least
/// canonical vertex sequence.
pub fn find_alternating_cycle(
    g: &Graph,
    m: &PerfectMatching,
    forbidden: &EdgeSet,
) -> Result<Option<AlternatingCycle>> {
    m.validate_for(g)?;
    for e in forbidden {
        if m.contains_edge(*e) {
            return Err(Error::invalid(format!("forbidden set intersects M at {e}")));
        }
        if !g.contains(*e) {
            return Err(Error::invalid(format!("forbidden edge {e} not in graph")));
        }
    }
    Ok(find_alternating_cycle_unchecked(g, m, forbidden))
}

pub(crate) fn find_alternating_cycle_unchecked(
    g: &Graph,
    m: &PerfectMatching,
    forbidden: &EdgeSet,
) -> Option<AlternatingCycle> {
    if let Some(c) = shortest_surviving_4cycle(g, m, forbidden) {
        return Some(c);
    }
    longer_alternating_cycle(g, m, forbidden)
}

fn shortest_surviving_4cycle(
    g: &Graph,
    m: &PerfectMatching,
    forbidden: &EdgeSet,
) -> Option<AlternatingCycle> {
    let edges = m.edges();
    let mut best: Option<AlternatingCycle> = None;
    for i in 0..edges.len() {
        let (x, y) = edges[i].endpoints();
        for e2 in edges.iter().skip(i + 1) {
            let (u, v) = e2.endpoints();
            for (a, b) in [(u, v), (v, u)] {
                let e_xa = Edge::new(x, a);
                let e_yb = Edge::new(y, b);
                if g.contains(e_xa)
                    && g.contains(e_yb)
                    && !forbidden.contains(&e_xa)
                    && !forbidden.contains(&e_yb)
                {
                    // cycle x-y (M), y-b, b-a (M), a-x
                    let cand = AlternatingCycle::new(vec![x, y, b, a]);
                    if best.as_ref().is_none_or(|c| cand.vertices < c.vertices) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best
}

fn longer_alternating_cycle(
    g: &Graph,
    m: &PerfectMatching,
    forbidden: &EdgeSet,
) -> Option<AlternatingCycle> {
    // Work in H = G - forbidden. M is a perfect matching of H by
    // precondition; any other perfect matching of H through a non-M edge
    // yields an alternating cycle, and conversely.
    let h = if forbidden.is_empty() {
        g.clone()
    } else {
        let kept: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| !forbidden.contains(e))
            .map(|e| e.endpoints())
            .collect();
        Graph::from_edge_list(g.vertex_count(), &kept).expect("subgraph of a valid graph")
    };
    let mut best: Option<AlternatingCycle> = None;
    for e in h.edges() {
        if m.contains_edge(*e) {
            continue;
        }
        if let Some(m2) = pm_containing_edge(&h, *e) {
            let cand = cycle_through(m, &m2, *e);
            let better = match &best {
                None => true,
                Some(b) => (cand.len(), &cand.vertices) < (b.len(), &b.vertices),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best
}

/// The unique cycle of the symmetric difference M xor M2 through `e`, where
/// `e` is in M2 but not M. Alternates M / M2 edges, so it is M-alternating.
fn cycle_through(m: &PerfectMatching, m2: &PerfectMatching, e: Edge) -> AlternatingCycle {
    let (a, b) = e.endpoints();
    let mut seq = vec![a, b];
    let mut cur = b;
    let mut via_m = true;
    loop {
        let nxt = if via_m { m.partner(cur) } else { m2.partner(cur) };
        if nxt == a {
            break;
        }
        seq.push(nxt);
        cur = nxt;
        via_m = !via_m;
    }
    // first edge (a,b) is in M2 \ M; rotate so the cycle starts with an M edge
    seq.rotate_left(1);
    AlternatingCycle::new(seq)
}

/// True iff M is the unique perfect matching of `G - removed`, i.e. no
/// M-alternating cycle survives the removal.
pub fn has_unique_pm(g: &Graph, m: &PerfectMatching, removed: &EdgeSet) -> Result<bool> {
    Ok(find_alternating_cycle(g, m, removed)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k33() -> Graph {
        let mut pairs = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                pairs.push((u, v));
            }
        }
        Graph::from_edge_list(6, &pairs).unwrap()
    }

    fn q3() -> (Graph, PerfectMatching) {
        let (g, classes) = crate::generators::generate(&crate::generators::FamilySpec::Hypercube {
            n: 3,
        })
        .unwrap();
        let e1 = PerfectMatching::from_edges(&g, classes.get(1).unwrap()).unwrap();
        (g, e1)
    }

    fn pm(g: &Graph, pairs: &[(usize, usize)]) -> PerfectMatching {
        let edges: EdgeSet = pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        PerfectMatching::from_edges(g, &edges).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_perfect_matchings(&c4()).len(), 2);
        assert_eq!(enumerate_perfect_matchings(&k33()).len(), 6);
        let (g, _) = q3();
        assert_eq!(enumerate_perfect_matchings(&g).len(), 9);
        // odd vertex count: empty
        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(enumerate_perfect_matchings(&p3).is_empty());
    }

    /// Independent oracle for the Q3 count: scan all 4-edge subsets of the
    /// 12 edges and keep the ones covering every vertex exactly once.
    #[test]
    fn q3_pm_count_against_subset_oracle() {
        use itertools::Itertools;
        let (g, _) = q3();
        let mut count = 0;
        for combo in g.edges().iter().combinations(4) {
            let mut covered = [0u8; 8];
            for e in &combo {
                covered[e.u()] += 1;
                covered[e.v()] += 1;
            }
            if covered.iter().all(|&c| c == 1) {
                count += 1;
            }
        }
        assert_eq!(count, 9);
        assert_eq!(enumerate_perfect_matchings(&g).len(), count);
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        for g in [c4(), k4(), k33(), q3().0] {
            let pms = enumerate_perfect_matchings(&g);
            for w in pms.windows(2) {
                assert!(w[0] < w[1], "order violated: {:?} vs {:?}", w[0], w[1]);
            }
            for m in &pms {
                m.validate_for(&g).unwrap();
            }
        }
    }

    #[test]
    fn symmetric_difference_decomposes_into_alternating_cycles() {
        for g in [q3().0, k4(), k33()] {
            let pms = enumerate_perfect_matchings(&g);
            for m1 in &pms {
                for m2 in &pms {
                    if m1 == m2 {
                        continue;
                    }
                    // every edge of m2 \ m1 lies on an m1-alternating cycle
                    for e in m2.edges() {
                        if !m1.contains_edge(e) {
                            let c = cycle_through(m1, m2, e);
                            assert!(c.verify(&g, m1, &EdgeSet::new()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn alternating_cycle_on_c4() {
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        let c = find_alternating_cycle(&g, &m, &EdgeSet::new())
            .unwrap()
            .expect("C4 has its full alternating cycle");
        assert_eq!(c.len(), 4);
        assert!(c.verify(&g, &m, &EdgeSet::new()));
        // removing one non-M edge destroys the only cycle
        let forbidden: EdgeSet = [Edge::new(1, 2)].into_iter().collect();
        assert!(find_alternating_cycle(&g, &m, &forbidden).unwrap().is_none());
        assert!(!has_unique_pm(&g, &m, &EdgeSet::new()).unwrap());
        assert!(has_unique_pm(&g, &m, &forbidden).unwrap());
    }

    #[test]
    fn forbidden_must_avoid_matching() {
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        let forbidden: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        assert!(find_alternating_cycle(&g, &m, &forbidden).is_err());
    }

    #[test]
    fn q3_e1_has_alternating_4cycle() {
        let (g, e1) = q3();
        let c = find_alternating_cycle(&g, &e1, &EdgeSet::new())
            .unwrap()
            .unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.verify(&g, &e1, &EdgeSet::new()));
    }

    #[test]
    fn count_4cycles_examples() {
        let (g, e1) = q3();
        assert_eq!(count_alternating_4cycles(&g, &e1).unwrap(), 4);
        let g = k4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        assert_eq!(count_alternating_4cycles(&g, &m).unwrap(), 2);
        let c6 = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let m = pm(&c6, &[(0, 1), (2, 3), (4, 5)]);
        assert_eq!(count_alternating_4cycles(&c6, &m).unwrap(), 0);
    }

    #[test]
    fn c6_falls_back_to_long_cycle() {
        let c6 = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let m = pm(&c6, &[(0, 1), (2, 3), (4, 5)]);
        let c = find_alternating_cycle(&c6, &m, &EdgeSet::new())
            .unwrap()
            .unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.verify(&c6, &m, &EdgeSet::new()));
    }

    /// Two triangles joined by a matching edge: the naive directed-walk
    /// criterion reports a closed alternating walk here, but the graph has
    /// no alternating cycle at all (M is unique). Guards the exactness of
    /// the cycle search on non-bipartite inputs.
    #[test]
    fn blossom_shaped_graph_has_unique_pm() {
        let g = Graph::from_edge_list(
            6,
            &[(0, 1), (2, 3), (4, 5), (0, 2), (0, 3), (1, 4), (1, 5)],
        )
        .unwrap();
        let m = pm(&g, &[(0, 1), (2, 3), (4, 5)]);
        assert_eq!(enumerate_perfect_matchings(&g).len(), 1);
        assert!(find_alternating_cycle(&g, &m, &EdgeSet::new()).unwrap().is_none());
        assert!(has_unique_pm(&g, &m, &EdgeSet::new()).unwrap());
    }

    #[test]
    fn completeness_against_exhaustive_cycle_enumeration() {
        // On every graph here, an alternating cycle is found iff a second
        // perfect matching exists.
        let graphs = vec![
            c4(),
            k4(),
            k33(),
            q3().0,
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap(),
            Graph::from_edge_list(6, &[(0, 1), (2, 3), (4, 5), (0, 2), (0, 3), (1, 4), (1, 5)])
                .unwrap(),
        ];
        for g in graphs {
            for m in enumerate_perfect_matchings(&g) {
                let found = find_alternating_cycle(&g, &m, &EdgeSet::new()).unwrap();
                let second_pm_exists = enumerate_perfect_matchings(&g).len() > 1;
                assert_eq!(found.is_some(), second_pm_exists);
                if let Some(c) = found {
                    assert!(c.verify(&g, &m, &EdgeSet::new()));
                }
            }
        }
    }

    #[test]
    fn pm_containing_edge_examples() {
        let g = k4();
        for e in g.edges() {
            let m = pm_containing_edge(&g, *e).expect("K4 is 1-extendable");
            assert!(m.contains_edge(*e));
            m.validate_for(&g).unwrap();
        }
        let p4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(pm_containing_edge(&p4, Edge::new(1, 2)).is_none());
        assert!(pm_containing_edge(&c4(), Edge::new(0, 1)).is_some());
    }

    #[test]
    fn has_unique_pm_examples() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let m = pm(&k2, &[(0, 1)]);
        assert!(has_unique_pm(&k2, &m, &EdgeSet::new()).unwrap());
        // removed set touching M is invalid
        let g = c4();
        let m = pm(&g, &[(0, 1), (2, 3)]);
        let removed: EdgeSet = [Edge::new(2, 3)].into_iter().collect();
        assert!(has_unique_pm(&g, &m, &removed).is_err());
    }

    #[test]
    fn matching_text_round_trip() {
        let (g, e1) = q3();
        let text = e1.to_text();
        assert_eq!(text, "0 1\n2 3\n4 5\n6 7\n");
        let back = PerfectMatching::parse_text(&text, &g).unwrap();
        assert_eq!(back, e1);
        assert!(PerfectMatching::parse_text("0 1\n2 3\n", &g).is_err());
    }
}
