//! Building extremal graphs from K2 by the two expansion operations, and
//! decomposing them back.
//!
//! A construction trace is a linear program over one evolving graph whose
//! tracked matching stays nice after every step:
//!
//! * `SeedK2 { u, v }` adds a fresh matched K2 on explicit vertex ids.
//! * `OpI { e1, e2, choice }` adds the two absent edges completing a
//!   4-cycle with the matching edges e1 and e2 (`parallel` joins the lower
//!   endpoints and the upper endpoints, `crossed` does the opposite).
//! * `OpII { m1, m2, phi }` joins over sub-matchings: the edges `u-phi(u)`
//!   are added. When `m2` lives on vertices absent from the state it
//!   attaches a fresh component (the Theorem-style K2 attach); otherwise it
//!   joins two existing components.
//!
//! Replaying a trace reproduces a graph exactly, canonical edge list and
//! all, because the steps carry explicit vertex ids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::matchings::{pm_containing_edge, PerfectMatching};
use crate::nice::is_nice;
use crate::rng::SplitMix64;

/// The two ways the absent 4-cycle edges can pair up the endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    /// `(u1,u2)` and `(v1,v2)` for e1 = (u1,v1), e2 = (u2,v2).
    Parallel,
    /// `(u1,v2)` and `(v1,u2)`.
    Crossed,
}

/// One expansion step over the evolving state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpansionStep {
    SeedK2 {
        u: usize,
        v: usize,
    },
    OpI {
        e1: Edge,
        e2: Edge,
        choice: Pairing,
    },
    OpII {
        m1: Vec<Edge>,
        m2: Vec<Edge>,
        phi: Vec<(usize, usize)>,
    },
}

/// A replayable construction: the steps plus the graph and nice matching
/// they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    steps: Vec<ExpansionStep>,
    graph: Graph,
    matching: PerfectMatching,
}

impl ConstructionTrace {
    /// Validates and replays `steps` from the empty state.
    pub fn from_steps(steps: Vec<ExpansionStep>) -> Result<ConstructionTrace> {
        let mut state = TraceState::new();
        for step in &steps {
            state.apply(step)?;
        }
        let (graph, matching) = state.finish()?;
        Ok(ConstructionTrace {
            steps,
            graph,
            matching,
        })
    }

    pub fn steps(&self) -> &[ExpansionStep] {
        &self.steps
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matching(&self) -> &PerfectMatching {
        &self.matching
    }

    /// Re-runs the steps from scratch; equality with the stored result is a
    /// trace invariant.
    pub fn replay(&self) -> Result<(Graph, PerfectMatching)> {
        let t = ConstructionTrace::from_steps(self.steps.clone())?;
        Ok((t.graph, t.matching))
    }

    /// Trace file format: a JSON array of steps.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.steps).expect("steps serialize")
    }

    pub fn from_json(text: &str) -> Result<ConstructionTrace> {
        let steps: Vec<ExpansionStep> = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("trace JSON: {e}")))?;
        ConstructionTrace::from_steps(steps)
    }
}

/// The evolving vertex/edge/matching state during replay. Vertex ids may be
/// sparse mid-trace (decomposition peels from the top); they must be dense
/// by the end.
struct TraceState {
    present: Vec<bool>,
    edges: EdgeSet,
    matching: EdgeSet,
}

impl TraceState {
    fn new() -> TraceState {
        TraceState {
            present: Vec::new(),
            edges: EdgeSet::new(),
            matching: EdgeSet::new(),
        }
    }

    fn has_vertex(&self, v: usize) -> bool {
        v < self.present.len() && self.present[v]
    }

    fn add_vertex(&mut self, v: usize) {
        if v >= self.present.len() {
            self.present.resize(v + 1, false);
        }
        self.present[v] = true;
    }

    fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    /// Compacts to a dense graph plus the current matching and verifies the
    /// matching is still nice.
    fn check_nice(&self) -> Result<()> {
        let (g, m) = self.compact()?;
        if !is_nice(&g, &m)? {
            return Err(Error::NotNice);
        }
        Ok(())
    }

    fn compact(&self) -> Result<(Graph, PerfectMatching)> {
        let ids: Vec<usize> = (0..self.present.len()).filter(|&v| self.present[v]).collect();
        let mut new_of = vec![usize::MAX; self.present.len()];
        for (new, &old) in ids.iter().enumerate() {
            new_of[old] = new;
        }
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (new_of[e.u()], new_of[e.v()]))
            .collect();
        let g = Graph::from_edge_list(ids.len(), &pairs)?;
        let m_edges: EdgeSet = self
            .matching
            .iter()
            .map(|e| Edge::new(new_of[e.u()], new_of[e.v()]))
            .collect();
        let m = PerfectMatching::from_edges(&g, &m_edges)?;
        Ok((g, m))
    }

    /// Component id (smallest reachable vertex) of `v` in the current state.
    fn component_root(&self, v: usize) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![v];
        seen.insert(v);
        while let Some(x) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.touches(x)) {
                let y = e.other(x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        *seen.iter().next().unwrap()
    }

    fn apply(&mut self, step: &ExpansionStep) -> Result<()> {
        match step {
            ExpansionStep::SeedK2 { u, v } => {
                if u == v {
                    return Err(Error::invalid("seed with equal endpoints"));
                }
                if self.has_vertex(*u) || self.has_vertex(*v) {
                    return Err(Error::invalid(format!("seed vertices {u},{v} already present")));
                }
                self.add_vertex(*u);
                self.add_vertex(*v);
                let e = Edge::new(*u, *v);
                self.edges.insert(e);
                self.matching.insert(e);
            }
            ExpansionStep::OpI { e1, e2, choice } => {
                if !self.matching.contains(e1) || !self.matching.contains(e2) {
                    return Err(Error::invalid("op_i edges must lie in the tracked matching"));
                }
                if e1 == e2 {
                    return Err(Error::invalid("op_i needs two distinct matching edges"));
                }
                let (a, b) = opi_added_edges(*e1, *e2, *choice);
                for e in [a, b] {
                    if self.edges.contains(&e) {
                        return Err(Error::invalid(format!("op_i edge {e} already present")));
                    }
                }
                self.edges.insert(a);
                self.edges.insert(b);
            }
            ExpansionStep::OpII { m1, m2, phi } => {
                self.apply_op_ii(m1, m2, phi)?;
            }
        }
        self.check_nice()
    }

    fn apply_op_ii(&mut self, m1: &[Edge], m2: &[Edge], phi: &[(usize, usize)]) -> Result<()> {
        if m1.len() != m2.len() {
            return Err(Error::invalid("op_ii sub-matchings differ in size"));
        }
        for e in m1 {
            if !self.matching.contains(e) {
                return Err(Error::invalid(format!("op_ii left edge {e} not in the matching")));
            }
        }
        // right side: either an existing part of the matching, or an
        // entirely fresh component to attach
        let m2_vertices: Vec<usize> = m2.iter().flat_map(|e| [e.u(), e.v()]).collect();
        let fresh = m2_vertices.iter().all(|&v| !self.has_vertex(v));
        if fresh {
            let mut dedup = std::collections::BTreeSet::new();
            for &v in &m2_vertices {
                if !dedup.insert(v) {
                    return Err(Error::invalid("op_ii fresh side reuses a vertex"));
                }
            }
            for &v in &m2_vertices {
                self.add_vertex(v);
            }
            for e in m2 {
                self.edges.insert(*e);
                self.matching.insert(*e);
            }
        } else {
            for e in m2 {
                if !self.matching.contains(e) {
                    return Err(Error::invalid(format!(
                        "op_ii right edge {e} not in the matching"
                    )));
                }
            }
            // the two sides must live in disjoint components
            let left_roots: std::collections::BTreeSet<usize> = m1
                .iter()
                .flat_map(|e| [e.u(), e.v()])
                .map(|v| self.component_root(v))
                .collect();
            let right_roots: std::collections::BTreeSet<usize> = m2_vertices
                .iter()
                .map(|&v| self.component_root(v))
                .collect();
            if left_roots.intersection(&right_roots).next().is_some() {
                return Err(Error::invalid("op_ii sides share a component"));
            }
        }
        // phi: bijection between the matched endpoints, compatible with the
        // sub-matchings
        let m1_set: EdgeSet = m1.iter().copied().collect();
        let m2_set: EdgeSet = m2.iter().copied().collect();
        let dom: std::collections::BTreeSet<usize> =
            m1.iter().flat_map(|e| [e.u(), e.v()]).collect();
        let cod: std::collections::BTreeSet<usize> = m2_vertices.iter().copied().collect();
        if phi.len() != dom.len() {
            return Err(Error::invalid("op_ii bijection has the wrong domain size"));
        }
        let mut map = std::collections::BTreeMap::new();
        let mut image = std::collections::BTreeSet::new();
        for &(u, w) in phi {
            if !dom.contains(&u) || !cod.contains(&w) {
                return Err(Error::invalid("op_ii bijection leaves the matched endpoints"));
            }
            if map.insert(u, w).is_some() || !image.insert(w) {
                return Err(Error::invalid("op_ii bijection is not injective"));
            }
        }
        for e in &m1_set {
            let (u, v) = e.endpoints();
            let (pu, pv) = (map[&u], map[&v]);
            if !m2_set.contains(&Edge::new(pu, pv)) {
                return Err(Error::invalid(
                    "op_ii bijection does not carry the left matching onto the right",
                ));
            }
        }
        for (&u, &w) in &map {
            let e = Edge::new(u, w);
            if self.edges.contains(&e) {
                return Err(Error::invalid(format!("op_ii join edge {e} already present")));
            }
            self.edges.insert(e);
        }
        Ok(())
    }

    fn finish(self) -> Result<(Graph, PerfectMatching)> {
        if self.present.iter().any(|&p| !p) {
            return Err(Error::invalid("trace leaves holes in the vertex id range"));
        }
        self.compact()
    }
}

fn opi_added_edges(e1: Edge, e2: Edge, choice: Pairing) -> (Edge, Edge) {
    let (u1, v1) = e1.endpoints();
    let (u2, v2) = e2.endpoints();
    match choice {
        Pairing::Parallel => (Edge::new(u1, u2), Edge::new(v1, v2)),
        Pairing::Crossed => (Edge::new(u1, v2), Edge::new(v1, u2)),
    }
}

/// Operation (i): add the two absent edges completing a 4-cycle with the
/// matching edges e1, e2 of the nice matching M. M stays a nice perfect
/// matching of the result.
pub fn expand_i(
    g: &Graph,
    m: &PerfectMatching,
    e1: Edge,
    e2: Edge,
    choice: Pairing,
) -> Result<(Graph, PerfectMatching)> {
    if !is_nice(g, m)? {
        return Err(Error::NotNice);
    }
    if !m.contains_edge(e1) || !m.contains_edge(e2) || e1 == e2 {
        return Err(Error::invalid("op_i needs two distinct matching edges"));
    }
    let (a, b) = opi_added_edges(e1, e2, choice);
    if g.contains(a) || g.contains(b) {
        return Err(Error::invalid("op_i chosen edges already present"));
    }
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| e.endpoints()).collect();
    pairs.push(a.endpoints());
    pairs.push(b.endpoints());
    let out = Graph::from_edge_list(g.vertex_count(), &pairs)?;
    let m_out = PerfectMatching::from_edges(&out, &m.edge_set())?;
    assert!(is_nice(&out, &m_out)?, "op_i must preserve niceness");
    Ok((out, m_out))
}

/// Operation (ii): join two graphs with nice matchings over sub-matchings
/// `m1p`, `m2p` via the bijection `phi` (given on the original ids of both
/// graphs). The second graph is relabeled by `v(G1)`; the union matching is
/// nice in the result. Empty sub-matchings give the disjoint union.
pub fn expand_ii(
    g1: &Graph,
    m1: &PerfectMatching,
    g2: &Graph,
    m2: &PerfectMatching,
    m1p: &EdgeSet,
    m2p: &EdgeSet,
    phi: &[(usize, usize)],
) -> Result<(Graph, PerfectMatching)> {
    if !is_nice(g1, m1)? || !is_nice(g2, m2)? {
        return Err(Error::NotNice);
    }
    for e in m1p {
        if !m1.contains_edge(*e) {
            return Err(Error::invalid(format!("{e} not in the first matching")));
        }
    }
    for e in m2p {
        if !m2.contains_edge(*e) {
            return Err(Error::invalid(format!("{e} not in the second matching")));
        }
    }
    if m1p.len() != m2p.len() {
        return Err(Error::invalid("sub-matchings differ in size"));
    }
    let shift = g1.vertex_count();
    let n = shift + g2.vertex_count();
    let mut pairs: Vec<(usize, usize)> = g1.edges().iter().map(|e| e.endpoints()).collect();
    pairs.extend(g2.edges().iter().map(|e| (e.u() + shift, e.v() + shift)));

    // validate phi against the unshifted ids, then add the join edges
    let dom: std::collections::BTreeSet<usize> = m1p.iter().flat_map(|e| [e.u(), e.v()]).collect();
    let cod: std::collections::BTreeSet<usize> = m2p.iter().flat_map(|e| [e.u(), e.v()]).collect();
    if phi.len() != dom.len() {
        return Err(Error::invalid("bijection has the wrong domain size"));
    }
    let mut map = std::collections::BTreeMap::new();
    let mut image = std::collections::BTreeSet::new();
    for &(u, w) in phi {
        if !dom.contains(&u) || !cod.contains(&w) {
            return Err(Error::invalid("bijection leaves the matched endpoints"));
        }
        if map.insert(u, w).is_some() || !image.insert(w) {
            return Err(Error::invalid("bijection is not injective"));
        }
    }
    for e in m1p {
        let (u, v) = e.endpoints();
        if !m2p.contains(&Edge::new(map[&u], map[&v])) {
            return Err(Error::invalid(
                "bijection does not carry the first sub-matching onto the second",
            ));
        }
    }
    for (&u, &w) in &map {
        pairs.push((u, w + shift));
    }
    let out = Graph::from_edge_list(n, &pairs)?;
    let mut m_edges = m1.edge_set();
    for e in m2.edges() {
        m_edges.insert(Edge::new(e.u() + shift, e.v() + shift));
    }
    let m_out = PerfectMatching::from_edges(&out, &m_edges)?;
    assert!(is_nice(&out, &m_out)?, "op_ii must preserve niceness");
    Ok((out, m_out))
}

/// Seeded random walk over applicable expansion steps. Deterministic in the
/// seed; the tracked matching is nice after every step by construction.
/// Vertex growth stops at `size_cap`; when no step applies at all the walk
/// stops early.
pub fn random_extremal(seed: u64, steps: usize, size_cap: usize) -> ConstructionTrace {
    let mut rng = SplitMix64::new(seed);
    let mut state = TraceState::new();
    let mut trace = vec![ExpansionStep::SeedK2 { u: 0, v: 1 }];
    state.apply(&trace[0]).expect("seed step is valid");
    for _ in 0..steps {
        let actions = applicable_steps(&state, size_cap);
        if actions.is_empty() {
            break;
        }
        let step = actions[rng.next_below(actions.len())].clone();
        state.apply(&step).expect("enumerated step is valid");
        trace.push(step);
    }
    ConstructionTrace::from_steps(trace).expect("replay of a valid walk")
}

fn applicable_steps(state: &TraceState, size_cap: usize) -> Vec<ExpansionStep> {
    let mut out = Vec::new();
    let m_edges: Vec<Edge> = state.matching.iter().copied().collect();
    // op_i on any two matching edges with an absent pair
    for i in 0..m_edges.len() {
        for j in (i + 1)..m_edges.len() {
            for choice in [Pairing::Parallel, Pairing::Crossed] {
                let (a, b) = opi_added_edges(m_edges[i], m_edges[j], choice);
                if !state.edges.contains(&a) && !state.edges.contains(&b) {
                    out.push(ExpansionStep::OpI {
                        e1: m_edges[i],
                        e2: m_edges[j],
                        choice,
                    });
                }
            }
        }
    }
    let v = state.vertex_count();
    let next_id = state.present.len();
    if v + 2 <= size_cap {
        // attach a fresh K2 over a single matching edge, both orientations
        let fresh = Edge::new(next_id, next_id + 1);
        for e in &m_edges {
            for phi in [
                vec![(e.u(), fresh.u()), (e.v(), fresh.v())],
                vec![(e.u(), fresh.v()), (e.v(), fresh.u())],
            ] {
                out.push(ExpansionStep::OpII {
                    m1: vec![*e],
                    m2: vec![fresh],
                    phi,
                });
            }
        }
        // or float it as its own component
        out.push(ExpansionStep::SeedK2 {
            u: fresh.u(),
            v: fresh.v(),
        });
    }
    // join two existing components over single matching edges
    for i in 0..m_edges.len() {
        for j in (i + 1)..m_edges.len() {
            let (e, f) = (m_edges[i], m_edges[j]);
            if state.component_root(e.u()) == state.component_root(f.u()) {
                continue;
            }
            for phi in [
                vec![(e.u(), f.u()), (e.v(), f.v())],
                vec![(e.u(), f.v()), (e.v(), f.u())],
            ] {
                out.push(ExpansionStep::OpII {
                    m1: vec![e],
                    m2: vec![f],
                    phi,
                });
            }
        }
    }
    out
}

/// Rebuilds a construction trace for (G, M): peel the matching edges in
/// canonical order; each one enters as an isolated seed or as a K2 attach
/// over the least earlier matching edge it cross-connects to, followed by
/// op_i steps for its remaining pattern pairs. Replaying reproduces G
/// exactly.
pub fn decompose(g: &Graph, m: &PerfectMatching) -> Result<ConstructionTrace> {
    if !is_nice(g, m)? {
        return Err(Error::NotNice);
    }
    let m_edges = m.edges();
    let mut steps = Vec::new();
    for (i, &e) in m_edges.iter().enumerate() {
        let (u, v) = e.endpoints();
        // patterns against every earlier matching edge
        let mut join: Option<(usize, Pairing)> = None;
        for (j, &f) in m_edges.iter().enumerate().take(i) {
            for choice in [Pairing::Parallel, Pairing::Crossed] {
                let (a, b) = opi_added_edges(f, e, choice);
                if g.contains(a) && g.contains(b) && join.is_none() {
                    join = Some((j, choice));
                }
            }
        }
        match join {
            None => steps.push(ExpansionStep::SeedK2 { u, v }),
            Some((j, join_choice)) => {
                let f = m_edges[j];
                let phi = match join_choice {
                    Pairing::Parallel => vec![(f.u(), u), (f.v(), v)],
                    Pairing::Crossed => vec![(f.u(), v), (f.v(), u)],
                };
                steps.push(ExpansionStep::OpII {
                    m1: vec![f],
                    m2: vec![e],
                    phi,
                });
                // remaining pattern pairs become op_i steps
                for (j2, &f2) in m_edges.iter().enumerate().take(i) {
                    for choice in [Pairing::Parallel, Pairing::Crossed] {
                        if j2 == j && choice == join_choice {
                            continue;
                        }
                        let (a, b) = opi_added_edges(f2, e, choice);
                        if g.contains(a) && g.contains(b) {
                            steps.push(ExpansionStep::OpI {
                                e1: f2,
                                e2: e,
                                choice,
                            });
                        }
                    }
                }
            }
        }
    }
    let trace = ConstructionTrace::from_steps(steps)?;
    if trace.graph() != g {
        return Err(Error::invalid("decomposition replay does not reproduce the graph"));
    }
    Ok(trace)
}

/// True iff every edge lies in some perfect matching. Meaningful for
/// connected graphs on at least four vertices.
pub fn is_one_extendable(g: &Graph) -> bool {
    g.edges().iter().all(|e| pm_containing_edge(g, *e).is_some())
}

/// Random graph with a built-in perfect matching: vertices `0..v` (v even),
/// matching edges (2i, 2i+1), every other pair added with probability
/// `p_num/p_den`. Used by the property suites.
pub fn random_graph_with_pm(
    rng: &mut SplitMix64,
    v: usize,
    p_num: usize,
    p_den: usize,
) -> (Graph, PerfectMatching) {
    assert!(v >= 2 && v.is_multiple_of(2));
    let mut pairs: Vec<(usize, usize)> = (0..v / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    let base: EdgeSet = pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect();
    for a in 0..v {
        for b in (a + 1)..v {
            if !base.contains(&Edge::new(a, b)) && rng.chance(p_num, p_den) {
                pairs.push((a, b));
            }
        }
    }
    let g = Graph::from_edge_list(v, &pairs).expect("valid random graph");
    let m = PerfectMatching::from_edges(&g, &base).expect("built-in matching");
    (g, m)
}

/// Random connected bipartite graph with a built-in perfect matching:
/// parts `0..half` and `half..2*half`, matching edges (i, half+i), other
/// cross pairs added with probability `p_num/p_den`. Redraws until
/// connected; after 100 failures a deterministic ladder of extra rungs
/// forces connectivity.
pub fn random_connected_bipartite_with_pm(
    rng: &mut SplitMix64,
    half: usize,
    p_num: usize,
    p_den: usize,
) -> (Graph, PerfectMatching) {
    assert!(half >= 1);
    for attempt in 0..=100 {
        let mut pairs: Vec<(usize, usize)> = (0..half).map(|i| (i, half + i)).collect();
        for a in 0..half {
            for b in 0..half {
                if a != b && rng.chance(p_num, p_den) {
                    pairs.push((a, half + b));
                }
            }
        }
        if attempt == 100 {
            for i in 0..half {
                pairs.push((i, half + (i + 1) % half));
            }
        }
        let g = Graph::from_edge_list(2 * half, &pairs).expect("valid random graph");
        if half == 1 || g.is_connected() {
            let base: EdgeSet = (0..half).map(|i| Edge::new(i, half + i)).collect();
            let m = PerfectMatching::from_edges(&g, &base).expect("built-in matching");
            return (g, m);
        }
    }
    unreachable!("ladder fallback always connects");
}
