//! Immutable simple undirected graphs with dense 0-based vertex ids.
//!
//! A [`Graph`] is canonical by construction: the edge list is sorted
//! lexicographically with `u < v` on every edge, adjacency is stored as
//! per-vertex bitsets, and values never mutate after construction. All other
//! modules build on this type.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, usize)", try_from = "(usize, usize)")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Canonicalizes the endpoint order. Panics on a loop; graph-level
    /// construction reports loops as errors before calling this.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "loop edge ({a},{a})");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if the edge does not touch `x`.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v);
            self.u
        }
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> Self {
        (e.u, e.v)
    }
}

impl TryFrom<(usize, usize)> for Edge {
    type Error = String;

    fn try_from(p: (usize, usize)) -> std::result::Result<Self, String> {
        if p.0 == p.1 {
            return Err(format!("loop edge ({},{})", p.0, p.1));
        }
        Ok(Edge::new(p.0, p.1))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A canonical set of edges: anti-forcing sets, Θ*-classes, the i-edge
/// classes, and so on. `BTreeSet` gives ascending iteration for free.
pub type EdgeSet = BTreeSet<Edge>;

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a canonical graph from an arbitrary pair list. Duplicate pairs
    /// collapse; loops and out-of-range ids are rejected.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::invalid(format!("loop edge ({a},{b})")));
            }
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a},{b}) has an endpoint outside 0..{n}"
                )));
            }
            set.insert(Edge::new(a, b));
        }
        Ok(Graph::from_canonical(n, set.into_iter().collect()))
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let pairs: Vec<(usize, usize)> = edges.into_iter().map(|e| e.endpoints()).collect();
        Graph::from_edge_list(n, &pairs)
    }

    fn from_canonical(n: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![VertexSet::new(n); n];
        for e in &edges {
            adj[e.u()].insert(e.v());
            adj[e.v()].insert(e.u());
        }
        Graph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `u < v`, ascending lexicographic.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(b)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u(), e.v())
    }

    /// Neighbor set of `v` as a bitset.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Position of `e` in the canonical edge list.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// Connected components, each a `VertexSet`, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![s];
            comp.insert(s);
            seen.insert(s);
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS-exact hop distances for all pairs; unreachable pairs get the
    /// explicit [`DistanceMatrix::INFINITE`] sentinel, never a panic.
    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.n;
        let mut d = vec![DistanceMatrix::INFINITE; n * n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let dv = row[v];
                for w in self.adj[v].iter() {
                    if row[w] == DistanceMatrix::INFINITE {
                        row[w] = dv + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    /// Subgraph induced by `s`, with new ids `0..|s|` assigned in ascending
    /// order of the old ids. The returned map sends new id -> old id, so
    /// callers can pull matchings back.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let old_ids: Vec<usize> = s.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (new, &old) in old_ids.iter().enumerate() {
            new_of[old] = new;
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            if s.contains(e.u()) && s.contains(e.v()) {
                edges.push(Edge::new(new_of[e.u()], new_of[e.v()]));
            }
        }
        (Graph::from_canonical(old_ids.len(), edges), old_ids)
    }

    /// Two-coloring per component if the graph is bipartite. Deterministic:
    /// the lowest id of each component goes to the first part.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for w in self.adj[v].iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        let mut x = VertexSet::new(self.n);
        let mut y = VertexSet::new(self.n);
        for (v, &c) in color.iter().enumerate() {
            if c == 0 {
                x.insert(v);
            } else {
                y.insert(v);
            }
        }
        Some((x, y))
    }

    /// Serializes in the exact graph text format: header `v e`, then one
    /// line `u v` per edge in ascending order, LF endings.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u(), e.v()));
        }
        out
    }

    /// Parses the graph text format, reporting the offending line on error.
    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty graph file"))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(1, "expected header `v e`"))?;
        let e: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(1, "expected header `v e`"))?;
        if it.next().is_some() {
            return Err(Error::parse(1, "trailing tokens after header"));
        }
        let mut edges = Vec::with_capacity(e);
        let mut prev: Option<Edge> = None;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                return Err(Error::parse(lineno, "blank line inside edge list"));
            }
            let mut it = line.split_whitespace();
            let parse_id = |t: Option<&str>| -> Result<usize> {
                t.and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "expected edge line `u v`"))
            };
            let u = parse_id(it.next())?;
            let v = parse_id(it.next())?;
            if it.next().is_some() {
                return Err(Error::parse(lineno, "trailing tokens after edge"));
            }
            if u >= v {
                return Err(Error::parse(lineno, format!("edge {u} {v} must have u < v")));
            }
            if v >= n {
                return Err(Error::parse(
                    lineno,
                    format!("vertex {v} outside 0..{n}"),
                ));
            }
            let edge = Edge::new(u, v);
            if let Some(p) = prev {
                if p >= edge {
                    return Err(Error::parse(lineno, "edges not in ascending order"));
                }
            }
            prev = Some(edge);
            edges.push(edge);
        }
        if edges.len() != e {
            return Err(Error::parse(
                edges.len() + 1,
                format!("header promised {e} edges, found {}", edges.len()),
            ));
        }
        Ok(Graph::from_canonical(n, edges))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(v={}, e={}, {:?})", self.n, self.edges.len(), self.edges)
    }
}

/// All-pairs hop distances with an explicit infinity sentinel.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// Sentinel for unreachable pairs.
    pub const INFINITE: u32 = u32::MAX;

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn is_finite(&self, u: usize, v: usize) -> bool {
        self.get(u, v) != Self::INFINITE
    }
}

/// True iff `d_H(u,v) = d_G(u,v)` for all u, v of the selection. The
/// subgraph is given as a vertex/edge selection of `g`; an edge outside the
/// selection's vertices or missing from `g` is an invalid input.
pub fn is_isometric_subgraph(g: &Graph, vertices: &VertexSet, edges: &EdgeSet) -> Result<bool> {
    if vertices.universe() != g.vertex_count() {
        return Err(Error::invalid("vertex selection drawn from a different universe"));
    }
    for e in edges {
        if !g.contains(*e) {
            return Err(Error::invalid(format!("edge {e} not present in the host graph")));
        }
        if !vertices.contains(e.u()) || !vertices.contains(e.v()) {
            return Err(Error::invalid(format!(
                "edge {e} leaves the selected vertex set"
            )));
        }
    }
    let (h, old_ids) = subgraph_of_selection(g, vertices, edges);
    let dh = h.all_pairs_distances();
    let dg = g.all_pairs_distances();
    for i in 0..h.vertex_count() {
        for j in (i + 1)..h.vertex_count() {
            let inner = dh.get(i, j);
            let outer = dg.get(old_ids[i], old_ids[j]);
            if inner != outer {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn subgraph_of_selection(g: &Graph, vertices: &VertexSet, edges: &EdgeSet) -> (Graph, Vec<usize>) {
    let old_ids: Vec<usize> = vertices.iter().collect();
    let mut new_of = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in old_ids.iter().enumerate() {
        new_of[old] = new;
    }
    let remapped: Vec<Edge> = edges
        .iter()
        .map(|e| Edge::new(new_of[e.u()], new_of[e.v()]))
        .collect();
    (Graph::from_canonical(old_ids.len(), remapped), old_ids)
}
