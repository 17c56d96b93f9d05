//! Nice perfect matchings and edge-involutions.
//!
//! A perfect matching is *nice* when it attains the quarter upper bound
//! `(2e - v)/4`; equivalently, for every two matching edges xy and uv the
//! cross pairs agree: xu is an edge iff yv is, and xv is an edge iff yu is.
//! The partner map of a nice matching is an automorphism of order two
//! moving every vertex to a neighbor (an edge-involution), and that
//! correspondence is a bijection, which is what the enumeration here
//! exploits: backtracking over involutions with incremental propagation of
//! the cross-adjacency constraint visits far fewer states than filtering
//! all perfect matchings.

use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matchings::PerfectMatching;

/// An automorphism alpha of order two with `v` adjacent to `alpha(v)` for
/// every vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Involution {
    alpha: Vec<usize>,
}

impl Involution {
    /// Validates all invariants against `g`: fixed-point-free involution,
    /// every orbit pair an edge, adjacency preserved.
    pub fn new(g: &Graph, alpha: Vec<usize>) -> Result<Involution> {
        let n = g.vertex_count();
        if alpha.len() != n {
            return Err(Error::invalid("involution over a different vertex count"));
        }
        for v in 0..n {
            let w = alpha[v];
            if w >= n || w == v || alpha[w] != v {
                return Err(Error::invalid(format!("not a fixed-point-free involution at {v}")));
            }
            if !g.has_edge(v, w) {
                return Err(Error::invalid(format!("{v} and its image {w} are not adjacent")));
            }
        }
        // One direction suffices for a bijection on a finite edge set.
        for e in g.edges() {
            if !g.has_edge(alpha[e.u()], alpha[e.v()]) {
                return Err(Error::invalid(format!("adjacency not preserved at {e}")));
            }
        }
        Ok(Involution { alpha })
    }

    pub fn apply(&self, v: usize) -> usize {
        self.alpha[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.alpha
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Involution({:?})", self.alpha)
    }
}

/// The nice perfect matchings of a graph, canonically ordered. The count is
/// the invariant usually written Phi*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceSet {
    matchings: Vec<PerfectMatching>,
}

impl NiceSet {
    pub fn count(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    pub fn get(&self, i: usize) -> &PerfectMatching {
        &self.matchings[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &PerfectMatching> {
        self.matchings.iter()
    }

    pub fn as_slice(&self) -> &[PerfectMatching] {
        &self.matchings
    }
}

/// The pairwise cross-adjacency test: O(|M|^2) pairs with constant-time
/// adjacency lookups.
pub fn is_nice(g: &Graph, m: &PerfectMatching) -> Result<bool> {
    m.validate_for(g)?;
    let edges = m.edges();
    for i in 0..edges.len() {
        let (x, y) = edges[i].endpoints();
        for e2 in edges.iter().skip(i + 1) {
            let (u, v) = e2.endpoints();
            if g.has_edge(x, u) != g.has_edge(y, v) || g.has_edge(x, v) != g.has_edge(y, u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The edge-involution of a nice matching: the partner map itself.
pub fn involution_of(g: &Graph, m: &PerfectMatching) -> Result<Involution> {
    if !is_nice(g, m)? {
        return Err(Error::NotNice);
    }
    let alpha: Vec<usize> = (0..g.vertex_count()).map(|v| m.partner(v)).collect();
    Involution::new(g, alpha)
}

/// The nice matching of an edge-involution: its orbit pairs.
pub fn matching_of(g: &Graph, alpha: &Involution) -> Result<PerfectMatching> {
    // revalidate: the involution may have been built against another graph
    let alpha = Involution::new(g, alpha.alpha.clone())?;
    PerfectMatching::from_partner(g, alpha.alpha)
}

/// All nice perfect matchings, found by backtracking over edge-involutions.
///
/// The lowest unassigned vertex is paired with each eligible neighbor in
/// ascending order; every assignment is immediately checked against all
/// existing pairs via the cross-adjacency biconditionals, which prunes the
/// search to near the answer size. Works on disconnected graphs as is: pairs
/// never leave a component and cross-component constraints hold vacuously,
/// so the result is exactly the product of the component nice sets.
pub fn enumerate_nice(g: &Graph) -> NiceSet {
    let n = g.vertex_count();
    let mut matchings = Vec::new();
    if n.is_multiple_of(2) {
        let mut alpha = vec![usize::MAX; n];
        let mut assigned: Vec<usize> = Vec::new();
        enumerate_involutions_rec(g, &mut alpha, &mut assigned, &mut matchings);
    }
    matchings.sort();
    NiceSet { matchings }
}

fn enumerate_involutions_rec(
    g: &Graph,
    alpha: &mut Vec<usize>,
    assigned: &mut Vec<usize>,
    out: &mut Vec<PerfectMatching>,
) {
    let v = match alpha.iter().position(|&a| a == usize::MAX) {
        None => {
            if let Ok(m) = PerfectMatching::from_partner(g, alpha.clone()) {
                out.push(m);
            }
            return;
        }
        Some(v) => v,
    };
    'next: for w in g.neighbors(v).iter() {
        if alpha[w] != usize::MAX || w == v {
            continue;
        }
        // propagate both biconditionals against every assigned pair
        for &a in assigned.iter() {
            let b = alpha[a];
            if g.has_edge(v, a) != g.has_edge(w, b) || g.has_edge(v, b) != g.has_edge(w, a) {
                continue 'next;
            }
        }
        alpha[v] = w;
        alpha[w] = v;
        assigned.push(v);
        enumerate_involutions_rec(g, alpha, assigned, out);
        assigned.pop();
        alpha[v] = usize::MAX;
        alpha[w] = usize::MAX;
    }
}

/// Searches for an automorphism of `g` carrying `m1` onto `m2`. Returns the
/// first witness in deterministic order, or None.
///
/// The search maps the lowest unassigned vertex at each step, restricted by
/// degree and neighbor-degree-multiset invariants, full adjacency
/// consistency with the partial map, and partner forcing: mapping v fixes
/// the image of its matching partner.
pub fn are_equivalent(
    g: &Graph,
    m1: &PerfectMatching,
    m2: &PerfectMatching,
) -> Result<Option<Vec<usize>>> {
    m1.validate_for(g)?;
    m2.validate_for(g)?;
    let n = g.vertex_count();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let ndm: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut d: Vec<usize> = g.neighbors(v).iter().map(|w| degree[w]).collect();
            d.sort_unstable();
            d
        })
        .collect();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut state = EquivSearch {
        g,
        m1,
        m2,
        degree: &degree,
        ndm: &ndm,
    };
    if state.extend(&mut phi, &mut used) {
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

struct EquivSearch<'a> {
    g: &'a Graph,
    m1: &'a PerfectMatching,
    m2: &'a PerfectMatching,
    degree: &'a [usize],
    ndm: &'a [Vec<usize>],
}

impl EquivSearch<'_> {
    fn consistent(&self, phi: &[usize], v: usize, w: usize) -> bool {
        if self.degree[v] != self.degree[w] || self.ndm[v] != self.ndm[w] {
            return false;
        }
        for (u, &img) in phi.iter().enumerate() {
            if img == usize::MAX {
                continue;
            }
            if self.g.has_edge(v, u) != self.g.has_edge(w, img) {
                return false;
            }
        }
        true
    }

    fn extend(&mut self, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = match phi.iter().position(|&p| p == usize::MAX) {
            None => return true,
            Some(v) => v,
        };
        let v2 = self.m1.partner(v);
        debug_assert_eq!(phi[v2], usize::MAX, "partners are assigned in pairs");
        for w in 0..phi.len() {
            if used[w] || !self.consistent(phi, v, w) {
                continue;
            }
            let w2 = self.m2.partner(w);
            if used[w2] || w2 == w {
                continue;
            }
            phi[v] = w;
            used[w] = true;
            if self.consistent(phi, v2, w2) {
                phi[v2] = w2;
                used[w2] = true;
                if self.extend(phi, used) {
                    return true;
                }
                phi[v2] = usize::MAX;
                used[w2] = false;
            }
            phi[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
}

/// Partitions a nice set into equivalence classes under graph automorphisms
/// mapping one matching onto the other. Classes are listed by their least
/// member index, members ascending.
pub fn equivalence_classes(g: &Graph, nice: &NiceSet) -> Result<Vec<Vec<usize>>> {
    let n = nice.count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                continue;
            }
            if are_equivalent(g, nice.get(i), nice.get(j))?.is_some() {
                let (lo, hi) = (ri.min(rj), ri.max(rj));
                parent[hi] = lo;
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    Ok(classes.into_values().collect())
}

/// Restriction check behind the succession property: the part of a nice
/// matching inside an induced subgraph stays nice whenever it is perfect
/// there. Errors if M is not nice or the restriction is not a perfect
/// matching of `G[S]`.
pub fn succession_check(g: &Graph, m: &PerfectMatching, s: &VertexSet) -> Result<bool> {
    if !is_nice(g, m)? {
        return Err(Error::NotNice);
    }
    let (h, old_ids) = g.induced_subgraph(s);
    let mut new_of = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in old_ids.iter().enumerate() {
        new_of[old] = new;
    }
    let mut restricted = crate::graph::EdgeSet::new();
    for e in m.edges() {
        if s.contains(e.u()) && s.contains(e.v()) {
            restricted.insert(Edge::new(new_of[e.u()], new_of[e.v()]));
        }
    }
    let m_restricted = PerfectMatching::from_edges(&h, &restricted)
        .map_err(|_| Error::invalid("restriction of M is not a perfect matching of G[S]"))?;
    is_nice(&h, &m_restricted)
}
