//! Cartesian products, layers, the distance-based edge relation Theta and
//! its transitive closure, the single-class primality certificate, and
//! isomorphism search.
//!
//! Product vertex ids are row-major: `(x, u) <-> x * v(G2) + u`, fixed so
//! the matching lifts are reproducible bit for bit.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::matchings::PerfectMatching;

/// A Cartesian product together with its factors and coordinate maps.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    graph: Graph,
    factor1: Graph,
    factor2: Graph,
}

/// Which factor a layer copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Builds `G1 x G2` under the row-major id convention. Edge count is
/// `e1*v2 + v1*e2`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> ProductGraph {
    let (v1, v2) = (g1.vertex_count(), g2.vertex_count());
    let mut pairs = Vec::with_capacity(g1.edge_count() * v2 + v1 * g2.edge_count());
    for e in g1.edges() {
        for u in 0..v2 {
            pairs.push((e.u() * v2 + u, e.v() * v2 + u));
        }
    }
    for x in 0..v1 {
        for e in g2.edges() {
            pairs.push((x * v2 + e.u(), x * v2 + e.v()));
        }
    }
    let graph = Graph::from_edge_list(v1 * v2, &pairs).expect("product of valid graphs");
    ProductGraph {
        graph,
        factor1: g1.clone(),
        factor2: g2.clone(),
    }
}

impl ProductGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn factor1(&self) -> &Graph {
        &self.factor1
    }

    pub fn factor2(&self) -> &Graph {
        &self.factor2
    }

    pub fn id_of(&self, x: usize, u: usize) -> usize {
        x * self.factor2.vertex_count() + u
    }

    pub fn coords_of(&self, id: usize) -> (usize, usize) {
        let v2 = self.factor2.vertex_count();
        (id / v2, id % v2)
    }

    /// The layer of the chosen factor through `anchor` (a product vertex
    /// id): the induced copy of that factor. The induced subgraph is
    /// checked to coincide with the factor under the coordinate remap.
    pub fn layer(&self, which: Factor, anchor: usize) -> Result<(VertexSet, Graph)> {
        let n = self.graph.vertex_count();
        if anchor >= n {
            return Err(Error::invalid(format!("anchor {anchor} outside the product")));
        }
        let (x0, u0) = self.coords_of(anchor);
        let ids: Vec<usize> = match which {
            Factor::First => (0..self.factor1.vertex_count())
                .map(|x| self.id_of(x, u0))
                .collect(),
            Factor::Second => (0..self.factor2.vertex_count())
                .map(|u| self.id_of(x0, u))
                .collect(),
        };
        let set = VertexSet::from_ids(n, ids);
        let (sub, _) = self.graph.induced_subgraph(&set);
        let factor = match which {
            Factor::First => &self.factor1,
            Factor::Second => &self.factor2,
        };
        assert_eq!(&sub, factor, "a layer must copy its factor exactly");
        Ok((set, sub))
    }

    /// Copies a matching of the first factor into every first-factor layer.
    pub fn lift_factor1_matching(&self, m1: &PerfectMatching) -> Result<PerfectMatching> {
        m1.validate_for(&self.factor1)?;
        let mut edges = EdgeSet::new();
        for e in m1.edges() {
            for u in 0..self.factor2.vertex_count() {
                edges.insert(Edge::new(self.id_of(e.u(), u), self.id_of(e.v(), u)));
            }
        }
        PerfectMatching::from_edges(&self.graph, &edges)
    }

    /// Copies a matching of the second factor into every second-factor
    /// layer.
    pub fn lift_factor2_matching(&self, m2: &PerfectMatching) -> Result<PerfectMatching> {
        m2.validate_for(&self.factor2)?;
        let mut edges = EdgeSet::new();
        for e in m2.edges() {
            for x in 0..self.factor1.vertex_count() {
                edges.insert(Edge::new(self.id_of(x, e.u()), self.id_of(x, e.v())));
            }
        }
        PerfectMatching::from_edges(&self.graph, &edges)
    }
}

/// The distance quadruple that related two edges when their classes merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaWitness {
    pub e: Edge,
    pub f: Edge,
    /// `[d(x,u), d(y,v), d(x,v), d(y,u)]` for e = xy, f = uv.
    pub distances: [u32; 4],
}

/// The partition of the edge set under the transitive closure of Theta.
#[derive(Clone, Debug)]
pub struct ThetaPartition {
    class_of: Vec<usize>,
    classes: Vec<EdgeSet>,
    witnesses: Vec<ThetaWitness>,
}

impl ThetaPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes ordered by their least canonical edge.
    pub fn classes(&self) -> &[EdgeSet] {
        &self.classes
    }

    /// Class id of the i-th canonical edge.
    pub fn class_of_edge_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// The distance quadruples recorded at every union-find merge.
    pub fn witnesses(&self) -> &[ThetaWitness] {
        &self.witnesses
    }
}

/// Two edges xy, uv are related when `d(x,u) + d(y,v) != d(x,v) + d(y,u)`.
/// Classes are the transitive closure, computed by a pairwise scan with a
/// union-find merge. Requires a connected graph (the relation reads finite
/// distances).
pub fn theta_partition(g: &Graph) -> Result<ThetaPartition> {
    if !g.is_connected() {
        return Err(Error::invalid("theta relation needs a connected graph"));
    }
    let dist = g.all_pairs_distances();
    let edges = g.edges();
    let m = edges.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut witnesses = Vec::new();
    for i in 0..m {
        let (x, y) = edges[i].endpoints();
        for j in (i + 1)..m {
            let (u, v) = edges[j].endpoints();
            let q = [
                dist.get(x, u),
                dist.get(y, v),
                dist.get(x, v),
                dist.get(y, u),
            ];
            if q[0] + q[1] != q[2] + q[3] {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                    witnesses.push(ThetaWitness {
                        e: edges[i],
                        f: edges[j],
                        distances: q,
                    });
                }
            }
        }
    }
    // class ids in order of least member edge
    let mut class_of = vec![usize::MAX; m];
    let mut classes: Vec<EdgeSet> = Vec::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        if class_of[r] == usize::MAX {
            class_of[r] = classes.len();
            classes.push(EdgeSet::new());
        }
        class_of[i] = class_of[r];
        classes[class_of[r]].insert(edges[i]);
    }
    Ok(ThetaPartition {
        class_of,
        classes,
        witnesses,
    })
}

/// Verdict of the single-class primality certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    /// All edges fall in one Theta* class, so the graph is prime under the
    /// Cartesian product.
    Prime,
    /// More than one class; the certificate is sufficient only, so nothing
    /// follows.
    Inconclusive,
}

pub fn prime_by_theta(g: &Graph) -> Result<Primality> {
    if g.vertex_count() < 2 {
        return Err(Error::invalid("primality needs a nontrivial graph"));
    }
    let partition = theta_partition(g)?;
    Ok(if partition.class_count() == 1 {
        Primality::Prime
    } else {
        Primality::Inconclusive
    })
}

/// Backtracking isomorphism search with degree and neighbor-degree-multiset
/// refinement. Returns the first witness (a map from `g` ids to `h` ids) in
/// deterministic order, or None.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.vertex_count();
    let invariants = |graph: &Graph| -> (Vec<usize>, Vec<Vec<usize>>) {
        let degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
        let ndm: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut d: Vec<usize> = graph.neighbors(v).iter().map(|w| degree[w]).collect();
                d.sort_unstable();
                d
            })
            .collect();
        (degree, ndm)
    };
    let (dg, ng) = invariants(g);
    let (dh, nh) = invariants(h);
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let search = IsoSearch {
        g,
        h,
        dg: &dg,
        ng: &ng,
        dh: &dh,
        nh: &nh,
    };
    if search.extend(&mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

struct IsoSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    dg: &'a [usize],
    ng: &'a [Vec<usize>],
    dh: &'a [usize],
    nh: &'a [Vec<usize>],
}

impl IsoSearch<'_> {
    fn extend(&self, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = match phi.iter().position(|&p| p == usize::MAX) {
            None => return true,
            Some(v) => v,
        };
        'cand: for w in 0..phi.len() {
            if used[w] || self.dg[v] != self.dh[w] || self.ng[v] != self.nh[w] {
                continue;
            }
            for (u, &img) in phi.iter().enumerate() {
                if img != usize::MAX && self.g.has_edge(v, u) != self.h.has_edge(w, img) {
                    continue 'cand;
                }
            }
            phi[v] = w;
            used[w] = true;
            if self.extend(phi, used) {
                return true;
            }
            phi[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
}
