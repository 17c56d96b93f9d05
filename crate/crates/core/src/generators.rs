//! Deterministic constructors for the named graph families and their
//! distinguished edge classes.
//!
//! Hypercube-family vertices follow one fixed bit convention: the vertex
//! with string x1..xn is the integer whose bit (i-1) equals xi. The i-edge
//! class `E_i` therefore consists of the edges flipping bit i-1, and the
//! complementary class pairs every vertex with its n-bit complement.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};

/// Largest accepted hypercube-family dimension. Adjacency bitsets are
/// quadratic in the vertex count, so 2^12 vertices is the documented ceiling.
pub const MAX_DIMENSION: usize = 12;

/// A named family plus its integer parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Complete graph on `n` vertices.
    Complete { n: usize },
    /// Complete bipartite graph with parts of size `m` and `n`.
    CompleteBipartite { m: usize, n: usize },
    /// Cycle on `n >= 3` vertices.
    Cycle { n: usize },
    /// Path on `n >= 1` vertices.
    Path { n: usize },
    /// Hypercube of dimension `n >= 1`.
    Hypercube { n: usize },
    /// Folded hypercube: hypercube plus all complementary edges.
    FoldedHypercube { n: usize },
    /// Enhanced hypercube `Q_{n,k}` for `0 <= k <= n-1`: hypercube plus the
    /// edges joining each vertex to the complement of its first n-k bits.
    EnhancedHypercube { n: usize, k: usize },
}

/// Distinguished edge classes of a generated graph, keyed by class id.
/// Hypercube families get classes 1..=n (the i-edges) and, when the
/// complement edges are new, class n+1. Other families have no classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabeledClasses {
    classes: BTreeMap<usize, EdgeSet>,
}

impl LabeledClasses {
    pub fn get(&self, id: usize) -> Option<&EdgeSet> {
        self.classes.get(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &EdgeSet)> {
        self.classes.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Sidecar text format: one line `class i: u v, u v, ...` per class.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, edges) in &self.classes {
            let body: Vec<String> = edges.iter().map(|e| format!("{} {}", e.u(), e.v())).collect();
            out.push_str(&format!("class {}: {}\n", id, body.join(", ")));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<LabeledClasses> {
        let mut classes = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix("class ")
                .ok_or_else(|| Error::parse(lineno, "expected `class i: ...`"))?;
            let (id_part, edges_part) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno, "expected `class i: ...`"))?;
            let id: usize = id_part
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno, "bad class id"))?;
            let mut set = EdgeSet::new();
            for tok in edges_part.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let mut it = tok.split_whitespace();
                let u: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad edge"))?;
                let v: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad edge"))?;
                if u == v {
                    return Err(Error::parse(lineno, "loop edge in class"));
                }
                set.insert(Edge::new(u, v));
            }
            classes.insert(id, set);
        }
        Ok(LabeledClasses { classes })
    }
}

/// Number of differing bits between `x` and `y` read as n-bit strings.
pub fn hamming_distance(x: usize, y: usize, n: usize) -> usize {
    debug_assert!(x < (1 << n) && y < (1 << n));
    ((x ^ y) & ((1usize << n) - 1)).count_ones() as usize
}

/// Builds the requested family together with its labeled edge classes.
pub fn generate(spec: &FamilySpec) -> Result<(Graph, LabeledClasses)> {
    match *spec {
        FamilySpec::Complete { n } => {
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    pairs.push((u, v));
                }
            }
            Ok((Graph::from_edge_list(n, &pairs)?, LabeledClasses::default()))
        }
        FamilySpec::CompleteBipartite { m, n } => {
            let mut pairs = Vec::new();
            for u in 0..m {
                for v in 0..n {
                    pairs.push((u, m + v));
                }
            }
            Ok((Graph::from_edge_list(m + n, &pairs)?, LabeledClasses::default()))
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(Error::invalid("cycle needs n >= 3"));
            }
            let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Ok((Graph::from_edge_list(n, &pairs)?, LabeledClasses::default()))
        }
        FamilySpec::Path { n } => {
            if n == 0 {
                return Err(Error::invalid("path needs n >= 1"));
            }
            let pairs: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Ok((Graph::from_edge_list(n, &pairs)?, LabeledClasses::default()))
        }
        FamilySpec::Hypercube { n } => {
            check_dimension(n)?;
            hypercube_family(n, None)
        }
        FamilySpec::FoldedHypercube { n } => {
            check_dimension(n)?;
            // complement of all n bits
            hypercube_family(n, Some((1usize << n) - 1))
        }
        FamilySpec::EnhancedHypercube { n, k } => {
            check_dimension(n)?;
            if k >= n {
                return Err(Error::invalid(format!(
                    "enhanced hypercube needs 0 <= k <= n-1, got k={k}, n={n}"
                )));
            }
            // flip the first n-k string positions = low n-k bits
            hypercube_family(n, Some((1usize << (n - k)) - 1))
        }
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("hypercube dimension must be >= 1"));
    }
    if n > MAX_DIMENSION {
        return Err(Error::invalid(format!(
            "hypercube dimension {n} exceeds the supported maximum {MAX_DIMENSION}"
        )));
    }
    Ok(())
}

/// Hypercube on 2^n vertices, optionally augmented with the involution
/// pairing x with x ^ mask. When the mask edges coincide with an existing
/// i-edge class (mask with a single bit) no extra class is emitted, so
/// `Q_{n,n-1}` equals `Q_n` as a labeled graph.
fn hypercube_family(n: usize, mask: Option<usize>) -> Result<(Graph, LabeledClasses)> {
    let size = 1usize << n;
    let mut pairs = Vec::new();
    let mut classes = BTreeMap::new();
    for i in 1..=n {
        let bit = 1usize << (i - 1);
        let mut class = EdgeSet::new();
        for x in 0..size {
            if x & bit == 0 {
                pairs.push((x, x | bit));
                class.insert(Edge::new(x, x | bit));
            }
        }
        classes.insert(i, class);
    }
    if let Some(mask) = mask {
        if mask.count_ones() > 1 {
            let mut class = EdgeSet::new();
            for x in 0..size {
                let y = x ^ mask;
                if x < y {
                    pairs.push((x, y));
                    class.insert(Edge::new(x, y));
                }
            }
            classes.insert(n + 1, class);
        }
    }
    let g = Graph::from_edge_list(size, &pairs)?;
    Ok((g, LabeledClasses { classes }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_counts() {
        let (g, classes) = generate(&FamilySpec::Hypercube { n: 3 }).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(classes.len(), 3);
        for i in 1..=3 {
            assert_eq!(classes.get(i).unwrap().len(), 4);
        }
        // d(000, 111) = 3
        let d = g.all_pairs_distances();
        assert_eq!(d.get(0, 7), 3);
    }

    #[test]
    fn folded_hypercube_counts_and_parity() {
        let (g, classes) = generate(&FamilySpec::FoldedHypercube { n: 4 }).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 40); // 32 cube edges + 8 complementary
        assert_eq!(classes.get(5).unwrap().len(), 8);
        // FQ_n bipartite iff n odd
        assert!(g.bipartition().is_none());
        let (g3, _) = generate(&FamilySpec::FoldedHypercube { n: 3 }).unwrap();
        assert!(g3.bipartition().is_some());
    }

    #[test]
    fn classes_partition_edges_and_are_matchings() {
        for spec in [
            FamilySpec::Hypercube { n: 4 },
            FamilySpec::Hypercube { n: 5 },
            FamilySpec::FoldedHypercube { n: 4 },
            FamilySpec::FoldedHypercube { n: 5 },
            FamilySpec::EnhancedHypercube { n: 4, k: 2 },
            FamilySpec::EnhancedHypercube { n: 5, k: 2 },
        ] {
            let (g, classes) = generate(&spec).unwrap();
            let mut union = EdgeSet::new();
            let mut total = 0;
            for (_, class) in classes.iter() {
                total += class.len();
                union.extend(class.iter().copied());
                // each class is a perfect matching of the host graph
                let mut covered = vec![false; g.vertex_count()];
                for e in class {
                    assert!(!covered[e.u()] && !covered[e.v()]);
                    covered[e.u()] = true;
                    covered[e.v()] = true;
                }
                assert!(covered.iter().all(|&c| c));
            }
            assert_eq!(total, g.edge_count(), "classes overlap in {spec:?}");
            assert_eq!(union, g.edge_set(), "classes miss edges in {spec:?}");
        }
    }

    #[test]
    fn enhanced_special_cases_equal_labeled_families() {
        // Q_{n,n-1} = Q_n and Q_{n,0} = FQ_n, classes included
        let (q4, cq) = generate(&FamilySpec::Hypercube { n: 4 }).unwrap();
        let (e3, ce) = generate(&FamilySpec::EnhancedHypercube { n: 4, k: 3 }).unwrap();
        assert_eq!(q4, e3);
        assert_eq!(cq, ce);
        let (fq4, cf) = generate(&FamilySpec::FoldedHypercube { n: 4 }).unwrap();
        let (e0, c0) = generate(&FamilySpec::EnhancedHypercube { n: 4, k: 0 }).unwrap();
        assert_eq!(fq4, e0);
        assert_eq!(cf, c0);
    }

    #[test]
    fn enhanced_rejects_bad_k() {
        assert!(generate(&FamilySpec::EnhancedHypercube { n: 4, k: 4 }).is_err());
    }

    #[test]
    fn small_family_shapes() {
        let (p1, _) = generate(&FamilySpec::Path { n: 1 }).unwrap();
        assert_eq!((p1.vertex_count(), p1.edge_count()), (1, 0));
        let (p4, _) = generate(&FamilySpec::Path { n: 4 }).unwrap();
        assert_eq!(p4.edge_count(), 3);
        assert_eq!(p4.degree(0), 1);
        assert_eq!(p4.degree(1), 2);
        let (c5, _) = generate(&FamilySpec::Cycle { n: 5 }).unwrap();
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
        assert!(c5.bipartition().is_none());
        let (k23, _) = generate(&FamilySpec::CompleteBipartite { m: 2, n: 3 }).unwrap();
        assert_eq!(k23.edge_count(), 6);
        let (x, y) = k23.bipartition().unwrap();
        assert_eq!((x.len(), y.len()), (2, 3));
        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
        assert!(generate(&FamilySpec::Path { n: 0 }).is_err());
        assert!(generate(&FamilySpec::Hypercube { n: 13 }).is_err());
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_distance(0b000, 0b111, 3), 3);
        assert_eq!(hamming_distance(0b0101, 0b0101, 4), 0);
        assert_eq!(hamming_distance(0b0101, 0b0110, 4), 2);
    }

    #[test]
    fn folded_girth_and_odd_cycle_length() {
        // FQ_4: girth 4; shortest odd cycle has length n+1 = 5.
        // FQ_5: girth 4 (n >= 4 folded cubes have girth 4).
        for n in [4usize, 5] {
            let (g, _) = generate(&FamilySpec::FoldedHypercube { n }).unwrap();
            let (girth, odd) = girth_and_odd_girth(&g);
            assert_eq!(girth, Some(4), "FQ_{n} girth");
            if n % 2 == 0 {
                assert_eq!(odd, Some(n + 1), "FQ_{n} odd girth");
            } else {
                assert_eq!(odd, None, "FQ_{n} should be bipartite");
            }
        }
    }

    /// Exact shortest cycle lengths (overall and odd), independent of any
    /// distance machinery elsewhere in the crate. Girth: every shortest
    /// cycle contains an edge, so it is 1 + the endpoint distance after
    /// deleting that edge. Odd girth: BFS on the parity double cover gives
    /// the shortest odd closed walk through each root, and a shortest odd
    /// closed walk is an odd cycle.
    fn girth_and_odd_girth(g: &Graph) -> (Option<usize>, Option<usize>) {
        let n = g.vertex_count();
        let mut girth: Option<usize> = None;
        for e in g.edges() {
            let rest: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|f| *f != e)
                .map(|f| f.endpoints())
                .collect();
            let h = Graph::from_edge_list(n, &rest).unwrap();
            let d = h.all_pairs_distances().get(e.u(), e.v());
            if d != u32::MAX {
                let len = d as usize + 1;
                if girth.is_none_or(|b| len < b) {
                    girth = Some(len);
                }
            }
        }
        let mut odd: Option<usize> = None;
        for root in 0..n {
            // states (vertex, parity); dist to (root, 1) = shortest odd
            // closed walk through root
            let mut dist = vec![[usize::MAX; 2]; n];
            dist[root][0] = 0;
            let mut queue = std::collections::VecDeque::from([(root, 0usize)]);
            while let Some((v, p)) = queue.pop_front() {
                for w in g.neighbors(v).iter() {
                    if dist[w][1 - p] == usize::MAX {
                        dist[w][1 - p] = dist[v][p] + 1;
                        queue.push_back((w, 1 - p));
                    }
                }
            }
            if dist[root][1] != usize::MAX && odd.is_none_or(|b| dist[root][1] < b) {
                odd = Some(dist[root][1]);
            }
        }
        (girth, odd)
    }
}
