//! The `verify` suite: replays the library's reference checks and
//! collects a machine-readable report.
//!
//! Tiers by `--max-dim`: 3 runs the sub-second corpus (small named graphs,
//! light random suites), 4 adds the dimension-4 cube families, the enhanced
//! hypercube analysis, and the full random suites, 5 adds dimension-5 nice
//! enumeration and primality only (no exhaustive anti-forcing at that size).

use std::time::Instant;

use antiforce::{
    bounds, cartesian_product, count_alternating_4cycles, decompose, enumerate_nice,
    enumerate_perfect_matchings, equivalence_classes, expand_i, generate, graph::EdgeSet,
    involution_of, is_antiforcing_set, is_isomorphic, is_nice, is_one_extendable, matching_of,
    matchings::count_perfect_matchings_up_to, max_antiforcing, min_antiforcing,
    minimalize_antiforcing_set, omega_antiforcing_set, prime_by_theta,
    random_connected_bipartite_with_pm, random_extremal, random_graph_with_pm, theta_partition,
    Edge, FamilySpec, Graph, Pairing, PerfectMatching, Primality, SplitMix64, VertexSet,
};

use crate::report::{CheckRecord, Report};

struct Ctx {
    report: Report,
    timings: bool,
}

impl Ctx {
    fn check(&mut self, name: &str, inputs: &str, expected: &str, actual: impl FnOnce() -> String) {
        let started = Instant::now();
        let actual = actual();
        let millis = if self.timings {
            started.elapsed().as_millis()
        } else {
            0
        };
        let pass = expected == actual;
        self.report.push(CheckRecord {
            name: name.to_string(),
            inputs: inputs.to_string(),
            expected: expected.to_string(),
            actual,
            pass,
            millis,
        });
    }
}

fn complete(n: usize) -> Graph {
    generate(&FamilySpec::Complete { n }).unwrap().0
}

fn complete_bipartite(m: usize) -> Graph {
    generate(&FamilySpec::CompleteBipartite { m, n: m }).unwrap().0
}

fn cycle(n: usize) -> Graph {
    generate(&FamilySpec::Cycle { n }).unwrap().0
}

fn hypercube(n: usize) -> (Graph, antiforce::LabeledClasses) {
    generate(&FamilySpec::Hypercube { n }).unwrap()
}

fn folded(n: usize) -> Graph {
    generate(&FamilySpec::FoldedHypercube { n }).unwrap().0
}

fn class_matching(g: &Graph, classes: &antiforce::LabeledClasses, id: usize) -> PerfectMatching {
    PerfectMatching::from_edges(g, classes.get(id).unwrap()).unwrap()
}

fn default_omega_set(g: &Graph, m: &PerfectMatching) -> EdgeSet {
    let mut a = VertexSet::new(g.vertex_count());
    for e in m.edges() {
        a.insert(e.u());
    }
    let omega: Vec<usize> = (1..=m.size()).collect();
    omega_antiforcing_set(g, m, &a, &omega).unwrap()
}

/// Exhaustive subset-search oracle, independent of the branch-and-bound:
/// uniqueness is decided by counting perfect matchings of the residual.
fn brute_force_af(g: &Graph, m: &PerfectMatching) -> (usize, EdgeSet) {
    let candidates: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !m.contains_edge(**e))
        .copied()
        .collect();
    let n = candidates.len();
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        'combos: loop {
            let removed: EdgeSet = idx.iter().map(|&i| candidates[i]).collect();
            let kept: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|e| !removed.contains(e))
                .map(|e| e.endpoints())
                .collect();
            let h = Graph::from_edge_list(g.vertex_count(), &kept).unwrap();
            if count_perfect_matchings_up_to(&h, 2) == 1 {
                return (k, removed);
            }
            if k == 0 {
                break;
            }
            // advance to the next k-combination
            let mut i = k - 1;
            while idx[i] == i + n - k {
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
            }
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("removing every non-matching edge isolates M");
}

pub fn run_paper_suite(
    max_dim: usize,
    seed: u64,
    timings: bool,
) -> anyhow::Result<Report> {
    if !(3..=5).contains(&max_dim) {
        anyhow::bail!("--max-dim must be 3, 4 or 5");
    }
    let mut ctx = Ctx {
        report: Report::new("paper", max_dim, seed),
        timings,
    };
    tier3(&mut ctx, seed);
    if max_dim >= 4 {
        tier4(&mut ctx, seed);
    }
    if max_dim >= 5 {
        tier5(&mut ctx);
    }
    Ok(ctx.report)
}

fn tier3(ctx: &mut Ctx, seed: u64) {
    // bound sanity corpus
    let corpus: Vec<(&str, Graph)> = vec![
        ("K2", complete(2)),
        ("C4", cycle(4)),
        ("K4", complete(4)),
        ("C6", cycle(6)),
        ("K33", complete_bipartite(3)),
        ("K44", complete_bipartite(4)),
        ("Q3", hypercube(3).0),
        (
            "triangle+pendant",
            Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap(),
        ),
    ];
    ctx.check("bounds/sanity", "8-graph corpus, every PM", "ok", || {
        for (name, g) in &corpus {
            let b = bounds(g);
            for m in enumerate_perfect_matchings(g) {
                let af = match min_antiforcing(g, &m) {
                    Ok(r) => r.value,
                    Err(e) => return format!("error on {name}: {e}"),
                };
                if 4 * af as i64 > 2 * g.edge_count() as i64 - g.vertex_count() as i64 {
                    return format!("quarter bound violated on {name}");
                }
                if af > b.cyclomatic {
                    return format!("cyclomatic bound violated on {name}");
                }
            }
        }
        "ok".into()
    });

    // complete graphs
    for (g, name, expected) in [(complete(4), "K4", 2usize), (complete(6), "K6", 6)] {
        ctx.check(&format!("af/{name}"), name, &expected.to_string(), || {
            max_antiforcing(&g).map(|(v, _)| v.to_string()).unwrap_or_else(|e| e.to_string())
        });
        ctx.check(&format!("nice/{name}-all-pms"), name, "true", || {
            enumerate_perfect_matchings(&g)
                .iter()
                .all(|m| {
                    is_nice(&g, m).unwrap() && min_antiforcing(&g, m).unwrap().value == expected
                })
                .to_string()
        });
    }

    // complete bipartite
    for (m_size, af_expected) in [(2usize, 1usize), (3, 3), (4, 6)] {
        let g = complete_bipartite(m_size);
        let name = format!("K{m_size}{m_size}");
        ctx.check(&format!("af/{name}"), &name, &af_expected.to_string(), || {
            max_antiforcing(&g).map(|(v, _)| v.to_string()).unwrap_or_else(|e| e.to_string())
        });
        let factorial: usize = (1..=m_size).product();
        ctx.check(&format!("nice-count/{name}"), &name, &factorial.to_string(), || {
            enumerate_nice(&g).count().to_string()
        });
        ctx.check(&format!("nice/{name}-all-pms"), &name, "true", || {
            enumerate_perfect_matchings(&g)
                .iter()
                .all(|m| is_nice(&g, m).unwrap())
                .to_string()
        });
    }

    // Q3 exactly
    let (q3, q3_classes) = hypercube(3);
    ctx.check("pm-count/Q3", "Q3", "9", || {
        enumerate_perfect_matchings(&q3).len().to_string()
    });
    ctx.check("af/Q3-E1", "Q3, class 1", "4", || {
        let e1 = class_matching(&q3, &q3_classes, 1);
        min_antiforcing(&q3, &e1)
            .map(|r| r.value.to_string())
            .unwrap_or_else(|e| e.to_string())
    });
    ctx.check("Af/Q3", "Q3, all 9 PMs", "4", || {
        max_antiforcing(&q3).map(|(v, _)| v.to_string()).unwrap_or_else(|e| e.to_string())
    });

    // nice counts at dimension <= 3
    for (name, g, expected) in [
        ("Q2", hypercube(2).0, 2usize),
        ("Q3", q3.clone(), 3),
        ("FQ2", folded(2), 3),
        ("FQ3", folded(3), 24),
    ] {
        ctx.check(&format!("nice-count/{name}"), name, &expected.to_string(), || {
            enumerate_nice(&g).count().to_string()
        });
        ctx.check(&format!("bijection/{name}"), name, "ok", || bijection_check(&g));
    }

    // additivity on small products
    let family: Vec<(&str, Graph)> = vec![
        ("K2", complete(2)),
        ("C4", cycle(4)),
        ("K4", complete(4)),
        ("K33", complete_bipartite(3)),
        ("Q3", q3.clone()),
    ];
    ctx.check("additivity/products<=16", "pairs from {K2,C4,K4,K33,Q3}", "ok", || {
        additivity_check(&family, 16)
    });

    // theta and primality at small scale
    ctx.check("theta/C6", "C6", "3", || {
        theta_partition(&cycle(6))
            .map(|t| t.class_count().to_string())
            .unwrap_or_else(|e| e.to_string())
    });
    ctx.check("theta/Q3", "Q3", "ok", || {
        let t = match theta_partition(&q3) {
            Ok(t) => t,
            Err(e) => return e.to_string(),
        };
        if t.class_count() != 3 {
            return format!("{} classes", t.class_count());
        }
        for i in 1..=3 {
            if !t.classes().contains(q3_classes.get(i).unwrap()) {
                return format!("class E{i} not recovered");
            }
        }
        "ok".into()
    });
    ctx.check("prime/K33", "K33", "prime", || {
        match prime_by_theta(&complete_bipartite(3)) {
            Ok(Primality::Prime) => "prime".into(),
            Ok(Primality::Inconclusive) => "inconclusive".into(),
            Err(e) => e.to_string(),
        }
    });

    // construction, light slice
    ctx.check("construct/200-traces", "seeds 0..200, cap 14", "ok", || {
        construction_check(200)
    });
    ctx.check("construct/decompose-identity", "C4, K4, Q3", "ok", || {
        let c4 = cycle(4);
        let mc = enumerate_perfect_matchings(&c4).remove(0);
        let k4 = complete(4);
        let mk = enumerate_perfect_matchings(&k4).remove(0);
        let e1 = class_matching(&q3, &q3_classes, 1);
        decompose_identity_check(&[(c4, mc), (k4, mk), (q3.clone(), e1)])
    });

    // property suites, light slice
    ctx.check("property/minimal-complement", "25 bipartite seeds", "ok", || {
        minimal_complement_check(seed, 25)
    });
    ctx.check("property/parity-obstruction", "25 random seeds", "ok", || {
        obstruction_check(seed, 25)
    });
    ctx.check("property/oracle-equivalence", "25 random seeds", "ok", || {
        oracle_check(seed, 25)
    });
}

fn tier4(ctx: &mut Ctx, seed: u64) {
    // Q4 two-sided certificate
    let (q4, q4_classes) = hypercube(4);
    ctx.check("af/Q4-E1-certificate", "Q4, class 1", "ok", || {
        let e1 = class_matching(&q4, &q4_classes, 1);
        let lb = count_alternating_4cycles(&q4, &e1).unwrap();
        if lb != 12 {
            return format!("lower bound {lb}");
        }
        let s = default_omega_set(&q4, &e1);
        if s.len() != 12 {
            return format!("omega witness size {}", s.len());
        }
        match is_antiforcing_set(&q4, &e1, &s) {
            Ok(true) => "ok".into(),
            Ok(false) => "omega witness not anti-forcing".into(),
            Err(e) => e.to_string(),
        }
    });

    // dimension-4 nice counts, bijection, primality
    let fq4 = folded(4);
    ctx.check("nice-count/Q4", "Q4", "4", || {
        enumerate_nice(&q4).count().to_string()
    });
    ctx.check("nice-count/FQ4", "FQ4", "5", || {
        enumerate_nice(&fq4).count().to_string()
    });
    ctx.check("bijection/Q4", "Q4", "ok", || bijection_check(&q4));
    ctx.check("bijection/FQ4", "FQ4", "ok", || bijection_check(&fq4));
    ctx.check("prime/FQ4", "FQ4", "prime", || match prime_by_theta(&fq4) {
        Ok(Primality::Prime) => "prime".into(),
        Ok(Primality::Inconclusive) => "inconclusive".into(),
        Err(e) => e.to_string(),
    });

    // enhanced hypercube Q_{4,1}
    let (q41, _) = generate(&FamilySpec::EnhancedHypercube { n: 4, k: 1 }).unwrap();
    ctx.check("iso/Q41-FQ3xK2", "Q_{4,1} vs FQ3 x K2", "ok", || {
        let p = cartesian_product(&folded(3), &complete(2));
        match is_isomorphic(&q41, p.graph()) {
            Some(phi) => {
                for e in q41.edges() {
                    if !p.graph().has_edge(phi[e.u()], phi[e.v()]) {
                        return "witness is not an isomorphism".into();
                    }
                }
                "ok".into()
            }
            None => "no isomorphism found".into(),
        }
    });
    ctx.check("nice-count/Q41", "Q_{4,1}", "25", || {
        enumerate_nice(&q41).count().to_string()
    });
    ctx.check("equivalence-classes/Q41", "Q_{4,1} nice set", "2", || {
        let nice = enumerate_nice(&q41);
        equivalence_classes(&q41, &nice)
            .map(|c| c.len().to_string())
            .unwrap_or_else(|e| e.to_string())
    });
    ctx.check("af/Q41-certificate", "Q_{4,1}, first nice PM", "ok", || {
        let nice = enumerate_nice(&q41);
        let m = nice.get(0);
        let lb = count_alternating_4cycles(&q41, m).unwrap();
        if lb != 16 {
            return format!("lower bound {lb}");
        }
        let s = default_omega_set(&q41, m);
        if s.len() != 16 {
            return format!("omega witness size {}", s.len());
        }
        match is_antiforcing_set(&q41, m, &s) {
            Ok(true) => "ok".into(),
            Ok(false) => "omega witness not anti-forcing".into(),
            Err(e) => e.to_string(),
        }
    });

    // additivity up to product size 32
    let family: Vec<(&str, Graph)> = vec![
        ("K2", complete(2)),
        ("C4", cycle(4)),
        ("K4", complete(4)),
        ("K33", complete_bipartite(3)),
        ("Q3", hypercube(3).0),
    ];
    ctx.check("additivity/products<=32", "pairs from {K2,C4,K4,K33,Q3}", "ok", || {
        additivity_check(&family, 32)
    });

    // construction, full count plus the folded-cube build
    ctx.check("construct/1000-traces", "seeds 0..1000, cap 14", "ok", || {
        construction_check(1000)
    });
    ctx.check("construct/FQ3-from-Q3", "Q3 + op_i over complements", "ok", || {
        let (q3, classes) = hypercube(3);
        let e1 = class_matching(&q3, &classes, 1);
        let (step1, m1) =
            match expand_i(&q3, &e1, Edge::new(0, 1), Edge::new(6, 7), Pairing::Crossed) {
                Ok(x) => x,
                Err(e) => return e.to_string(),
            };
        let (built, mf) =
            match expand_i(&step1, &m1, Edge::new(2, 3), Edge::new(4, 5), Pairing::Crossed) {
                Ok(x) => x,
                Err(e) => return e.to_string(),
            };
        if built != folded(3) {
            return "built graph differs from FQ3".into();
        }
        decompose_identity_check(&[(built, mf)])
    });

    // property suites, full counts
    ctx.check("property/minimal-complement-full", "200 bipartite seeds", "ok", || {
        minimal_complement_check(seed, 200)
    });
    ctx.check("property/parity-obstruction-full", "200 random seeds", "ok", || {
        obstruction_check(seed, 200)
    });
    ctx.check("property/oracle-equivalence-full", "200 random seeds", "ok", || {
        oracle_check(seed, 200)
    });
}

fn tier5(ctx: &mut Ctx) {
    let (q5, _) = hypercube(5);
    let fq5 = folded(5);
    ctx.check("nice-count/Q5", "Q5", "5", || {
        enumerate_nice(&q5).count().to_string()
    });
    ctx.check("nice-count/FQ5", "FQ5", "6", || {
        enumerate_nice(&fq5).count().to_string()
    });
    ctx.check("bijection/Q5", "Q5", "ok", || bijection_check(&q5));
    ctx.check("bijection/FQ5", "FQ5", "ok", || bijection_check(&fq5));
    ctx.check("prime/FQ5", "FQ5", "prime", || match prime_by_theta(&fq5) {
        Ok(Primality::Prime) => "prime".into(),
        Ok(Primality::Inconclusive) => "inconclusive".into(),
        Err(e) => e.to_string(),
    });
}

fn bijection_check(g: &Graph) -> String {
    let nice = enumerate_nice(g);
    let mut involutions = Vec::new();
    for m in nice.iter() {
        let alpha = match involution_of(g, m) {
            Ok(a) => a,
            Err(e) => return e.to_string(),
        };
        match matching_of(g, &alpha) {
            Ok(back) if &back == m => {}
            Ok(_) => return "round trip changed the matching".into(),
            Err(e) => return e.to_string(),
        }
        involutions.push(alpha);
    }
    involutions.sort();
    involutions.dedup();
    if involutions.len() != nice.count() {
        return format!("{} involutions for {} nice matchings", involutions.len(), nice.count());
    }
    "ok".into()
}

fn additivity_check(family: &[(&str, Graph)], max_product: usize) -> String {
    for i in 0..family.len() {
        for j in i..family.len() {
            let (n1, g1) = &family[i];
            let (n2, g2) = &family[j];
            if g1.vertex_count() * g2.vertex_count() > max_product {
                continue;
            }
            let p = cartesian_product(g1, g2);
            let phi1 = enumerate_nice(g1);
            let phi2 = enumerate_nice(g2);
            let nice_p = enumerate_nice(p.graph());
            if nice_p.count() != phi1.count() + phi2.count() {
                return format!("additivity fails on {n1} x {n2}");
            }
            let mut lifted: Vec<PerfectMatching> = phi1
                .iter()
                .map(|m| p.lift_factor1_matching(m).unwrap())
                .chain(phi2.iter().map(|m| p.lift_factor2_matching(m).unwrap()))
                .collect();
            lifted.sort();
            lifted.dedup();
            if lifted != nice_p.as_slice().to_vec() {
                return format!("lift image differs on {n1} x {n2}");
            }
        }
    }
    "ok".into()
}

fn construction_check(count: u64) -> String {
    for seed in 0..count {
        let steps = 3 + (seed % 6) as usize;
        let trace = random_extremal(seed, steps, 14);
        let (g, m) = (trace.graph(), trace.matching());
        match is_nice(g, m) {
            Ok(true) => {}
            Ok(false) => return format!("seed {seed}: tracked matching not nice"),
            Err(e) => return format!("seed {seed}: {e}"),
        }
        if g.is_connected() && g.vertex_count() >= 4 && !is_one_extendable(g) {
            return format!("seed {seed}: not 1-extendable");
        }
    }
    "ok".into()
}

fn decompose_identity_check(cases: &[(Graph, PerfectMatching)]) -> String {
    for (g, m) in cases {
        let trace = match decompose(g, m) {
            Ok(t) => t,
            Err(e) => return e.to_string(),
        };
        match trace.replay() {
            Ok((replayed, _)) if &replayed == g => {}
            Ok(_) => return "replay differs from the original".into(),
            Err(e) => return e.to_string(),
        }
    }
    "ok".into()
}

fn minimal_complement_check(seed: u64, count: u64) -> String {
    for i in 0..count {
        let mut rng = SplitMix64::new(seed + i);
        let half = 2 + (i % 5) as usize;
        let (g, m) = random_connected_bipartite_with_pm(&mut rng, half, 1, 3);
        let all: EdgeSet = g
            .edges()
            .iter()
            .filter(|e| !m.contains_edge(**e))
            .copied()
            .collect();
        let minimal = match minimalize_antiforcing_set(&g, &m, &all) {
            Ok(s) => s,
            Err(e) => return format!("seed {i}: {e}"),
        };
        let complement: EdgeSet = all.difference(&minimal).copied().collect();
        match is_antiforcing_set(&g, &m, &complement) {
            Ok(true) => {}
            Ok(false) => return format!("seed {i}: complement not anti-forcing"),
            Err(e) => return format!("seed {i}: {e}"),
        }
    }
    "ok".into()
}

fn obstruction_check(seed: u64, count: u64) -> String {
    for i in 0..count {
        let mut rng = SplitMix64::new(seed + 1_000_000 + i);
        let v = 4 + 2 * (i % 4) as usize;
        let (g, _) = random_graph_with_pm(&mut rng, v, 1, 3);
        let b = bounds(&g);
        if !b.degree_parity_obstruction {
            continue;
        }
        let (af_max, _) = match max_antiforcing(&g) {
            Ok(x) => x,
            Err(e) => return format!("seed {i}: {e}"),
        };
        // strict: 4*Af < 2e - v
        if 4 * af_max as i64 >= 2 * g.edge_count() as i64 - g.vertex_count() as i64 {
            return format!("seed {i}: no strict gap under obstruction");
        }
    }
    "ok".into()
}

fn oracle_check(seed: u64, count: u64) -> String {
    for i in 0..count {
        let mut rng = SplitMix64::new(seed + 2_000_000 + i);
        let v = 4 + 2 * (i % 4) as usize;
        let (g, m) = random_graph_with_pm(&mut rng, v, 1, 3);
        if g.edge_count() - m.size() > 16 {
            continue;
        }
        let fast = match min_antiforcing(&g, &m) {
            Ok(r) => r,
            Err(e) => return format!("seed {i}: {e}"),
        };
        let (value, witness) = brute_force_af(&g, &m);
        if fast.value != value {
            return format!("seed {i}: value {} vs oracle {value}", fast.value);
        }
        if fast.witness != witness {
            return format!("seed {i}: witness differs from lexicographic oracle");
        }
    }
    "ok".into()
}
