//! Exact combinatorics of anti-forcing numbers and nice perfect matchings.
//!
//! The crate computes, at desk scale and with exact arithmetic throughout:
//!
//! * anti-forcing numbers `af(G, M)` and `Af(G)` with certified witnesses,
//!   the quarter bound `(2e - v)/4`, and the omega construction of witness
//!   sets ([`antiforcing`]);
//! * recognition and enumeration of nice perfect matchings, their
//!   edge-involutions, and equivalence under automorphisms ([`nice`]);
//! * the two expansion operations generating all extremal graphs from K2,
//!   with replayable construction traces ([`construction`]);
//! * Cartesian products, the Theta* edge partition, and the single-class
//!   primality certificate ([`products`]);
//! * generators for the hypercube, folded hypercube, and enhanced
//!   hypercube families with their labeled edge classes ([`generators`]).
//!
//! Everything is deterministic: set iteration follows ascending ids,
//! enumerations follow canonical orders, and seeded randomness uses a
//! pinned PRNG so results replay across runs and machines.
//!
//! ```
//! use antiforce::{enumerate_nice, generate, min_antiforcing, FamilySpec, PerfectMatching};
//!
//! // the 3-cube: each coordinate direction is a perfect matching
//! let (q3, classes) = generate(&FamilySpec::Hypercube { n: 3 })?;
//! let e1 = PerfectMatching::from_edges(&q3, classes.get(1).unwrap())?;
//!
//! // its anti-forcing number attains the quarter bound (2e - v)/4 = 4,
//! // and the three direction matchings are the only nice ones
//! assert_eq!(min_antiforcing(&q3, &e1)?.value, 4);
//! assert_eq!(enumerate_nice(&q3).count(), 3);
//! # Ok::<(), antiforce::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod antiforcing;
pub mod bitset;
pub mod construction;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matchings;
pub mod nice;
pub mod products;
pub mod rng;

pub use antiforcing::{
    bounds, is_antiforcing_set, max_antiforcing, max_antiforcing_with_threads,
    min_antiforcing, minimalize_antiforcing_set, omega_antiforcing_set, AfResult, BoundsReport,
};
pub use bitset::VertexSet;
pub use construction::{
    decompose, expand_i, expand_ii, is_one_extendable, random_connected_bipartite_with_pm,
    random_extremal, random_graph_with_pm, ConstructionTrace, ExpansionStep, Pairing,
};
pub use error::{Error, Result};
pub use generators::{generate, hamming_distance, FamilySpec, LabeledClasses};
pub use graph::{is_isometric_subgraph, DistanceMatrix, Edge, EdgeSet, Graph};
pub use matchings::{
    count_alternating_4cycles, enumerate_perfect_matchings, find_alternating_cycle,
    has_unique_pm, pm_containing_edge, AlternatingCycle, PerfectMatching,
};
pub use nice::{
    are_equivalent, enumerate_nice, equivalence_classes, involution_of, is_nice, matching_of,
    succession_check, Involution, NiceSet,
};
pub use products::{
    cartesian_product, is_isomorphic, prime_by_theta, theta_partition, Factor, Primality,
    ProductGraph, ThetaPartition, ThetaWitness,
};
pub use rng::SplitMix64;
