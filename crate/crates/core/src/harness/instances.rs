//! Instance streams for experiments: exhaustive enumeration of small
//! objects and seeded random generation. Random generators are pure
//! functions of their parameters and seed, so every run is reproducible.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cnf::{CnfFormula, Literal};
use crate::flow::{FlowArc, FlowNetwork, ORACLE_ARC_GUARD};
use crate::graph::UndirectedGraph;

/// Exhaustive graph enumeration stops here: 2^C(7,2) = 2 million labeled
/// graphs is the most a desk-scale sweep can digest.
pub const MAX_EXHAUSTIVE_VERTICES: u32 = 7;

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error(
        "exhaustive enumeration supports at most {MAX_EXHAUSTIVE_VERTICES} vertices, got {0}"
    )]
    TooManyVertices(u32),
    #[error("exhaustive enumeration needs at least one vertex")]
    NoVertices,
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("{what} must be at least {need}, got {got}")]
    TooSmall {
        what: &'static str,
        need: u32,
        got: u32,
    },
}

fn canonical_pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect()
}

/// Every labeled graph on exactly `n` vertices, one per subset of the
/// C(n,2) vertex pairs, in ascending bitmask order over the canonical pair
/// list.
pub fn enumerate_graphs(
    n: u32,
) -> Result<impl Iterator<Item = UndirectedGraph>, InstanceError> {
    if n == 0 {
        return Err(InstanceError::NoVertices);
    }
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(InstanceError::TooManyVertices(n));
    }
    let pairs = canonical_pairs(n);
    let masks = 0u32..(1u32 << pairs.len());
    Ok(masks.map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(bit, _)| (mask >> bit) & 1 == 1)
            .map(|(_, &e)| e);
        UndirectedGraph::new(n, edges).expect("canonical pairs are valid edges")
    }))
}

/// Every labeled graph with 1 to `max_vertices` vertices.
pub fn enumerate_graphs_up_to(
    max_vertices: u32,
) -> Result<impl Iterator<Item = UndirectedGraph>, InstanceError> {
    if max_vertices == 0 {
        return Err(InstanceError::NoVertices);
    }
    if max_vertices > MAX_EXHAUSTIVE_VERTICES {
        return Err(InstanceError::TooManyVertices(max_vertices));
    }
    Ok((1..=max_vertices).flat_map(|n| enumerate_graphs(n).expect("bounds already checked")))
}

/// An Erdos-Renyi draw: each vertex pair becomes an edge independently with
/// probability `p`. Identical parameters and seed yield the identical graph.
pub fn generate_random_graph(
    n: u32,
    p: f64,
    seed: u64,
) -> Result<UndirectedGraph, InstanceError> {
    if n == 0 {
        return Err(InstanceError::TooSmall {
            what: "vertex count",
            need: 1,
            got: 0,
        });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(InstanceError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = canonical_pairs(n)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect::<Vec<_>>();
    Ok(UndirectedGraph::new(n, edges).expect("canonical pairs are valid edges"))
}

/// A random directed network for flow experiments: node 0 is the source,
/// the last node the sink, and up to `max_arcs` arcs connect distinct
/// random endpoints with capacities in 1..=10 and interdiction costs in
/// 1..=3. Roughly 70% of arcs are interdictable; `max_arcs` is clamped so
/// the interdiction oracle's enumeration guard can never trip.
pub fn generate_random_network(
    max_nodes: u32,
    max_arcs: u32,
    seed: u64,
) -> Result<FlowNetwork, InstanceError> {
    if max_nodes < 2 {
        return Err(InstanceError::TooSmall {
            what: "node count",
            need: 2,
            got: max_nodes,
        });
    }
    if max_arcs == 0 {
        return Err(InstanceError::TooSmall {
            what: "arc count",
            need: 1,
            got: 0,
        });
    }
    let max_arcs = max_arcs.min(ORACLE_ARC_GUARD as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = rng.gen_range(2..=max_nodes);
    let arc_count = rng.gen_range(1..=max_arcs);
    let arcs = (0..arc_count)
        .map(|_| {
            let tail = rng.gen_range(0..nodes);
            let head = loop {
                let h = rng.gen_range(0..nodes);
                if h != tail {
                    break h;
                }
            };
            FlowArc {
                tail,
                head,
                capacity: rng.gen_range(1..=10),
                interdiction_cost: rng.gen_range(1..=3),
                interdictable: rng.gen_bool(0.7),
            }
        })
        .collect::<Vec<_>>();
    Ok(FlowNetwork::new(nodes, 0, nodes - 1, arcs).expect("endpoints drawn in range"))
}

/// A random 3-CNF formula: each clause picks three distinct variables and
/// independent polarities.
pub fn generate_random_formula(
    variables: u32,
    clauses: u32,
    seed: u64,
) -> Result<CnfFormula, InstanceError> {
    if variables < 3 {
        return Err(InstanceError::TooSmall {
            what: "variable count",
            need: 3,
            got: variables,
        });
    }
    if clauses == 0 {
        return Err(InstanceError::TooSmall {
            what: "clause count",
            need: 1,
            got: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clause_list = (0..clauses)
        .map(|_| {
            let mut vars = Vec::with_capacity(3);
            while vars.len() < 3 {
                let v = rng.gen_range(1..=variables);
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            let mut lit = |v| {
                if rng.gen_bool(0.5) {
                    Literal::negative(v)
                } else {
                    Literal::positive(v)
                }
            };
            [lit(vars[0]), lit(vars[1]), lit(vars[2])]
        })
        .collect::<Vec<_>>();
    Ok(CnfFormula::new(variables, clause_list).expect("distinct variables per clause"))
}

/// Every 3-literal clause over `variables` variables, in canonical order:
/// variable triples ascending, then the eight polarity patterns.
pub fn enumerate_clauses(variables: u32) -> Vec<[Literal; 3]> {
    let mut out = Vec::new();
    for trio in (1..=variables).combinations(3) {
        for bits in 0..8u32 {
            let lit = |var, neg| {
                if neg {
                    Literal::negative(var)
                } else {
                    Literal::positive(var)
                }
            };
            out.push([
                lit(trio[0], bits & 4 != 0),
                lit(trio[1], bits & 2 != 0),
                lit(trio[2], bits & 1 != 0),
            ]);
        }
    }
    out
}

/// Every formula with 1 to `max_clauses` clauses over `variables`
/// variables, deduplicated up to clause order (clause multisets). Clause
/// order affects neither satisfiability nor the coupling-graph translation,
/// so one representative per multiset covers the space.
pub fn enumerate_formulas(
    variables: u32,
    max_clauses: u32,
) -> Result<impl Iterator<Item = CnfFormula>, InstanceError> {
    if variables < 3 {
        return Err(InstanceError::TooSmall {
            what: "variable count",
            need: 3,
            got: variables,
        });
    }
    if max_clauses == 0 {
        return Err(InstanceError::TooSmall {
            what: "clause count",
            need: 1,
            got: 0,
        });
    }
    let universe = enumerate_clauses(variables);
    Ok((1..=max_clauses as usize).flat_map(move |m| {
        universe
            .clone()
            .into_iter()
            .combinations_with_replacement(m)
            .map(move |clauses| {
                CnfFormula::new(variables, clauses).expect("clause universe is valid")
            })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_vertices_give_eight_graphs() {
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
    }

    #[test]
    fn four_vertices_give_sixty_four_graphs() {
        assert_eq!(enumerate_graphs(4).unwrap().count(), 64);
    }

    #[test]
    fn cumulative_enumeration_sums_the_sizes() {
        // 2 + 2 + 8 + 64 over n = 1..=4, where n=1 contributes one graph.
        assert_eq!(enumerate_graphs_up_to(4).unwrap().count(), 1 + 2 + 8 + 64);
    }

    #[test]
    fn enumeration_yields_every_graph_once() {
        let mut seen = std::collections::BTreeSet::new();
        for g in enumerate_graphs(3).unwrap() {
            let key: Vec<(u32, u32)> = g.edges().collect();
            assert!(seen.insert(key), "duplicate graph in enumeration");
        }
    }

    #[test]
    fn enumeration_guard() {
        assert_eq!(
            enumerate_graphs(8).err(),
            Some(InstanceError::TooManyVertices(8))
        );
        assert_eq!(enumerate_graphs(0).err(), Some(InstanceError::NoVertices));
    }

    #[test]
    fn random_graphs_are_reproducible() {
        let a = generate_random_graph(6, 0.5, 42).unwrap();
        let b = generate_random_graph(6, 0.5, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn probability_extremes() {
        let empty = generate_random_graph(5, 0.0, 7).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = generate_random_graph(5, 1.0, 7).unwrap();
        assert_eq!(full.edge_count(), 10);
        assert!(generate_random_graph(5, 1.5, 7).is_err());
    }

    #[test]
    fn random_networks_are_reproducible_and_guarded() {
        let a = generate_random_network(10, 14, 99).unwrap();
        let b = generate_random_network(10, 14, 99).unwrap();
        assert_eq!(a.to_dump(), b.to_dump());
        assert!(a.arcs.len() <= 14);
        // Oversized arc requests clamp to the oracle guard.
        let big = generate_random_network(10, 400, 99).unwrap();
        assert!(big.interdictable_arcs().len() <= ORACLE_ARC_GUARD);
    }

    #[test]
    fn random_formulas_are_reproducible() {
        let a = generate_random_formula(4, 3, 5).unwrap();
        let b = generate_random_formula(4, 3, 5).unwrap();
        assert_eq!(a.to_dimacs(), b.to_dimacs());
        assert_eq!(a.clause_count(), 3);
    }

    #[test]
    fn clause_universe_sizes() {
        // C(v,3) variable triples times 8 polarity patterns.
        assert_eq!(enumerate_clauses(3).len(), 8);
        assert_eq!(enumerate_clauses(4).len(), 32);
    }

    #[test]
    fn formula_enumeration_counts_multisets() {
        // Multisets of size m from a universe of 8: C(8,1), C(9,2), C(10,3).
        assert_eq!(enumerate_formulas(3, 1).unwrap().count(), 8);
        assert_eq!(enumerate_formulas(3, 2).unwrap().count(), 8 + 36);
        assert_eq!(enumerate_formulas(3, 3).unwrap().count(), 8 + 36 + 120);
        // The criterion-scale space: 32 + C(33,2) + C(34,3).
        assert_eq!(
            enumerate_formulas(4, 3).unwrap().count(),
            32 + 528 + 5984
        );
    }
}
