//! Brute-force ground-truth oracles.
//!
//! Every oracle enumerates its entire candidate space with no cleverness
//! beyond a hard size guard, so its answers are correct by inspection. The
//! adjudication harness pits these against the relaxation-based procedures
//! in [`crate::decision`]; the flow-side ground truth lives in
//! [`crate::flow::oracle_min_interdicted_flow`].
//!
//! All oracles return the lexicographically smallest witness so that
//! repeated runs — and independent reimplementations — agree byte for byte.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::cnf::CnfFormula;
use crate::graph::UndirectedGraph;

/// Hard ceiling on the number of candidates an oracle may enumerate.
pub const ORACLE_CANDIDATE_GUARD: u64 = 10_000_000;

/// Variable ceiling for the truth-table oracle (2^24 rows).
pub const ORACLE_VARIABLE_GUARD: u32 = 24;

/// A ground-truth verdict: the answer, the lexicographically smallest
/// witness when the answer is yes, and how many candidates were examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleAnswer<W> {
    pub answer: bool,
    pub witness: Option<W>,
    pub work_count: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of {candidates} candidates exceeds the oracle guard of {limit}")]
    SearchSpaceTooLarge { candidates: u128, limit: u64 },
    #[error("target {target} exceeds the {vertices} vertices available")]
    TargetTooLarge { target: u32, vertices: u32 },
}

/// C(n, k), saturating just above `cap` so callers can compare against a
/// guard without overflow concerns.
fn binomial_capped(n: u64, k: u64, cap: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k {
        if c > cap as u128 {
            return cap as u128 + 1;
        }
        c = c * (n - k + i) as u128 / i as u128;
    }
    c
}

fn guard_subsets(n: u32, k: u32) -> Result<(), OracleError> {
    let candidates = binomial_capped(n as u64, k as u64, ORACLE_CANDIDATE_GUARD);
    if candidates > ORACLE_CANDIDATE_GUARD as u128 {
        return Err(OracleError::SearchSpaceTooLarge {
            candidates,
            limit: ORACLE_CANDIDATE_GUARD,
        });
    }
    Ok(())
}

fn is_clique(g: &UndirectedGraph, vertices: &[u32]) -> bool {
    vertices
        .iter()
        .tuple_combinations()
        .all(|(&u, &v)| g.has_edge(u, v))
}

/// Does the graph contain a clique on exactly `k` vertices? Enumerates
/// every k-subset in lexicographic order; the first clique found is the
/// lexicographically smallest witness.
pub fn oracle_clique(
    g: &UndirectedGraph,
    k: u32,
) -> Result<OracleAnswer<BTreeSet<u32>>, OracleError> {
    if k == 0 {
        return Ok(OracleAnswer {
            answer: true,
            witness: Some(BTreeSet::new()),
            work_count: 0,
        });
    }
    if k > g.vertex_count() {
        return Ok(OracleAnswer {
            answer: false,
            witness: None,
            work_count: 0,
        });
    }
    guard_subsets(g.vertex_count(), k)?;

    let vertices: Vec<u32> = g.vertices().collect();
    let mut work = 0u64;
    for subset in vertices.into_iter().combinations(k as usize) {
        work += 1;
        if is_clique(g, &subset) {
            return Ok(OracleAnswer {
                answer: true,
                witness: Some(subset.into_iter().collect()),
                work_count: work,
            });
        }
    }
    Ok(OracleAnswer {
        answer: false,
        witness: None,
        work_count: work,
    })
}

/// The true maximum clique size, found by trying sizes downward from the
/// largest K whose edge demand C(K,2) the graph can meet. Every graph with
/// at least one vertex has a 1-clique, so the search always lands.
pub fn oracle_max_clique(
    g: &UndirectedGraph,
) -> Result<(u32, OracleAnswer<BTreeSet<u32>>), OracleError> {
    let edges = g.edge_count() as u64;
    let mut upper = 1u32;
    while crate::reductions::clique_edge_demand(upper + 1) <= edges {
        upper += 1;
    }
    upper = upper.min(g.vertex_count());

    let mut total_work = 0u64;
    for k in (1..=upper).rev() {
        let mut answer = oracle_clique(g, k)?;
        total_work += answer.work_count;
        if answer.answer {
            answer.work_count = total_work;
            return Ok((k, answer));
        }
    }
    unreachable!("every nonempty graph has a 1-clique");
}

/// Is the 3-CNF formula satisfiable? Walks the full truth table in
/// lexicographic order of (x1, ..., xn) with false before true, so the
/// witness is the lexicographically smallest satisfying assignment.
pub fn oracle_sat(formula: &CnfFormula) -> Result<OracleAnswer<Vec<bool>>, OracleError> {
    let n = formula.variable_count();
    if n > ORACLE_VARIABLE_GUARD {
        return Err(OracleError::SearchSpaceTooLarge {
            candidates: 1u128 << n.min(127),
            limit: 1u64 << ORACLE_VARIABLE_GUARD,
        });
    }
    let rows: u64 = 1 << n;
    let mut work = 0u64;
    for row in 0..rows {
        work += 1;
        // Variable 1 is the most significant bit so that counting upward
        // enumerates assignments in lexicographic order.
        let assignment: Vec<bool> = (0..n).map(|j| (row >> (n - 1 - j)) & 1 == 1).collect();
        if formula.eval(&assignment) {
            return Ok(OracleAnswer {
                answer: true,
                witness: Some(assignment),
                work_count: work,
            });
        }
    }
    Ok(OracleAnswer {
        answer: false,
        witness: None,
        work_count: work,
    })
}

/// Does the graph have a vertex cover of size exactly `k`? Enumerates every
/// k-subset in lexicographic order and checks that each edge has at least
/// one endpoint in the subset.
pub fn oracle_vertex_cover(
    g: &UndirectedGraph,
    k: u32,
) -> Result<OracleAnswer<BTreeSet<u32>>, OracleError> {
    if k > g.vertex_count() {
        return Err(OracleError::TargetTooLarge {
            target: k,
            vertices: g.vertex_count(),
        });
    }
    guard_subsets(g.vertex_count(), k)?;

    let vertices: Vec<u32> = g.vertices().collect();
    let mut work = 0u64;
    for subset in vertices.into_iter().combinations(k as usize) {
        work += 1;
        let covers = g
            .edges()
            .all(|(u, v)| subset.contains(&u) || subset.contains(&v));
        if covers {
            return Ok(OracleAnswer {
                answer: true,
                witness: Some(subset.into_iter().collect()),
                work_count: work,
            });
        }
    }
    Ok(OracleAnswer {
        answer: false,
        witness: None,
        work_count: work,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::cnf::{parse_dimacs_cnf, Literal};
    use crate::reductions::{sat_to_clique_graph, PairingMode};

    fn set(vals: &[u32]) -> BTreeSet<u32> {
        vals.iter().copied().collect()
    }

    #[test]
    fn triangle_holds_its_own_clique() {
        let g = UndirectedGraph::complete(3);
        let ans = oracle_clique(&g, 3).unwrap();
        assert!(ans.answer);
        assert_eq!(ans.witness, Some(set(&[1, 2, 3])));
        assert_eq!(ans.work_count, 1);
    }

    #[test]
    fn bipartite_k33_has_no_triangle() {
        let g = UndirectedGraph::complete_bipartite(3, 3);
        let ans = oracle_clique(&g, 3).unwrap();
        assert!(!ans.answer);
        assert_eq!(ans.witness, None);
        assert_eq!(ans.work_count, 20); // C(6,3) subsets, all rejected
    }

    #[test]
    fn single_vertex_targets_are_trivial() {
        let g = UndirectedGraph::empty(4);
        let one = oracle_clique(&g, 1).unwrap();
        assert!(one.answer);
        assert_eq!(one.witness, Some(set(&[1])));

        let zero = oracle_clique(&g, 0).unwrap();
        assert!(zero.answer);
        assert_eq!(zero.witness, Some(BTreeSet::new()));

        let five = oracle_clique(&g, 5).unwrap();
        assert!(!five.answer);
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // Two triangles: {1,2,3} and {2,4,5}. Lex order finds {1,2,3}.
        let g = UndirectedGraph::new(5, [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (4, 5)]).unwrap();
        let ans = oracle_clique(&g, 3).unwrap();
        assert_eq!(ans.witness, Some(set(&[1, 2, 3])));
    }

    #[test]
    fn clique_guard_rejects_huge_searches() {
        let g = UndirectedGraph::empty(40);
        let err = oracle_clique(&g, 20).unwrap_err();
        assert!(matches!(err, OracleError::SearchSpaceTooLarge { .. }));
    }

    #[test]
    fn max_clique_frozen_examples() {
        let (k, ans) = oracle_max_clique(&UndirectedGraph::complete(3)).unwrap();
        assert_eq!(k, 3);
        assert_eq!(ans.witness, Some(set(&[1, 2, 3])));

        let (k, _) = oracle_max_clique(&UndirectedGraph::complete_bipartite(3, 3)).unwrap();
        assert_eq!(k, 2);

        let (k, ans) = oracle_max_clique(&UndirectedGraph::empty(4)).unwrap();
        assert_eq!(k, 1);
        assert_eq!(ans.witness, Some(set(&[1])));
    }

    #[test]
    fn single_clause_is_satisfiable() {
        let formula = parse_dimacs_cnf("p cnf 3 1\n1 2 3 0\n").unwrap();
        let ans = oracle_sat(&formula).unwrap();
        assert!(ans.answer);
        // Lex order tries all-false first, and (F,F,T) is the first hit.
        assert_eq!(ans.witness, Some(vec![false, false, true]));
        assert_eq!(ans.work_count, 2);
    }

    #[test]
    fn opposite_clauses_are_satisfiable() {
        let formula = parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
        let ans = oracle_sat(&formula).unwrap();
        assert!(ans.answer);
        assert_eq!(ans.witness, Some(vec![false, false, true]));
    }

    /// All eight polarity patterns over three variables: every assignment
    /// falsifies exactly one clause, so the formula is unsatisfiable.
    pub(crate) fn all_polarity_formula() -> CnfFormula {
        let clauses = (0..8).map(|bits: u32| {
            let lit = |var: u32, neg: bool| {
                if neg {
                    Literal::negative(var)
                } else {
                    Literal::positive(var)
                }
            };
            [
                lit(1, bits & 4 != 0),
                lit(2, bits & 2 != 0),
                lit(3, bits & 1 != 0),
            ]
        });
        CnfFormula::new(3, clauses).unwrap()
    }

    #[test]
    fn all_polarity_formula_is_unsatisfiable() {
        let ans = oracle_sat(&all_polarity_formula()).unwrap();
        assert!(!ans.answer);
        assert_eq!(ans.work_count, 8);
    }

    #[test]
    fn sat_guard_rejects_many_variables() {
        let lits = [
            Literal::positive(1),
            Literal::positive(2),
            Literal::positive(30),
        ];
        let formula = CnfFormula::new(30, [lits]).unwrap();
        assert!(matches!(
            oracle_sat(&formula),
            Err(OracleError::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn path_center_covers_both_edges() {
        let g = UndirectedGraph::path(3);
        let ans = oracle_vertex_cover(&g, 1).unwrap();
        assert!(ans.answer);
        assert_eq!(ans.witness, Some(set(&[2])));
    }

    #[test]
    fn triangle_needs_more_than_one_cover_vertex() {
        let g = UndirectedGraph::complete(3);
        let ans = oracle_vertex_cover(&g, 1).unwrap();
        assert!(!ans.answer);
        let ans = oracle_vertex_cover(&g, 2).unwrap();
        assert!(ans.answer);
        assert_eq!(ans.witness, Some(set(&[1, 2])));
    }

    #[test]
    fn full_vertex_set_always_covers() {
        let g = UndirectedGraph::cycle(5);
        let ans = oracle_vertex_cover(&g, 5).unwrap();
        assert!(ans.answer);
        assert!(matches!(
            oracle_vertex_cover(&g, 6),
            Err(OracleError::TargetTooLarge { .. })
        ));
    }

    fn arb_graph() -> impl Strategy<Value = UndirectedGraph> {
        (1u32..=6, proptest::collection::vec(any::<bool>(), 15)).prop_map(|(n, bits)| {
            let pairs: Vec<(u32, u32)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .collect();
            let edges = pairs
                .iter()
                .zip(&bits)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e);
            UndirectedGraph::new(n, edges).unwrap()
        })
    }

    proptest! {
        #[test]
        fn clique_witnesses_verify(g in arb_graph(), k in 0u32..=6) {
            let ans = oracle_clique(&g, k).unwrap();
            if let Some(w) = &ans.witness {
                prop_assert!(ans.answer);
                prop_assert_eq!(w.len() as u32, k);
                let members: Vec<u32> = w.iter().copied().collect();
                prop_assert!(is_clique(&g, &members));
            } else {
                prop_assert!(!ans.answer);
            }
        }

        #[test]
        fn cover_witnesses_verify(g in arb_graph(), k in 0u32..=6) {
            prop_assume!(k <= g.vertex_count());
            let ans = oracle_vertex_cover(&g, k).unwrap();
            if let Some(w) = &ans.witness {
                prop_assert!(ans.answer);
                prop_assert_eq!(w.len() as u32, k);
                prop_assert!(g.edges().all(|(u, v)| w.contains(&u) || w.contains(&v)));
            } else {
                prop_assert!(!ans.answer);
            }
        }

        #[test]
        fn sat_witnesses_verify(
            n in 1u32..=4,
            clause_picks in proptest::collection::vec((0usize..200, any::<bool>(), any::<bool>(), any::<bool>()), 1..=3),
        ) {
            // Build random 3-clauses over up to 4 variables; skip draws that
            // repeat a variable inside a clause.
            prop_assume!(n >= 3);
            let mut clauses = Vec::new();
            for (pick, s1, s2, s3) in clause_picks {
                let a = 1 + (pick % n as usize) as u32;
                let b = 1 + ((pick / 7) % n as usize) as u32;
                let c = 1 + ((pick / 31) % n as usize) as u32;
                if a == b || a == c || b == c {
                    continue;
                }
                let lit = |var, neg| if neg { Literal::negative(var) } else { Literal::positive(var) };
                clauses.push([lit(a, s1), lit(b, s2), lit(c, s3)]);
            }
            prop_assume!(!clauses.is_empty());
            let formula = CnfFormula::new(n, clauses).unwrap();
            let ans = oracle_sat(&formula).unwrap();
            if let Some(w) = &ans.witness {
                prop_assert!(formula.eval(w));
            } else {
                // Exhaustively confirm no assignment works.
                for row in 0..(1u64 << n) {
                    let assignment: Vec<bool> =
                        (0..n).map(|j| (row >> (n - 1 - j)) & 1 == 1).collect();
                    prop_assert!(!formula.eval(&assignment));
                }
            }
        }

        /// Cross-check through the clique translation: a formula is
        /// satisfiable iff its coupling graph has a clique with one vertex
        /// per clause.
        #[test]
        fn sat_agrees_with_clique_oracle_on_coupling_graph(
            polarities in proptest::collection::vec((any::<bool>(), any::<bool>(), any::<bool>()), 1..=3),
        ) {
            let lit = |var, neg| if neg { Literal::negative(var) } else { Literal::positive(var) };
            let clauses: Vec<[Literal; 3]> = polarities
                .iter()
                .map(|&(s1, s2, s3)| [lit(1, s1), lit(2, s2), lit(3, s3)])
                .collect();
            let m = clauses.len() as u32;
            let formula = CnfFormula::new(3, clauses).unwrap();
            let direct = oracle_sat(&formula).unwrap();
            let (graph, target, _) = sat_to_clique_graph(&formula, PairingMode::AllPairs);
            prop_assert_eq!(target, m);
            let translated = oracle_clique(&graph, target).unwrap();
            prop_assert_eq!(direct.answer, translated.answer);
        }

        /// Cover/clique duality: a k-cover exists iff the complement holds
        /// a clique on the other n-k vertices.
        #[test]
        fn cover_agrees_with_clique_oracle_on_complement(g in arb_graph(), k in 0u32..=6) {
            prop_assume!(k <= g.vertex_count());
            let cover = oracle_vertex_cover(&g, k).unwrap();
            let clique = oracle_clique(&g.complement(), g.vertex_count() - k).unwrap();
            prop_assert_eq!(cover.answer, clique.answer);
        }
    }
}
