//! Reductions between decision problems: clique to flow interdiction,
//! 3-CNF-SAT to clique, and vertex cover to clique.
//!
//! The interdiction target is always the same two-layer network shape: a
//! source feeding one middle-layer node per graph edge at capacity 2, each
//! edge node passing capacity 1 to the nodes of its two endpoints, and each
//! vertex node draining capacity 1 to the sink. Only the source-side arcs
//! are interdictable, all at unit cost.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cnf::CnfFormula;
use crate::flow::{FlowArc, FlowNetwork};
use crate::graph::UndirectedGraph;

/// A two-layer interdiction instance derived from an undirected graph.
///
/// Layer `A1` has one node per source-graph edge, layer `A2` one node per
/// source-graph vertex; the edge node for `{u,v}` is wired to the vertex
/// nodes of `u` and `v`. The derived network keeps a fixed canonical layout:
/// node 0 is the source, nodes `1..=|A1|` are `A1` in edge order, the next
/// `|A2|` nodes are `A2` in vertex order, and the last node is the sink. The
/// first `|A1|` arcs are the interdictable source arcs, in `A1` order, so
/// arc index `j` is exactly the arc that removes `A1` node `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcmfnipInstance {
    a1_labels: Vec<(u32, u32)>,
    a2_labels: Vec<u32>,
    incidence: Vec<[usize; 2]>,
    network: FlowNetwork,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AuditError {
    #[error("A1 node {0} is not wired to exactly 2 distinct A2 nodes")]
    BadIncidence(usize),
    #[error("network shape mismatch: {0}")]
    BadShape(String),
    #[error("arc {index} violates the capacity/cost/interdictable pattern")]
    BadArc { index: usize },
}

impl PcmfnipInstance {
    /// Builds the instance for a graph: one `A1` node per edge (canonical
    /// edge order), one `A2` node per vertex.
    pub fn from_graph(g: &UndirectedGraph) -> Self {
        let a1_labels: Vec<(u32, u32)> = g.edges().collect();
        let a2_labels: Vec<u32> = g.vertices().collect();
        let a1 = a1_labels.len();
        let a2 = a2_labels.len();

        let vertex_slot = |v: u32| (v - 1) as usize; // vertices are 1-indexed
        let incidence: Vec<[usize; 2]> = a1_labels
            .iter()
            .map(|&(u, v)| [vertex_slot(u), vertex_slot(v)])
            .collect();

        let source = 0u32;
        let a1_node = |j: usize| 1 + j as u32;
        let a2_node = |i: usize| (1 + a1 + i) as u32;
        let sink = (1 + a1 + a2) as u32;

        let mut arcs = Vec::with_capacity(a1 * 3 + a2);
        for j in 0..a1 {
            arcs.push(FlowArc {
                tail: source,
                head: a1_node(j),
                capacity: 2,
                interdiction_cost: 1,
                interdictable: true,
            });
        }
        for (j, pair) in incidence.iter().enumerate() {
            for &i in pair {
                arcs.push(FlowArc {
                    tail: a1_node(j),
                    head: a2_node(i),
                    capacity: 1,
                    interdiction_cost: 1,
                    interdictable: false,
                });
            }
        }
        for i in 0..a2 {
            arcs.push(FlowArc {
                tail: a2_node(i),
                head: sink,
                capacity: 1,
                interdiction_cost: 1,
                interdictable: false,
            });
        }

        let network = FlowNetwork::new((2 + a1 + a2) as u32, source, sink, arcs)
            .expect("canonical layout is always valid");
        Self {
            a1_labels,
            a2_labels,
            incidence,
            network,
        }
    }

    pub fn a1_count(&self) -> usize {
        self.a1_labels.len()
    }

    pub fn a2_count(&self) -> usize {
        self.a2_labels.len()
    }

    /// Source-graph edge labels of the `A1` nodes, in `A1` order.
    pub fn a1_labels(&self) -> &[(u32, u32)] {
        &self.a1_labels
    }

    /// Source-graph vertex labels of the `A2` nodes, in `A2` order.
    pub fn a2_labels(&self) -> &[u32] {
        &self.a2_labels
    }

    /// For each `A1` node, the two `A2` indices it feeds.
    pub fn incidence(&self) -> &[[usize; 2]] {
        &self.incidence
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    /// Number of `A1` nodes incident on `A2` node `i`.
    pub fn a2_degree(&self, i: usize) -> usize {
        self.incidence.iter().filter(|pair| pair.contains(&i)).count()
    }

    /// `A1` indices incident on `A2` node `i`, ascending.
    pub fn a2_neighbors(&self, i: usize) -> Vec<usize> {
        self.incidence
            .iter()
            .enumerate()
            .filter(|(_, pair)| pair.contains(&i))
            .map(|(j, _)| j)
            .collect()
    }

    /// Arc index of the interdictable source arc feeding `A1` node `j`.
    pub fn source_arc(&self, j: usize) -> usize {
        j
    }

    /// Verifies the structural invariants: incidence wired to 2 distinct
    /// nodes each, the canonical node layout, the 2/1/1 capacity pattern,
    /// unit costs, and interdictable flags on exactly the source arcs.
    pub fn audit(&self) -> Result<(), AuditError> {
        let (a1, a2) = (self.a1_count(), self.a2_count());
        for (j, pair) in self.incidence.iter().enumerate() {
            if pair[0] == pair[1] || pair.iter().any(|&i| i >= a2) {
                return Err(AuditError::BadIncidence(j));
            }
        }
        let net = &self.network;
        if net.node_count as usize != 2 + a1 + a2
            || net.source != 0
            || net.sink as usize != 1 + a1 + a2
            || net.arcs.len() != 3 * a1 + a2
        {
            return Err(AuditError::BadShape(format!(
                "{} nodes / {} arcs for |A1|={a1}, |A2|={a2}",
                net.node_count,
                net.arcs.len()
            )));
        }
        let a1_node = |j: usize| 1 + j as u32;
        let a2_node = |i: usize| (1 + a1 + i) as u32;
        for (index, arc) in net.arcs.iter().enumerate() {
            let ok = if index < a1 {
                *arc == FlowArc {
                    tail: 0,
                    head: a1_node(index),
                    capacity: 2,
                    interdiction_cost: 1,
                    interdictable: true,
                }
            } else if index < 3 * a1 {
                let j = (index - a1) / 2;
                let i = self.incidence[j][(index - a1) % 2];
                *arc == FlowArc {
                    tail: a1_node(j),
                    head: a2_node(i),
                    capacity: 1,
                    interdiction_cost: 1,
                    interdictable: false,
                }
            } else {
                let i = index - 3 * a1;
                *arc == FlowArc {
                    tail: a2_node(i),
                    head: net.sink,
                    capacity: 1,
                    interdiction_cost: 1,
                    interdictable: false,
                }
            };
            if !ok {
                return Err(AuditError::BadArc { index });
            }
        }
        Ok(())
    }
}

/// Audit trail of a reduction: which source object became which target
/// object, plus the claimed parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub source_kind: &'static str,
    pub target_kind: &'static str,
    pub object_map: BTreeMap<String, String>,
    pub params: BTreeMap<String, String>,
}

impl ReductionCertificate {
    /// The forward mapping must send distinct source objects to distinct
    /// target objects.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.object_map.values().all(|v| seen.insert(v))
    }
}

/// Why a clique parameterization admits no well-formed reduction instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateClique {
    /// `K < 2`: a 0- or 1-clique involves no edge at all.
    TargetTooSmall,
    /// `C(K,2) > |E|`: the graph lacks the edges any K-clique needs, so the
    /// answer is NO before any network is built.
    NotEnoughEdges,
}

/// Result of [`clique_to_pcmfnip`]: either a well-formed instance with its
/// budget, or a tagged degenerate case for the caller to resolve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueReduction {
    Reduced {
        instance: PcmfnipInstance,
        budget: u64,
        certificate: ReductionCertificate,
    },
    Degenerate(DegenerateClique),
}

/// Number of edges a K-clique needs: C(K,2).
pub fn clique_edge_demand(k: u32) -> u64 {
    (k as u64) * (k as u64 - 1) / 2
}

/// Reduces K-clique on `g` to budgeted interdiction of the two-layer
/// network: the budget is `|E| - C(K,2)`, the number of edge nodes an
/// interdictor may delete while leaving a clique's worth of edges.
pub fn clique_to_pcmfnip(g: &UndirectedGraph, k: u32) -> CliqueReduction {
    if k < 2 {
        return CliqueReduction::Degenerate(DegenerateClique::TargetTooSmall);
    }
    let demand = clique_edge_demand(k);
    let edges = g.edge_count() as u64;
    if demand > edges {
        return CliqueReduction::Degenerate(DegenerateClique::NotEnoughEdges);
    }

    let instance = PcmfnipInstance::from_graph(g);
    let budget = edges - demand;
    let mut object_map = BTreeMap::new();
    for (j, (u, v)) in instance.a1_labels().iter().enumerate() {
        object_map.insert(format!("edge {u}-{v}"), format!("a1 {j}"));
    }
    for (i, v) in instance.a2_labels().iter().enumerate() {
        object_map.insert(format!("vertex {v}"), format!("a2 {i}"));
    }
    let certificate = ReductionCertificate {
        source_kind: "clique",
        target_kind: "interdiction",
        object_map,
        params: BTreeMap::from([
            ("K".into(), k.to_string()),
            ("R".into(), budget.to_string()),
        ]),
    };
    CliqueReduction::Reduced {
        instance,
        budget,
        certificate,
    }
}

/// Which clause pairs get coupled in the satisfiability-to-clique graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairingMode {
    /// Couple literals across every pair of distinct clauses (the standard
    /// construction; the default).
    #[default]
    AllPairs,
    /// Couple literals only across consecutive clauses.
    Succeeding,
}

/// Builds the coupling graph of a 3-CNF formula: one vertex per literal
/// occurrence (vertex `3(r-1)+s` for occurrence `s` of clause `r`), with an
/// edge between two occurrences iff their clauses are paired under `mode`
/// and the literals are not complementary. The clique target equals the
/// clause count.
pub fn sat_to_clique_graph(
    formula: &CnfFormula,
    mode: PairingMode,
) -> (UndirectedGraph, u32, ReductionCertificate) {
    let m = formula.clause_count();
    let vertex = |clause: usize, slot: usize| (3 * clause + slot + 1) as u32;

    let mut edges = Vec::new();
    for r in 0..m {
        let partners: Box<dyn Iterator<Item = usize>> = match mode {
            PairingMode::AllPairs => Box::new(r + 1..m),
            PairingMode::Succeeding => Box::new((r + 1..m).take(1)),
        };
        for r2 in partners {
            for (s, lit) in formula.clauses()[r].literals().enumerate() {
                for (s2, lit2) in formula.clauses()[r2].literals().enumerate() {
                    if !lit.complements(lit2) {
                        edges.push((vertex(r, s), vertex(r2, s2)));
                    }
                }
            }
        }
    }
    let graph = UndirectedGraph::new(3 * m as u32, edges).expect("coupling graph is simple");

    let mut object_map = BTreeMap::new();
    for (r, clause) in formula.clauses().iter().enumerate() {
        for (s, lit) in clause.literals().enumerate() {
            object_map.insert(
                format!("clause {} literal {}", r + 1, s + 1),
                format!("vertex {} ({})", vertex(r, s), lit.to_dimacs()),
            );
        }
    }
    let certificate = ReductionCertificate {
        source_kind: "3sat",
        target_kind: "clique",
        object_map,
        params: BTreeMap::from([
            ("K".into(), m.to_string()),
            (
                "pairing".into(),
                match mode {
                    PairingMode::AllPairs => "all".into(),
                    PairingMode::Succeeding => "succeeding".into(),
                },
            ),
        ]),
    };
    (graph, m as u32, certificate)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VcReductionError {
    #[error("cover size {k} exceeds vertex count {vertices}")]
    CoverTooLarge { k: u32, vertices: u32 },
}

/// Reduces vertex cover to clique: a graph has a size-K cover iff its
/// complement has a clique on `|V| - K` vertices.
pub fn vc_to_clique(
    g: &UndirectedGraph,
    k: u32,
) -> Result<(UndirectedGraph, u32, ReductionCertificate), VcReductionError> {
    let n = g.vertex_count();
    if k > n {
        return Err(VcReductionError::CoverTooLarge { k, vertices: n });
    }
    let target = n - k;
    let complement = g.complement();
    let object_map = g
        .vertices()
        .map(|v| (format!("vertex {v}"), format!("vertex {v}")))
        .collect();
    let certificate = ReductionCertificate {
        source_kind: "vertex-cover",
        target_kind: "clique",
        object_map,
        params: BTreeMap::from([
            ("K".into(), k.to_string()),
            ("target".into(), target.to_string()),
        ]),
    };
    Ok((complement, target, certificate))
}
