//! Undirected graphs with DIMACS edge-format I/O.
//!
//! Vertices are 1-indexed everywhere, matching the DIMACS convention, so
//! instance files round-trip without renumbering. Edges are unordered pairs
//! with no self-loops and no duplicates.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// An immutable simple undirected graph on vertices `1..=vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertex_count: u32,
    /// Normalized edge set: every pair stored as `(u, v)` with `u < v`.
    edges: BTreeSet<(u32, u32)>,
}

/// Degree of a single vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexDegree {
    pub vertex: u32,
    pub degree: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be positive")]
    EmptyVertexSet,
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: u32, count: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: missing `p edge` header before this line")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed edge line: {detail}")]
    MalformedEdge { line: usize, detail: String },
    #[error("line {line}: self-loop rejected: e {v} {v}")]
    SelfLoop { line: usize, v: u32 },
    #[error("line {line}: endpoint {vertex} out of range 1..={count}")]
    OutOfRange { line: usize, vertex: u32, count: u32 },
    #[error("line {line}: header declared {declared} edges but {found} edge lines were read")]
    EdgeCountMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("line {line}: unrecognized line kind {kind:?}")]
    UnrecognizedLine { line: usize, kind: String },
    #[error("input ended without a `p edge` header")]
    NoHeader,
}

impl UndirectedGraph {
    /// Builds a graph from an edge list, normalizing pair order and
    /// collapsing duplicates.
    pub fn new(
        vertex_count: u32,
        edge_list: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut edges = BTreeSet::new();
        for (u, v) in edge_list {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w == 0 || w > vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            edges.insert((u.min(v), u.max(v)));
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn empty(vertex_count: u32) -> Self {
        Self::new(vertex_count, []).expect("positive vertex count")
    }

    /// Complete graph K_n.
    pub fn complete(n: u32) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Self::new(n, edges).expect("valid complete graph")
    }

    /// Complete bipartite graph K_{a,b}: left part `1..=a`, right part
    /// `a+1..=a+b`.
    pub fn complete_bipartite(a: u32, b: u32) -> Self {
        let edges = (1..=a).flat_map(|u| (a + 1..=a + b).map(move |v| (u, v)));
        Self::new(a + b, edges).expect("valid bipartite graph")
    }

    /// Path 1-2-...-n.
    pub fn path(n: u32) -> Self {
        let edges = (1..n).map(|u| (u, u + 1));
        Self::new(n, edges).expect("valid path graph")
    }

    /// Cycle 1-2-...-n-1.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges = (1..n).map(|u| (u, u + 1)).chain([(n, 1)]);
        Self::new(n, edges).expect("valid cycle graph")
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.vertex_count
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Degree of `v`, counting incident edges.
    pub fn degree(&self, v: u32) -> Result<VertexDegree, GraphError> {
        if v == 0 || v > self.vertex_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        let degree = self
            .edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count() as u32;
        Ok(VertexDegree { vertex: v, degree })
    }

    /// Complement on the same vertex set: `{u,v}` is an edge of the result
    /// iff it is not an edge of `self`.
    pub fn complement(&self) -> Self {
        let edges = (1..=self.vertex_count)
            .flat_map(|u| (u + 1..=self.vertex_count).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Self::new(self.vertex_count, edges).expect("complement of a valid graph")
    }

    /// Canonical DIMACS edge-format serialization.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", self.vertex_count, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }
}

/// Parses DIMACS edge format: a `p edge N M` header, `e u v` lines, and
/// `c` comment lines. Duplicate edge lines collapse to one edge with a
/// warning; the declared M is checked against the number of `e` lines read.
pub fn parse_dimacs_graph(text: &str) -> Result<UndirectedGraph, DimacsError> {
    let mut header: Option<(u32, usize, usize)> = None; // (n, m, header line)
    let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut edge_lines = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(DimacsError::DuplicateHeader { line });
                }
                let format = tokens.next().unwrap_or("");
                if format != "edge" && format != "col" {
                    return Err(DimacsError::MalformedHeader {
                        line,
                        detail: format!("expected `p edge N M`, found format {format:?}"),
                    });
                }
                let n: u32 = parse_token(tokens.next(), line, "vertex count")?;
                let m: usize = parse_token(tokens.next(), line, "edge count")?;
                if n == 0 {
                    return Err(DimacsError::MalformedHeader {
                        line,
                        detail: "vertex count must be positive".into(),
                    });
                }
                if tokens.next().is_some() {
                    return Err(DimacsError::MalformedHeader {
                        line,
                        detail: "trailing tokens after `p edge N M`".into(),
                    });
                }
                header = Some((n, m, line));
            }
            Some("e") => {
                let (n, _, _) = header.ok_or(DimacsError::MissingHeader { line })?;
                let u: u32 = parse_token(tokens.next(), line, "edge endpoint")?;
                let v: u32 = parse_token(tokens.next(), line, "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(DimacsError::MalformedEdge {
                        line,
                        detail: "trailing tokens after `e u v`".into(),
                    });
                }
                if u == v {
                    return Err(DimacsError::SelfLoop { line, v });
                }
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(DimacsError::OutOfRange {
                            line,
                            vertex: w,
                            count: n,
                        });
                    }
                }
                edge_lines += 1;
                if !edges.insert((u.min(v), u.max(v))) {
                    log::warn!("line {line}: duplicate edge {u} {v} collapsed");
                }
            }
            Some(kind) => {
                return Err(DimacsError::UnrecognizedLine {
                    line,
                    kind: kind.to_string(),
                })
            }
            None => unreachable!("empty lines are skipped"),
        }
    }

    let (n, m, header_line) = header.ok_or(DimacsError::NoHeader)?;
    if edge_lines != m {
        return Err(DimacsError::EdgeCountMismatch {
            line: header_line,
            declared: m,
            found: edge_lines,
        });
    }
    Ok(UndirectedGraph {
        vertex_count: n,
        edges,
    })
}

fn parse_token<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, DimacsError> {
    let token = token.ok_or_else(|| DimacsError::MalformedHeader {
        line,
        detail: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| DimacsError::MalformedHeader {
        line,
        detail: format!("cannot parse {what} from {token:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> UndirectedGraph {
        parse_dimacs_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(1, 2) && g.has_edge(2, 3) && g.has_edge(3, 1));
    }

    #[test]
    fn parses_isolated_vertices() {
        let g = parse_dimacs_graph("p edge 2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_self_loop() {
        let err = parse_dimacs_graph("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, DimacsError::SelfLoop { line: 2, v: 1 });
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = parse_dimacs_graph("p edge 2 1\ne 1 3\n").unwrap_err();
        assert!(matches!(err, DimacsError::OutOfRange { line: 2, vertex: 3, .. }));
    }

    #[test]
    fn rejects_edge_count_mismatch() {
        let err = parse_dimacs_graph("p edge 3 2\ne 1 2\n").unwrap_err();
        assert!(matches!(
            err,
            DimacsError::EdgeCountMismatch {
                declared: 2,
                found: 1,
                ..
            }
        ));
    }

    #[test]
    fn duplicate_edge_lines_collapse() {
        let g = parse_dimacs_graph("p edge 3 3\ne 1 2\ne 2 1\ne 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn comments_ignored() {
        let g = parse_dimacs_graph("c a triangle\np edge 3 3\nc body\ne 1 2\ne 2 3\ne 1 3\n")
            .unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn complement_of_triangle_is_empty() {
        assert_eq!(triangle().complement().edge_count(), 0);
    }

    #[test]
    fn complement_of_empty_is_complete() {
        let g = UndirectedGraph::empty(4).complement();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g, UndirectedGraph::complete(4));
    }

    #[test]
    fn complement_of_five_cycle_has_five_edges() {
        // All C(5,2)=10 pairs split 5/5 between C5 and its complement.
        let c5 = UndirectedGraph::cycle(5);
        let comp = c5.complement();
        assert_eq!(comp.edge_count(), 5);
        for (u, v) in comp.edges() {
            assert!(!c5.has_edge(u, v));
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(triangle().degree(1).unwrap().degree, 2);
        assert_eq!(UndirectedGraph::empty(2).degree(2).unwrap().degree, 0);
        let k33 = UndirectedGraph::complete_bipartite(3, 3);
        for v in k33.vertices() {
            assert_eq!(k33.degree(v).unwrap().degree, 3);
        }
        assert!(triangle().degree(4).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = UndirectedGraph> {
        (1u32..=7).prop_flat_map(|n| {
            let pairs = (n * (n - 1) / 2) as usize;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
                let all_pairs: Vec<(u32, u32)> = (1..=n)
                    .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                    .collect();
                let edges = all_pairs
                    .into_iter()
                    .zip(&mask)
                    .filter_map(|(e, &keep)| keep.then_some(e));
                UndirectedGraph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn dimacs_round_trip(g in arb_graph()) {
            let reparsed = parse_dimacs_graph(&g.to_dimacs()).unwrap();
            prop_assert_eq!(reparsed, g);
        }

        #[test]
        fn degree_sum_is_twice_edge_count(g in arb_graph()) {
            let sum: u32 = g.vertices().map(|v| g.degree(v).unwrap().degree).sum();
            prop_assert_eq!(sum as usize, 2 * g.edge_count());
        }

        #[test]
        fn complement_is_involution(g in arb_graph()) {
            prop_assert_eq!(g.complement().complement(), g.clone());
        }
    }
}
