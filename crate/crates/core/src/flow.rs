//! Integer s-t max flow, interdiction, and the exhaustive interdiction
//! oracle.
//!
//! The max-flow engine is Edmonds-Karp (shortest augmenting paths) over
//! integer capacities, and every result carries a min-cut certificate: the
//! source side of the residual graph and its cut capacity, which must equal
//! the flow value exactly. The oracle enumerates every interdiction set
//! within budget, so it is only usable at desk scale — it refuses instances
//! beyond its enumeration guard rather than approximate.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Maximum number of interdictable arcs the exhaustive oracle accepts.
pub const ORACLE_ARC_GUARD: usize = 25;

/// A directed arc with an integer capacity and an interdiction cost. Only
/// arcs marked `interdictable` may be removed by an interdictor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: u32,
    pub head: u32,
    pub capacity: u64,
    pub interdiction_cost: u64,
    pub interdictable: bool,
}

/// A directed flow network on nodes `0..node_count`. Parallel arcs are
/// allowed; arcs are identified by their index in `arcs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: u32,
    pub source: u32,
    pub sink: u32,
    pub arcs: Vec<FlowArc>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("source and sink must differ")]
    SourceIsSink,
    #[error("node {node} out of range 0..{count}")]
    NodeOutOfRange { node: u32, count: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterdictionError {
    #[error("arc index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("arc {0} is not interdictable")]
    NotInterdictable(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationGuardError {
    #[error("{found} interdictable arcs exceed the enumeration guard of {guard}")]
    TooManyInterdictableArcs { found: usize, guard: usize },
}

impl FlowNetwork {
    pub fn new(
        node_count: u32,
        source: u32,
        sink: u32,
        arcs: Vec<FlowArc>,
    ) -> Result<Self, NetworkError> {
        if source == sink {
            return Err(NetworkError::SourceIsSink);
        }
        for node in [source, sink] {
            if node >= node_count {
                return Err(NetworkError::NodeOutOfRange {
                    node,
                    count: node_count,
                });
            }
        }
        for arc in &arcs {
            for node in [arc.tail, arc.head] {
                if node >= node_count {
                    return Err(NetworkError::NodeOutOfRange {
                        node,
                        count: node_count,
                    });
                }
            }
        }
        Ok(Self {
            node_count,
            source,
            sink,
            arcs,
        })
    }

    pub fn interdictable_arcs(&self) -> Vec<usize> {
        self.arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.interdictable)
            .map(|(i, _)| i)
            .collect()
    }

    /// Plain-text dump: header `n source sink`, then one
    /// `tail head capacity cost interdictable` line per arc.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.node_count, self.source, self.sink);
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "{} {} {} {} {}",
                a.tail,
                a.head,
                a.capacity,
                a.interdiction_cost,
                u8::from(a.interdictable)
            );
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkParseError {
    #[error("line {line}: {detail}")]
    Malformed { line: usize, detail: String },
    #[error("input has no header line")]
    Empty,
    #[error(transparent)]
    Invalid(#[from] NetworkError),
}

/// Parses the [`FlowNetwork::to_dump`] format. Blank lines and `#` comments
/// are ignored.
pub fn parse_network(text: &str) -> Result<FlowNetwork, NetworkParseError> {
    let mut header: Option<(u32, u32, u32)> = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let numbers: Result<Vec<u64>, _> = fields.iter().map(|f| f.parse::<u64>()).collect();
        let numbers = numbers.map_err(|_| NetworkParseError::Malformed {
            line,
            detail: format!("non-numeric field in {trimmed:?}"),
        })?;
        if header.is_none() {
            if numbers.len() != 3 {
                return Err(NetworkParseError::Malformed {
                    line,
                    detail: "header must be `n source sink`".into(),
                });
            }
            header = Some((numbers[0] as u32, numbers[1] as u32, numbers[2] as u32));
        } else {
            if numbers.len() != 5 {
                return Err(NetworkParseError::Malformed {
                    line,
                    detail: "arc line must be `tail head capacity cost interdictable`".into(),
                });
            }
            if numbers[4] > 1 {
                return Err(NetworkParseError::Malformed {
                    line,
                    detail: "interdictable flag must be 0 or 1".into(),
                });
            }
            arcs.push(FlowArc {
                tail: numbers[0] as u32,
                head: numbers[1] as u32,
                capacity: numbers[2],
                interdiction_cost: numbers[3],
                interdictable: numbers[4] == 1,
            });
        }
    }
    let (n, source, sink) = header.ok_or(NetworkParseError::Empty)?;
    Ok(FlowNetwork::new(n, source, sink, arcs)?)
}

/// An interdiction problem: a network plus a budget. The budget is clamped
/// to the total cost of interdictable arcs (larger budgets buy nothing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterdictionInstance {
    pub network: FlowNetwork,
    pub budget: u64,
    /// True when the requested budget exceeded the clamp and was reduced.
    pub clamped: bool,
}

impl InterdictionInstance {
    pub fn new(network: FlowNetwork, budget: u64) -> Self {
        let total: u64 = network
            .arcs
            .iter()
            .filter(|a| a.interdictable)
            .map(|a| a.interdiction_cost)
            .sum();
        let clamped = budget > total;
        if clamped {
            log::warn!("interdiction budget {budget} clamped to total cost {total}");
        }
        Self {
            network,
            budget: budget.min(total),
            clamped,
        }
    }
}

/// An exact maximum flow with its min-cut certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    /// Flow per arc, in `arcs` order.
    pub arc_flows: Vec<u64>,
    /// Nodes reachable from the source in the final residual graph, sorted.
    pub source_side: Vec<u32>,
    /// Total capacity of arcs crossing from `source_side` to its complement;
    /// always equals `value`.
    pub cut_capacity: u64,
}

/// Exact maximum s-t flow with a min-cut certificate.
pub fn max_flow(net: &FlowNetwork) -> FlowResult {
    let mut engine = MaxFlowEngine::new(net);
    let no_removals = vec![false; net.arcs.len()];
    let value = engine.run(&no_removals);
    let result = engine.certified_result(net, &no_removals, value);
    assert_eq!(
        result.value, result.cut_capacity,
        "max-flow/min-cut mismatch; this is an engine bug"
    );
    result
}

/// Returns a copy of the network with the given interdictable arcs removed.
pub fn apply_interdiction(
    net: &FlowNetwork,
    arcs: &BTreeSet<usize>,
) -> Result<FlowNetwork, InterdictionError> {
    for &idx in arcs {
        let arc = net
            .arcs
            .get(idx)
            .ok_or(InterdictionError::IndexOutOfRange(idx))?;
        if !arc.interdictable {
            return Err(InterdictionError::NotInterdictable(idx));
        }
    }
    let remaining = net
        .arcs
        .iter()
        .enumerate()
        .filter(|(i, _)| !arcs.contains(i))
        .map(|(_, a)| *a)
        .collect();
    Ok(FlowNetwork {
        node_count: net.node_count,
        source: net.source,
        sink: net.sink,
        arcs: remaining,
    })
}

/// Result of the exhaustive interdiction oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterdictionOutcome {
    /// Minimum max-flow achievable within budget.
    pub value: u64,
    /// One minimizing interdiction set (sorted arc indices); the
    /// lexicographically smallest among all minimizers.
    pub witness: Vec<usize>,
    /// Number of interdiction sets evaluated.
    pub candidates_examined: u64,
}

/// Ground truth by exhaustion: the minimum, over every set of interdictable
/// arcs with total cost within budget, of the residual max flow. Refuses
/// instances with more than [`ORACLE_ARC_GUARD`] interdictable arcs.
pub fn oracle_min_interdicted_flow(
    inst: &InterdictionInstance,
) -> Result<InterdictionOutcome, EnumerationGuardError> {
    let candidates = inst.network.interdictable_arcs();
    if candidates.len() > ORACLE_ARC_GUARD {
        return Err(EnumerationGuardError::TooManyInterdictableArcs {
            found: candidates.len(),
            guard: ORACLE_ARC_GUARD,
        });
    }

    let mut engine = MaxFlowEngine::new(&inst.network);
    let mut search = SubsetSearch {
        network: &inst.network,
        budget: inst.budget,
        candidates: &candidates,
        engine: &mut engine,
        removed: vec![false; inst.network.arcs.len()],
        chosen: Vec::with_capacity(candidates.len()),
        best_value: u64::MAX,
        best_witness: Vec::new(),
        examined: 0,
    };
    search.descend(0, 0);
    Ok(InterdictionOutcome {
        value: search.best_value,
        witness: search.best_witness,
        candidates_examined: search.examined,
    })
}

/// Depth-first walk over interdiction sets in lexicographic order (as sorted
/// arc-index sequences), evaluating each set before extending it, so the
/// first set attaining the minimum is the lexicographically smallest.
struct SubsetSearch<'a> {
    network: &'a FlowNetwork,
    budget: u64,
    candidates: &'a [usize],
    engine: &'a mut MaxFlowEngine,
    removed: Vec<bool>,
    chosen: Vec<usize>,
    best_value: u64,
    best_witness: Vec<usize>,
    examined: u64,
}

impl SubsetSearch<'_> {
    fn descend(&mut self, next: usize, spent: u64) {
        self.examined += 1;
        let value = self.engine.run(&self.removed);
        if value < self.best_value {
            self.best_value = value;
            self.best_witness = self.chosen.clone();
        }
        if self.best_value == 0 {
            return; // nothing can beat an empty flow
        }
        for pos in next..self.candidates.len() {
            let arc = self.candidates[pos];
            let cost = self.network.arcs[arc].interdiction_cost;
            if spent + cost > self.budget {
                continue;
            }
            self.removed[arc] = true;
            self.chosen.push(arc);
            self.descend(pos + 1, spent + cost);
            self.chosen.pop();
            self.removed[arc] = false;
            if self.best_value == 0 {
                return;
            }
        }
    }
}

/// Reusable Edmonds-Karp engine. Built once per network; each `run` resets
/// residual capacities in place (honoring a removal mask) and reuses all
/// scratch buffers, so evaluating millions of interdiction subsets does not
/// allocate.
pub(crate) struct MaxFlowEngine {
    source: usize,
    sink: usize,
    /// Paired residual edges: arc k owns edges 2k (forward) and 2k+1 (back).
    edge_to: Vec<u32>,
    edge_cap: Vec<u64>,
    adj: Vec<Vec<u32>>,
    arc_caps: Vec<u64>,
    parent_edge: Vec<u32>,
    seen_token: Vec<u32>,
    token: u32,
    queue: Vec<u32>,
}

impl MaxFlowEngine {
    pub(crate) fn new(net: &FlowNetwork) -> Self {
        let n = net.node_count as usize;
        let mut adj = vec![Vec::new(); n];
        let mut edge_to = Vec::with_capacity(net.arcs.len() * 2);
        for (k, arc) in net.arcs.iter().enumerate() {
            adj[arc.tail as usize].push((2 * k) as u32);
            adj[arc.head as usize].push((2 * k + 1) as u32);
            edge_to.push(arc.head);
            edge_to.push(arc.tail);
        }
        Self {
            source: net.source as usize,
            sink: net.sink as usize,
            edge_cap: vec![0; edge_to.len()],
            edge_to,
            adj,
            arc_caps: net.arcs.iter().map(|a| a.capacity).collect(),
            parent_edge: vec![u32::MAX; n],
            seen_token: vec![0; n],
            token: 0,
            queue: Vec::with_capacity(n),
        }
    }

    /// Max-flow value with the masked arcs treated as absent.
    pub(crate) fn run(&mut self, removed: &[bool]) -> u64 {
        for (k, &cap) in self.arc_caps.iter().enumerate() {
            self.edge_cap[2 * k] = if removed[k] { 0 } else { cap };
            self.edge_cap[2 * k + 1] = 0;
        }
        let mut value = 0;
        while let Some(bottleneck) = self.augment() {
            value += bottleneck;
        }
        value
    }

    /// One BFS + augmentation; `None` when the sink is unreachable.
    fn augment(&mut self) -> Option<u64> {
        self.token += 1;
        self.queue.clear();
        self.queue.push(self.source as u32);
        self.seen_token[self.source] = self.token;
        let mut head = 0;
        let mut reached = false;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            if u == self.sink {
                reached = true;
                break;
            }
            for &e in &self.adj[u] {
                let v = self.edge_to[e as usize] as usize;
                if self.edge_cap[e as usize] > 0 && self.seen_token[v] != self.token {
                    self.seen_token[v] = self.token;
                    self.parent_edge[v] = e;
                    self.queue.push(v as u32);
                }
            }
        }
        if !reached {
            return None;
        }

        let mut bottleneck = u64::MAX;
        let mut v = self.sink;
        while v != self.source {
            let e = self.parent_edge[v] as usize;
            bottleneck = bottleneck.min(self.edge_cap[e]);
            v = self.edge_to[e ^ 1] as usize;
        }
        let mut v = self.sink;
        while v != self.source {
            let e = self.parent_edge[v] as usize;
            self.edge_cap[e] -= bottleneck;
            self.edge_cap[e ^ 1] += bottleneck;
            v = self.edge_to[e ^ 1] as usize;
        }
        Some(bottleneck)
    }

    /// Source side of the final residual graph (requires a completed `run`).
    fn residual_source_side(&mut self) -> Vec<u32> {
        self.token += 1;
        self.queue.clear();
        self.queue.push(self.source as u32);
        self.seen_token[self.source] = self.token;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            for &e in &self.adj[u] {
                let v = self.edge_to[e as usize] as usize;
                if self.edge_cap[e as usize] > 0 && self.seen_token[v] != self.token {
                    self.seen_token[v] = self.token;
                    self.queue.push(v as u32);
                }
            }
        }
        let mut side: Vec<u32> = self.queue.clone();
        side.sort_unstable();
        side
    }

    /// Full result with certificate for the state left by the last `run`.
    fn certified_result(&mut self, net: &FlowNetwork, removed: &[bool], value: u64) -> FlowResult {
        let arc_flows: Vec<u64> = (0..net.arcs.len())
            .map(|k| {
                if removed[k] {
                    0
                } else {
                    self.arc_caps[k] - self.edge_cap[2 * k]
                }
            })
            .collect();
        let source_side = self.residual_source_side();
        let in_side = |node: u32| source_side.binary_search(&node).is_ok();
        let cut_capacity = net
            .arcs
            .iter()
            .enumerate()
            .filter(|(k, a)| !removed[*k] && in_side(a.tail) && !in_side(a.head))
            .map(|(_, a)| a.capacity)
            .sum();
        FlowResult {
            value,
            arc_flows,
            source_side,
            cut_capacity,
        }
    }
}
