//! Experiment harness: resolves instance sources, runs the decision
//! procedures and their matching oracles side by side, and assembles
//! canonical reports. Disagreement between the two sides is a finding to
//! record, never an error; only operational problems (unreadable files,
//! tripped guards) surface as errors.

pub mod instances;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use thiserror::Error;

use crate::cnf::{parse_dimacs_cnf, CnfFormula};
use crate::decision::{
    decide_clique, decide_pcmfnip, decide_sat, decide_vertex_cover, max_clique, AlgoVerdict,
    DecisionPath, SettlementMode,
};
use crate::flow::{
    oracle_min_interdicted_flow, parse_network, FlowNetwork, InterdictionInstance,
};
use crate::formulations::build_mfnip_ip;
use crate::graph::{parse_dimacs_graph, UndirectedGraph};
use crate::lp::{solve_ip, Rational};
use crate::oracles::{
    oracle_clique, oracle_max_clique, oracle_sat, oracle_vertex_cover, OracleAnswer,
};
use crate::reductions::{clique_edge_demand, PairingMode, PcmfnipInstance};
use instances::{
    enumerate_formulas, enumerate_graphs_up_to, generate_random_formula, generate_random_graph,
    generate_random_network, InstanceError,
};
use report::{
    instance_digest, rational_string, AlgorithmRecord, ExperimentDescriptor, InstanceRecord,
    OracleRecord, Report,
};

/// Environment variable selecting how many worker threads adjudicate
/// instances; unset or 1 means sequential.
pub const WORKERS_ENV: &str = "INTERDICTION_LAB_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Clique,
    MaxClique,
    Sat,
    VertexCover,
    Pcmfnip,
    Mfnip,
}

impl Problem {
    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Clique => "clique",
            Problem::MaxClique => "maxclique",
            Problem::Sat => "sat",
            Problem::VertexCover => "vc",
            Problem::Pcmfnip => "pcmfnip",
            Problem::Mfnip => "mfnip",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "clique" => Problem::Clique,
            "maxclique" => Problem::MaxClique,
            "sat" => Problem::Sat,
            "vc" => Problem::VertexCover,
            "pcmfnip" => Problem::Pcmfnip,
            "mfnip" => Problem::Mfnip,
            _ => return None,
        })
    }
}

/// Where instances come from. Random sources always carry their seed; the
/// triple reads (n, p, seed) for graphs and networks and
/// (variables, clauses, seed) for formulas.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    Exhaustive { max_size: u32 },
    Random { n: u32, p: f64, seed: u64 },
}

impl InstanceSource {
    pub fn describe(&self) -> String {
        match self {
            InstanceSource::File(path) => format!("file:{}", path.display()),
            InstanceSource::Exhaustive { max_size } => format!("exhaustive:{max_size}"),
            InstanceSource::Random { n, p, seed } => format!("random:{n},{p},{seed}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub source: InstanceSource,
    pub k: Option<u32>,
    pub r: Option<u64>,
    pub pairing: PairingMode,
    pub settlement: SettlementMode,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse {what}: {message}")]
    Parse {
        what: &'static str,
        message: String,
    },
    #[error("this run requires --{0}")]
    MissingParameter(&'static str),
    #[error(transparent)]
    Instances(#[from] InstanceError),
    #[error("unsupported source: {0}")]
    UnsupportedSource(String),
    #[error("invalid report field: {0}")]
    BadDescriptor(String),
}

/// One concrete instance, in memory.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Graph(UndirectedGraph),
    Formula(CnfFormula),
    Network(FlowNetwork),
}

impl Instance {
    /// Canonical serialized text — the form stored in reports and hashed
    /// into digests.
    pub fn text(&self) -> String {
        match self {
            Instance::Graph(g) => g.to_dimacs(),
            Instance::Formula(f) => f.to_dimacs(),
            Instance::Network(n) => n.to_dump(),
        }
    }

    /// Parses the serialized form back, choosing the format by problem.
    pub fn parse(problem: Problem, text: &str) -> Result<Self, HarnessError> {
        Ok(match problem {
            Problem::Sat => Instance::Formula(parse_dimacs_cnf(text).map_err(|e| {
                HarnessError::Parse {
                    what: "CNF formula",
                    message: e.to_string(),
                }
            })?),
            Problem::Mfnip => Instance::Network(parse_network(text).map_err(|e| {
                HarnessError::Parse {
                    what: "flow network",
                    message: e.to_string(),
                }
            })?),
            _ => Instance::Graph(parse_dimacs_graph(text).map_err(|e| HarnessError::Parse {
                what: "graph",
                message: e.to_string(),
            })?),
        })
    }
}

fn pairing_name(mode: PairingMode) -> &'static str {
    match mode {
        PairingMode::AllPairs => "all",
        PairingMode::Succeeding => "succeeding",
    }
}

fn parse_pairing(name: &str) -> Result<PairingMode, HarnessError> {
    match name {
        "all" => Ok(PairingMode::AllPairs),
        "succeeding" => Ok(PairingMode::Succeeding),
        other => Err(HarnessError::BadDescriptor(format!(
            "unknown pairing mode {other:?}"
        ))),
    }
}

fn settlement_name(mode: SettlementMode) -> &'static str {
    match mode {
        SettlementMode::GammaOnly => "off",
        SettlementMode::GammaAndBeta => "on",
    }
}

fn parse_settlement(name: &str) -> Result<SettlementMode, HarnessError> {
    match name {
        "off" => Ok(SettlementMode::GammaOnly),
        "on" => Ok(SettlementMode::GammaAndBeta),
        other => Err(HarnessError::BadDescriptor(format!(
            "unknown beta-settlement switch {other:?}"
        ))),
    }
}

fn path_name(path: DecisionPath) -> &'static str {
    match path {
        DecisionPath::Relaxation => "relaxation",
        DecisionPath::DegenerateYes => "degenerate-yes",
        DecisionPath::DegenerateNo => "degenerate-no",
    }
}

fn descriptor(config: &ExperimentConfig) -> ExperimentDescriptor {
    ExperimentDescriptor {
        problem: config.problem.as_str().to_string(),
        source: config.source.describe(),
        k: config.k,
        r: config.r,
        pairing: pairing_name(config.pairing).to_string(),
        beta_settlement: settlement_name(config.settlement).to_string(),
    }
}

fn verdict_record(verdict: &AlgoVerdict) -> AlgorithmRecord {
    AlgorithmRecord {
        answer: Some(verdict.answer.as_str().to_string()),
        value: None,
        path: Some(path_name(verdict.path).to_string()),
        lp_status: verdict.slp_status.map(str::to_string),
        slp_optimum: verdict.slp_optimum.as_ref().map(rational_string),
        settlement_passed: verdict.settlement_passed,
        violated_rows: verdict.violated_rows.clone(),
        node_count: None,
    }
}

fn yes_no(answer: bool) -> String {
    if answer { "yes" } else { "no" }.to_string()
}

fn oracle_record<W>(
    answer: &OracleAnswer<W>,
    witness_json: impl Fn(&W) -> serde_json::Value,
) -> OracleRecord {
    OracleRecord {
        answer: Some(yes_no(answer.answer)),
        value: None,
        witness: answer.witness.as_ref().map(witness_json),
        work_count: Some(answer.work_count),
    }
}

fn vertices_json(set: &std::collections::BTreeSet<u32>) -> serde_json::Value {
    serde_json::Value::from(set.iter().copied().collect::<Vec<u32>>())
}

fn bools_json(bits: &Vec<bool>) -> serde_json::Value {
    serde_json::Value::from(bits.clone())
}

fn arcs_json(arcs: &[usize]) -> serde_json::Value {
    serde_json::Value::from(arcs.iter().map(|&a| a as u64).collect::<Vec<u64>>())
}

type Sides = (
    AlgorithmRecord,
    OracleRecord,
    Option<bool>,
    Option<String>,
);

fn clique_sides(
    g: &UndirectedGraph,
    k: u32,
    settlement: SettlementMode,
) -> Sides {
    let verdict = decide_clique(g, k, settlement);
    let algorithm = verdict_record(&verdict);
    match oracle_clique(g, k) {
        Ok(answer) => {
            let agreement = Some(verdict.answer.is_yes() == answer.answer);
            (algorithm, oracle_record(&answer, vertices_json), agreement, None)
        }
        Err(e) => (algorithm, OracleRecord::default(), None, Some(e.to_string())),
    }
}

fn maxclique_sides(g: &UndirectedGraph, settlement: SettlementMode) -> Sides {
    let (found, verdict) = max_clique(g, settlement);
    let mut algorithm = verdict_record(&verdict);
    algorithm.value = Some(found.to_string());
    match oracle_max_clique(g) {
        Ok((truth, answer)) => {
            let mut oracle = oracle_record(&answer, vertices_json);
            oracle.value = Some(truth.to_string());
            (algorithm, oracle, Some(found == truth), None)
        }
        Err(e) => (algorithm, OracleRecord::default(), None, Some(e.to_string())),
    }
}

fn sat_sides(
    formula: &CnfFormula,
    pairing: PairingMode,
    settlement: SettlementMode,
) -> Sides {
    let verdict = decide_sat(formula, pairing, settlement);
    let algorithm = verdict_record(&verdict);
    match oracle_sat(formula) {
        Ok(answer) => {
            let agreement = Some(verdict.answer.is_yes() == answer.answer);
            (algorithm, oracle_record(&answer, bools_json), agreement, None)
        }
        Err(e) => (algorithm, OracleRecord::default(), None, Some(e.to_string())),
    }
}

fn vc_sides(g: &UndirectedGraph, k: u32, settlement: SettlementMode) -> Sides {
    let verdict = match decide_vertex_cover(g, k, settlement) {
        Ok(v) => v,
        Err(e) => {
            // The oracle rejects the same out-of-range targets.
            return (
                AlgorithmRecord::default(),
                OracleRecord::default(),
                None,
                Some(e.to_string()),
            );
        }
    };
    let algorithm = verdict_record(&verdict);
    match oracle_vertex_cover(g, k) {
        Ok(answer) => {
            let agreement = Some(verdict.answer.is_yes() == answer.answer);
            (algorithm, oracle_record(&answer, vertices_json), agreement, None)
        }
        Err(e) => (algorithm, OracleRecord::default(), None, Some(e.to_string())),
    }
}

fn pcmfnip_sides(
    g: &UndirectedGraph,
    k: u32,
    r: u64,
    settlement: SettlementMode,
) -> Sides {
    let inst = PcmfnipInstance::from_graph(g);
    let verdict = decide_pcmfnip(&inst, r, k, settlement);
    let algorithm = verdict_record(&verdict);
    let interdiction = InterdictionInstance::new(inst.network().clone(), r);
    match oracle_min_interdicted_flow(&interdiction) {
        Ok(outcome) => {
            let oracle_yes = outcome.value == k as u64;
            let oracle = OracleRecord {
                answer: Some(yes_no(oracle_yes)),
                value: Some(outcome.value.to_string()),
                witness: Some(arcs_json(&outcome.witness)),
                work_count: Some(outcome.candidates_examined),
            };
            let agreement = Some(verdict.answer.is_yes() == oracle_yes);
            (algorithm, oracle, agreement, None)
        }
        Err(e) => (algorithm, OracleRecord::default(), None, Some(e.to_string())),
    }
}

fn mfnip_sides(net: &FlowNetwork, r: u64) -> Sides {
    let built = build_mfnip_ip(net, r);
    let ip = solve_ip(&built.model);
    let mut algorithm = AlgorithmRecord {
        lp_status: Some(ip.outcome.status_name().to_string()),
        node_count: Some(ip.node_count),
        ..AlgorithmRecord::default()
    };
    if let Some(opt) = ip.optimum() {
        algorithm.value = Some(rational_string(&opt.value));
    }
    let interdiction = InterdictionInstance::new(net.clone(), r);
    match oracle_min_interdicted_flow(&interdiction) {
        Ok(outcome) => {
            let oracle = OracleRecord {
                answer: None,
                value: Some(outcome.value.to_string()),
                witness: Some(arcs_json(&outcome.witness)),
                work_count: Some(outcome.candidates_examined),
            };
            let agreement = Some(ip.optimum().map_or(false, |opt| {
                opt.value == Rational::from_integer(outcome.value.into())
            }));
            (algorithm, oracle, agreement, None)
        }
        Err(e) => (algorithm, OracleRecord::default(), None, Some(e.to_string())),
    }
}

/// Adjudicates one instance: runs the configured decision procedure and the
/// matching oracle, and packages both sides into a report record.
pub fn adjudicate_instance(
    problem: Problem,
    pairing: PairingMode,
    settlement: SettlementMode,
    instance: &Instance,
    k: Option<u32>,
    r: Option<u64>,
) -> InstanceRecord {
    let start = Instant::now();
    let text = instance.text();
    let (algorithm, oracle, agreement, error) = match (problem, instance) {
        (Problem::Clique, Instance::Graph(g)) => {
            clique_sides(g, k.expect("clique requires K"), settlement)
        }
        (Problem::MaxClique, Instance::Graph(g)) => maxclique_sides(g, settlement),
        (Problem::Sat, Instance::Formula(f)) => sat_sides(f, pairing, settlement),
        (Problem::VertexCover, Instance::Graph(g)) => {
            vc_sides(g, k.expect("vc requires K"), settlement)
        }
        (Problem::Pcmfnip, Instance::Graph(g)) => pcmfnip_sides(
            g,
            k.expect("pcmfnip requires K"),
            r.expect("pcmfnip requires R"),
            settlement,
        ),
        (Problem::Mfnip, Instance::Network(net)) => {
            mfnip_sides(net, r.expect("mfnip requires R"))
        }
        (problem, instance) => unreachable!(
            "instance kind {instance:?} cannot reach problem {}",
            problem.as_str()
        ),
    };
    InstanceRecord {
        digest: instance_digest(problem.as_str(), &text, k, r),
        problem: problem.as_str().to_string(),
        instance: text,
        k,
        r,
        algorithm,
        oracle,
        agreement,
        error,
        elapsed_micros: start.elapsed().as_micros() as u64,
    }
}

/// Clique targets worth adjudicating on a graph: every K from 2 up whose
/// edge demand the graph meets.
pub fn valid_clique_targets(g: &UndirectedGraph) -> Vec<u32> {
    (2..=g.vertex_count())
        .filter(|&k| clique_edge_demand(k) <= g.edge_count() as u64)
        .collect()
}

fn resolve_instances(config: &ExperimentConfig) -> Result<Vec<Instance>, HarnessError> {
    match &config.source {
        InstanceSource::File(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            Ok(vec![Instance::parse(config.problem, &text)?])
        }
        InstanceSource::Exhaustive { max_size } => match config.problem {
            Problem::Sat => Ok(enumerate_formulas(4, *max_size)?
                .map(Instance::Formula)
                .collect()),
            Problem::Mfnip => Err(HarnessError::UnsupportedSource(
                "mfnip has no exhaustive enumeration; use --input or --random".into(),
            )),
            _ => Ok(enumerate_graphs_up_to(*max_size)?
                .map(Instance::Graph)
                .collect()),
        },
        InstanceSource::Random { n, p, seed } => match config.problem {
            Problem::Sat => {
                if p.fract() != 0.0 || *p < 1.0 {
                    return Err(HarnessError::Parse {
                        what: "random source argument",
                        message: format!(
                            "for sat the middle field is the clause count and must be a positive integer, got {p}"
                        ),
                    });
                }
                Ok(vec![Instance::Formula(generate_random_formula(
                    *n, *p as u32, *seed,
                )?)])
            }
            Problem::Mfnip => {
                let max_arcs = ((*p * (*n as f64) * (*n as f64 - 1.0)).ceil() as u32).max(1);
                Ok(vec![Instance::Network(generate_random_network(
                    *n, max_arcs, *seed,
                )?)])
            }
            _ => Ok(vec![Instance::Graph(generate_random_graph(*n, *p, *seed)?)]),
        },
    }
}

type WorkItem = (Instance, Option<u32>, Option<u64>);

fn expand(config: &ExperimentConfig, instances: Vec<Instance>) -> Result<Vec<WorkItem>, HarnessError> {
    let mut items = Vec::new();
    for instance in instances {
        match config.problem {
            Problem::Clique => {
                let ks = match (config.k, &instance) {
                    (Some(k), _) => vec![k],
                    (None, Instance::Graph(g)) => valid_clique_targets(g),
                    _ => unreachable!("clique instances are graphs"),
                };
                for k in ks {
                    items.push((instance.clone(), Some(k), None));
                }
            }
            Problem::VertexCover => {
                let ks = match (config.k, &instance) {
                    (Some(k), _) => vec![k],
                    (None, Instance::Graph(g)) => (0..=g.vertex_count()).collect(),
                    _ => unreachable!("vc instances are graphs"),
                };
                for k in ks {
                    items.push((instance.clone(), Some(k), None));
                }
            }
            Problem::MaxClique | Problem::Sat => {
                if config.k.is_some() {
                    log::warn!("--k is ignored for {}", config.problem.as_str());
                }
                items.push((instance, None, None));
            }
            Problem::Pcmfnip => {
                let k = config.k.ok_or(HarnessError::MissingParameter("k"))?;
                let r = config.r.ok_or(HarnessError::MissingParameter("r"))?;
                items.push((instance, Some(k), Some(r)));
            }
            Problem::Mfnip => {
                let r = config.r.ok_or(HarnessError::MissingParameter("r"))?;
                items.push((instance, None, Some(r)));
            }
        }
    }
    Ok(items)
}

fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

fn adjudicate_all(config: &ExperimentConfig, items: &[WorkItem]) -> Vec<InstanceRecord> {
    let workers = worker_count().min(items.len().max(1));
    let run_item = |(instance, k, r): &WorkItem| {
        adjudicate_instance(
            config.problem,
            config.pairing,
            config.settlement,
            instance,
            *k,
            *r,
        )
    };
    if workers <= 1 {
        return items.iter().map(run_item).collect();
    }
    // Round-robin split; records regain canonical order in the final sort.
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    items
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .map(run_item)
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("adjudication worker panicked"))
            .collect()
    })
}

/// Runs a full experiment: every instance from the source is adjudicated
/// (for clique and vertex cover without an explicit K, across the whole
/// valid target range) and the outcome is assembled into a canonical
/// report. Oracle guard trips are recorded per instance; the run continues.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report, HarnessError> {
    let instances = resolve_instances(config)?;
    let items = expand(config, instances)?;
    let records = adjudicate_all(config, &items);
    Ok(Report::assemble(descriptor(config), records))
}

/// Scans a clique instance space for disagreements between the decision
/// procedure and the oracle, keeping only the disagreement records (with
/// full replay data) while counting the whole scan in the summary. The
/// budget caps how many graphs are drawn from the source; a zero budget
/// scans nothing. Deterministic for a fixed source and seed.
pub fn search_counterexamples(
    config: &ExperimentConfig,
    budget: u64,
) -> Result<Report, HarnessError> {
    if config.problem != Problem::Clique {
        return Err(HarnessError::UnsupportedSource(
            "counterexample search adjudicates the clique procedure; use the other subcommands for full reports".into(),
        ));
    }
    let graphs: Box<dyn Iterator<Item = Result<UndirectedGraph, HarnessError>>> =
        match &config.source {
            InstanceSource::File(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                match Instance::parse(config.problem, &text)? {
                    Instance::Graph(g) => Box::new(std::iter::once(Ok(g))),
                    _ => unreachable!("clique instances are graphs"),
                }
            }
            InstanceSource::Exhaustive { max_size } => {
                Box::new(enumerate_graphs_up_to(*max_size)?.map(Ok))
            }
            InstanceSource::Random { n, p, seed } => {
                let (n, p, seed) = (*n, *p, *seed);
                Box::new(
                    (0..budget).map(move |i| {
                        generate_random_graph(n, p, seed + i).map_err(HarnessError::from)
                    }),
                )
            }
        };

    let mut scanned = 0u64;
    let mut agreements = 0u64;
    let mut errors = 0u64;
    let mut disagreements = Vec::new();
    for graph in graphs.take(budget as usize) {
        let graph = graph?;
        let ks = match config.k {
            Some(k) => vec![k],
            None => valid_clique_targets(&graph),
        };
        let instance = Instance::Graph(graph);
        for k in ks {
            let record = adjudicate_instance(
                config.problem,
                config.pairing,
                config.settlement,
                &instance,
                Some(k),
                None,
            );
            scanned += 1;
            match record.agreement {
                Some(true) => agreements += 1,
                Some(false) => disagreements.push(record),
                None => errors += 1,
            }
        }
    }
    Ok(Report::assemble_with_scan(
        descriptor(config),
        disagreements,
        scanned,
        agreements,
        errors,
    ))
}

/// Re-runs both sides of a recorded adjudication from its serialized
/// instance and parameters, under the switches in the report's experiment
/// descriptor. The result is a fresh record; everything except the timing
/// must reproduce the original.
pub fn replay_record(
    experiment: &ExperimentDescriptor,
    record: &InstanceRecord,
) -> Result<InstanceRecord, HarnessError> {
    let problem = Problem::parse(&record.problem).ok_or_else(|| {
        HarnessError::BadDescriptor(format!("unknown problem {:?}", record.problem))
    })?;
    let pairing = parse_pairing(&experiment.pairing)?;
    let settlement = parse_settlement(&experiment.beta_settlement)?;
    let instance = Instance::parse(problem, &record.instance)?;
    Ok(adjudicate_instance(
        problem, pairing, settlement, &instance, record.k, record.r,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(problem: Problem, source: InstanceSource) -> ExperimentConfig {
        ExperimentConfig {
            problem,
            source,
            k: None,
            r: None,
            pairing: PairingMode::AllPairs,
            settlement: SettlementMode::GammaOnly,
        }
    }

    fn graph_instance(g: UndirectedGraph) -> Instance {
        Instance::Graph(g)
    }

    #[test]
    fn triangle_clique_run_agrees() {
        let record = adjudicate_instance(
            Problem::Clique,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &graph_instance(UndirectedGraph::complete(3)),
            Some(3),
            None,
        );
        assert_eq!(record.agreement, Some(true));
        assert_eq!(record.algorithm.answer.as_deref(), Some("yes"));
        assert_eq!(record.oracle.answer.as_deref(), Some("yes"));
        assert_eq!(record.error, None);
    }

    #[test]
    fn bipartite_k33_disagrees_on_triangle_target() {
        let record = adjudicate_instance(
            Problem::Clique,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &graph_instance(UndirectedGraph::complete_bipartite(3, 3)),
            Some(3),
            None,
        );
        assert_eq!(record.agreement, Some(false));
        assert_eq!(record.algorithm.answer.as_deref(), Some("yes"));
        assert_eq!(record.oracle.answer.as_deref(), Some("no"));
        assert_eq!(record.algorithm.slp_optimum.as_deref(), Some("3/1"));
    }

    #[test]
    fn exhaustive_clique_report_has_no_false_negatives() {
        let cfg = config(
            Problem::Clique,
            InstanceSource::Exhaustive { max_size: 4 },
        );
        let report = run_experiment(&cfg).unwrap();
        assert!(report.summary.instances > 0);
        for record in &report.records {
            let algo_no = record.algorithm.answer.as_deref() == Some("no");
            let oracle_yes = record.oracle.answer.as_deref() == Some("yes");
            assert!(
                !(algo_no && oracle_yes),
                "false negative on {}",
                record.instance
            );
        }
    }

    #[test]
    fn search_finds_the_bipartite_disagreement() {
        let mut cfg = config(
            Problem::Clique,
            InstanceSource::Exhaustive { max_size: 4 },
        );
        cfg.k = Some(3);
        // All graphs up to 4 vertices at K=3: agreements everywhere except
        // the two-triangle-free cases the relaxation overestimates, if any.
        let report = search_counterexamples(&cfg, u64::MAX).unwrap();
        assert_eq!(
            report.summary.agreements + report.summary.disagreements + report.summary.errors,
            report.summary.instances
        );
        // Every kept record is a disagreement with replay data.
        for record in &report.records {
            assert_eq!(record.agreement, Some(false));
            assert!(!record.instance.is_empty());
        }
    }

    #[test]
    fn zero_budget_search_is_empty() {
        let mut cfg = config(
            Problem::Clique,
            InstanceSource::Exhaustive { max_size: 4 },
        );
        cfg.k = Some(3);
        let report = search_counterexamples(&cfg, 0).unwrap();
        assert_eq!(report.summary.instances, 0);
        assert!(report.records.is_empty());
    }

    #[test]
    fn replay_reproduces_records() {
        let cfg = ExperimentConfig {
            problem: Problem::Clique,
            source: InstanceSource::Exhaustive { max_size: 3 },
            k: None,
            r: None,
            pairing: PairingMode::AllPairs,
            settlement: SettlementMode::GammaOnly,
        };
        let report = run_experiment(&cfg).unwrap();
        for record in &report.records {
            let replayed = replay_record(&report.experiment, record).unwrap();
            let mut original = record.clone();
            let mut fresh = replayed;
            original.elapsed_micros = 0;
            fresh.elapsed_micros = 0;
            assert_eq!(original, fresh);
        }
    }

    #[test]
    fn mfnip_adjudication_compares_values() {
        let net = parse_network("4 0 3\n0 1 5 1 1\n1 3 4 1 1\n0 2 2 1 0\n2 3 2 1 0\n").unwrap();
        let record = adjudicate_instance(
            Problem::Mfnip,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &Instance::Network(net),
            None,
            Some(1),
        );
        assert_eq!(record.agreement, Some(true));
        assert!(record.algorithm.value.is_some());
        assert!(record.oracle.value.is_some());
        assert!(record.algorithm.node_count.is_some());
    }

    #[test]
    fn pcmfnip_adjudication_records_both_sides() {
        let record = adjudicate_instance(
            Problem::Pcmfnip,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &graph_instance(UndirectedGraph::complete(3)),
            Some(3),
            Some(0),
        );
        assert_eq!(record.agreement, Some(true));
        assert_eq!(record.oracle.value.as_deref(), Some("3"));

        // Full budget: the procedure still says yes, the oracle reaches 0.
        let record = adjudicate_instance(
            Problem::Pcmfnip,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &graph_instance(UndirectedGraph::complete(3)),
            Some(3),
            Some(3),
        );
        assert_eq!(record.agreement, Some(false));
        assert_eq!(record.oracle.value.as_deref(), Some("0"));
    }

    #[test]
    fn sat_and_vc_and_maxclique_adjudicate() {
        let formula =
            crate::cnf::parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
        let record = adjudicate_instance(
            Problem::Sat,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &Instance::Formula(formula),
            None,
            None,
        );
        assert_eq!(record.agreement, Some(true));

        let record = adjudicate_instance(
            Problem::VertexCover,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &graph_instance(UndirectedGraph::path(3)),
            Some(1),
            None,
        );
        assert_eq!(record.agreement, Some(true));

        let record = adjudicate_instance(
            Problem::MaxClique,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &graph_instance(UndirectedGraph::complete_bipartite(3, 3)),
            None,
            None,
        );
        assert_eq!(record.agreement, Some(false));
        assert_eq!(record.algorithm.value.as_deref(), Some("4"));
        assert_eq!(record.oracle.value.as_deref(), Some("2"));
    }

    #[test]
    fn guard_trips_are_recorded_not_fatal() {
        // 26 vertices at K=13 exceeds the clique oracle guard.
        let big = UndirectedGraph::complete(26);
        let record = adjudicate_instance(
            Problem::Clique,
            PairingMode::AllPairs,
            SettlementMode::GammaOnly,
            &graph_instance(big),
            Some(13),
            None,
        );
        assert_eq!(record.agreement, None);
        assert!(record.error.is_some());
    }

    #[test]
    fn missing_parameters_are_operational_errors() {
        let cfg = config(
            Problem::Mfnip,
            InstanceSource::Random {
                n: 5,
                p: 0.5,
                seed: 1,
            },
        );
        assert!(matches!(
            run_experiment(&cfg),
            Err(HarnessError::MissingParameter("r"))
        ));
    }

    #[test]
    fn reports_are_deterministic() {
        let mut cfg = config(
            Problem::Clique,
            InstanceSource::Exhaustive { max_size: 3 },
        );
        cfg.k = Some(2);
        let a = run_experiment(&cfg).unwrap().with_zeroed_timings();
        let b = run_experiment(&cfg).unwrap().with_zeroed_timings();
        assert_eq!(a, b);
    }

    #[test]
    fn random_sources_resolve_reproducibly() {
        let cfg = config(
            Problem::Sat,
            InstanceSource::Random {
                n: 4,
                p: 3.0,
                seed: 11,
            },
        );
        let a = run_experiment(&cfg).unwrap().with_zeroed_timings();
        let b = run_experiment(&cfg).unwrap().with_zeroed_timings();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 1);
    }
}
