//! The relaxation-based decision procedures under study.
//!
//! Each procedure reduces its question (K-clique, 3-SAT, vertex cover) to a
//! budgeted interdiction target, solves the strengthened LP relaxation, and
//! answers yes exactly when the relaxation optimum hits the target and the
//! relevant variable group sums to an integer (the "integer settlement"
//! test). These functions report what the method answers, along with full
//! diagnostics — they never consult the brute-force oracles, so the harness
//! can adjudicate the two sides independently.

use num_traits::ToPrimitive;

use crate::cnf::CnfFormula;
use crate::formulations::{build_slp, PcmfnipModel};
use crate::graph::UndirectedGraph;
use crate::lp::{solve_lp, LpOptimum, Rational};
use crate::reductions::{
    clique_to_pcmfnip, sat_to_clique_graph, vc_to_clique, CliqueReduction, PairingMode,
    PcmfnipInstance, VcReductionError,
};

/// A yes/no verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionPath {
    /// The relaxation was solved and the settlement test applied.
    Relaxation,
    /// Target so small the answer is yes with no model at all (K <= 1).
    DegenerateYes,
    /// The graph lacks the edges any K-clique needs (C(K,2) > |E|).
    DegenerateNo,
}

/// Which variable groups must pass the integer-settlement test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SettlementMode {
    /// Only the vertex-node (gamma) group; the default.
    #[default]
    GammaOnly,
    /// Gamma and the edge-node (beta) group, the latter against the budget.
    GammaAndBeta,
}

/// One step of the rounding ledger: the picked variable, its fractional
/// value, and the integer residual left after crediting this pick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingPick {
    pub variable: usize,
    pub value: Rational,
    pub residual_after: Rational,
}

/// Full record of one integer-settlement run over a variable group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingTrace {
    /// The integer the group was asked to settle against (K or R).
    pub target: Rational,
    /// Exact sum of the group's values at the optimum.
    pub group_sum: Rational,
    /// Greedy picks in order (largest value first, lowest index on ties).
    /// Each pick retires one unit of the residual.
    pub picks: Vec<RoundingPick>,
    /// The full assignment with the group rounded: picked variables 1, the
    /// rest of the group 0, other variables untouched. `None` when the
    /// settlement test failed (non-integer group sum).
    pub rounded: Option<Vec<Rational>>,
}

/// The settlement test: passes iff the group's values sum to an exact
/// integer. On success the trace rounds the group to 0/1 by greedily picking
/// the largest-valued variables until the integer sum is spent, which
/// preserves the group sum exactly.
pub fn integer_settlement(
    optimum: &LpOptimum,
    group: &[usize],
    target: &Rational,
) -> (bool, RoundingTrace) {
    let group_sum: Rational = group.iter().map(|&g| optimum.assignment[g].clone()).sum();
    let mut trace = RoundingTrace {
        target: target.clone(),
        group_sum: group_sum.clone(),
        picks: Vec::new(),
        rounded: None,
    };
    if !group_sum.is_integer() {
        return (false, trace);
    }
    let total = group_sum
        .to_integer()
        .to_usize()
        .expect("group sums are small nonnegative integers");
    assert!(
        total <= group.len(),
        "group of {} variables cannot sum to {total} within [0,1] bounds",
        group.len()
    );

    let mut order: Vec<usize> = group.to_vec();
    order.sort_by(|&a, &b| {
        optimum.assignment[b]
            .cmp(&optimum.assignment[a])
            .then(a.cmp(&b))
    });
    let picked = &order[..total];

    let mut rounded = optimum.assignment.clone();
    for &g in group {
        rounded[g] = Rational::from_integer(0.into());
    }
    for (count, &g) in picked.iter().enumerate() {
        rounded[g] = Rational::from_integer(1.into());
        trace.picks.push(RoundingPick {
            variable: g,
            value: optimum.assignment[g].clone(),
            residual_after: &group_sum - Rational::from_integer(((count + 1) as i64).into()),
        });
    }
    trace.rounded = Some(rounded);
    (true, trace)
}

/// A decision-procedure verdict with everything needed to audit it: the
/// relaxation status and exact optimum, settlement traces, and which
/// covering rows the rounded point violates (diagnostics only — the answer
/// never depends on them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgoVerdict {
    pub answer: Answer,
    pub path: DecisionPath,
    /// The target value K the relaxation optimum was compared against.
    pub target: u32,
    /// The interdiction budget used, when a model was built.
    pub budget: Option<u64>,
    pub slp_status: Option<&'static str>,
    pub slp_optimum: Option<Rational>,
    pub settlement_passed: Option<bool>,
    pub gamma_trace: Option<RoundingTrace>,
    pub beta_trace: Option<RoundingTrace>,
    /// Labels of model rows violated by the rounded assignment.
    pub violated_rows: Vec<String>,
}

impl AlgoVerdict {
    fn degenerate(answer: Answer, path: DecisionPath, target: u32) -> Self {
        Self {
            answer,
            path,
            target,
            budget: None,
            slp_status: None,
            slp_optimum: None,
            settlement_passed: None,
            gamma_trace: None,
            beta_trace: None,
            violated_rows: Vec::new(),
        }
    }
}

/// The interdiction decision procedure: solve the strengthened relaxation,
/// answer yes iff its optimum equals the target exactly and the settlement
/// test passes for the configured variable groups.
pub fn decide_pcmfnip(
    inst: &PcmfnipInstance,
    budget: u64,
    target: u32,
    settlement: SettlementMode,
) -> AlgoVerdict {
    let built = build_slp(inst, budget, target);
    let mut verdict = AlgoVerdict {
        answer: Answer::No,
        path: DecisionPath::Relaxation,
        target,
        budget: Some(budget),
        slp_status: None,
        slp_optimum: None,
        settlement_passed: None,
        gamma_trace: None,
        beta_trace: None,
        violated_rows: Vec::new(),
    };

    let solution = solve_lp(&built.model);
    verdict.slp_status = Some(solution.status_name());
    let Some(optimum) = solution.optimum() else {
        return verdict;
    };
    verdict.slp_optimum = Some(optimum.value.clone());

    let target_rat = Rational::from_integer((target as i64).into());
    let (gamma_passed, gamma_trace) = integer_settlement(optimum, &built.gamma, &target_rat);
    let mut passed = gamma_passed;
    let mut rounded_point = gamma_trace.rounded.clone();
    verdict.gamma_trace = Some(gamma_trace);

    if settlement == SettlementMode::GammaAndBeta {
        let budget_rat = Rational::from_integer((budget as i64).into());
        let (beta_passed, beta_trace) = integer_settlement(optimum, &built.beta, &budget_rat);
        passed &= beta_passed;
        if let (Some(point), Some(beta_rounded)) = (&mut rounded_point, &beta_trace.rounded) {
            for &b in &built.beta {
                point[b] = beta_rounded[b].clone();
            }
        }
        verdict.beta_trace = Some(beta_trace);
    }
    verdict.settlement_passed = Some(passed);
    if let Some(point) = &rounded_point {
        verdict.violated_rows = violated_labels(&built, point);
    }

    if optimum.value == target_rat && passed {
        verdict.answer = Answer::Yes;
    }
    verdict
}

fn violated_labels(built: &PcmfnipModel, point: &[Rational]) -> Vec<String> {
    built
        .model
        .violated_constraints(point)
        .into_iter()
        .map(|i| built.model.constraints()[i].label.clone())
        .collect()
}

/// The clique decision procedure: degenerate targets short-circuit (K <= 1
/// is always satisfiable, and a graph with fewer than C(K,2) edges cannot
/// hold a K-clique); otherwise reduce to interdiction with budget
/// |E| - C(K,2) and delegate to [`decide_pcmfnip`].
pub fn decide_clique(g: &UndirectedGraph, k: u32, settlement: SettlementMode) -> AlgoVerdict {
    match clique_to_pcmfnip(g, k) {
        CliqueReduction::Degenerate(reason) => {
            use crate::reductions::DegenerateClique::*;
            match reason {
                TargetTooSmall => {
                    AlgoVerdict::degenerate(Answer::Yes, DecisionPath::DegenerateYes, k)
                }
                NotEnoughEdges => {
                    AlgoVerdict::degenerate(Answer::No, DecisionPath::DegenerateNo, k)
                }
            }
        }
        CliqueReduction::Reduced {
            instance, budget, ..
        } => decide_pcmfnip(&instance, budget, k, settlement),
    }
}

/// The maximum-clique procedure: try targets downward from the largest K
/// whose edge demand fits the graph (capped at |V|) and return the first
/// yes. An empty edge set yields K = 1 outright.
pub fn max_clique(g: &UndirectedGraph, settlement: SettlementMode) -> (u32, AlgoVerdict) {
    if g.edge_count() == 0 {
        return (1, decide_clique(g, 1, settlement));
    }
    let edges = g.edge_count() as u64;
    let mut upper = 2u32;
    while crate::reductions::clique_edge_demand(upper + 1) <= edges {
        upper += 1;
    }
    upper = upper.min(g.vertex_count());

    for k in (2..=upper).rev() {
        let verdict = decide_clique(g, k, settlement);
        if verdict.answer.is_yes() {
            return (k, verdict);
        }
    }
    (1, decide_clique(g, 1, settlement))
}

/// The satisfiability procedure: build the coupling graph and ask for a
/// clique of one vertex per clause.
pub fn decide_sat(
    formula: &CnfFormula,
    pairing: PairingMode,
    settlement: SettlementMode,
) -> AlgoVerdict {
    let (graph, target, _) = sat_to_clique_graph(formula, pairing);
    decide_clique(&graph, target, settlement)
}

/// The vertex-cover procedure: a size-K cover exists iff the complement
/// graph has a clique on |V| - K vertices.
pub fn decide_vertex_cover(
    g: &UndirectedGraph,
    k: u32,
    settlement: SettlementMode,
) -> Result<AlgoVerdict, VcReductionError> {
    let (complement, target, _) = vc_to_clique(g, k)?;
    Ok(decide_clique(&complement, target, settlement))
}
