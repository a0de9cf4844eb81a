//! Builders for the three optimization models the project studies.
//!
//! For a general flow network there is the cut-based interdiction integer
//! program (one dual-style row per arc plus a path row and a budget row).
//! For the two-layer instances there is a compact integer program (one
//! covering row per vertex node plus a budget row) and its strengthened LP
//! relaxation, which drops integrality, keeps all bounds in [0,1], and adds
//! the row "sum of vertex-node variables >= K".
//!
//! Variable order is canonical — all gamma variables first, then all beta
//! variables (alpha/beta/gamma for the cut model) — so the deterministic
//! solver yields reproducible fractional solutions.

use crate::flow::FlowNetwork;
use crate::lp::{rat_int, Constraint, LpModel, Relation, Variable};
use crate::reductions::PcmfnipInstance;

/// The cut-based interdiction IP for a general network: minimize the
/// capacity of uninterdicted arcs crossing the chosen cut.
#[derive(Debug, Clone)]
pub struct MfnipModel {
    pub model: LpModel,
    /// Node -> index of its cut-side variable.
    pub alpha: Vec<usize>,
    /// Arc -> index of its interdiction variable.
    pub beta: Vec<usize>,
    /// Arc -> index of its crossing variable.
    pub gamma: Vec<usize>,
}

/// Builds the cut-based interdiction IP. Every variable is 0/1; the source's
/// cut variable is pinned to 0 and the sink's to 1 (and the explicit
/// path row `alpha_sink - alpha_source >= 1` is kept alongside, so the model
/// shape is one row per arc plus two special rows). Interdiction variables
/// of non-interdictable arcs are fixed to 0.
pub fn build_mfnip_ip(net: &FlowNetwork, budget: u64) -> MfnipModel {
    let mut model = LpModel::new();

    let alpha: Vec<usize> = (0..net.node_count)
        .map(|v| {
            let mut var = Variable::binary(format!("a{v}"));
            if v == net.source {
                var.upper = Some(rat_int(0));
            }
            if v == net.sink {
                var.lower = Some(rat_int(1));
            }
            model.add_variable(var)
        })
        .collect();
    let beta: Vec<usize> = net
        .arcs
        .iter()
        .enumerate()
        .map(|(k, arc)| {
            let mut var = Variable::binary(format!("b{k}"));
            if !arc.interdictable {
                var.upper = Some(rat_int(0));
            }
            model.add_variable(var)
        })
        .collect();
    let gamma: Vec<usize> = (0..net.arcs.len())
        .map(|k| model.add_variable(Variable::binary(format!("g{k}"))))
        .collect();

    let n = model.variable_count();
    let mut objective = vec![rat_int(0); n];
    for (k, arc) in net.arcs.iter().enumerate() {
        objective[gamma[k]] = rat_int(arc.capacity as i64);
    }
    model.set_objective(objective);

    // One row per arc: crossing the cut tail-side to sink-side must be paid
    // for by interdiction (beta) or by counting the arc (gamma).
    for (k, arc) in net.arcs.iter().enumerate() {
        model.add_constraint(Constraint::from_terms(
            format!("arc{k}"),
            n,
            &[
                (alpha[arc.tail as usize], rat_int(1)),
                (alpha[arc.head as usize], rat_int(-1)),
                (beta[k], rat_int(1)),
                (gamma[k], rat_int(1)),
            ],
            Relation::Ge,
            rat_int(0),
        ));
    }
    model.add_constraint(Constraint::from_terms(
        "path",
        n,
        &[
            (alpha[net.sink as usize], rat_int(1)),
            (alpha[net.source as usize], rat_int(-1)),
        ],
        Relation::Ge,
        rat_int(1),
    ));
    let budget_terms: Vec<(usize, _)> = net
        .arcs
        .iter()
        .enumerate()
        .map(|(k, arc)| (beta[k], rat_int(arc.interdiction_cost as i64)))
        .collect();
    model.add_constraint(Constraint::from_terms(
        "budget",
        n,
        &budget_terms,
        Relation::Le,
        rat_int(budget as i64),
    ));

    MfnipModel {
        model,
        alpha,
        beta,
        gamma,
    }
}

/// Whether a two-layer model is the integer program or its strengthened
/// relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcmfnipMode {
    IntegerProgram,
    Slp,
}

/// The compact two-layer model: gamma variables indexed by vertex nodes
/// (A2), beta variables by edge nodes (A1).
#[derive(Debug, Clone)]
pub struct PcmfnipModel {
    pub model: LpModel,
    /// A2 index -> gamma variable index.
    pub gamma: Vec<usize>,
    /// A1 index -> beta variable index.
    pub beta: Vec<usize>,
    pub mode: PcmfnipMode,
}

fn build_pcmfnip_rows(
    inst: &PcmfnipInstance,
    budget: u64,
    mode: PcmfnipMode,
) -> PcmfnipModel {
    let mut model = LpModel::new();
    let make_var = |name: String| match mode {
        PcmfnipMode::IntegerProgram => Variable::binary(name),
        PcmfnipMode::Slp => Variable::unit_interval(name),
    };

    let gamma: Vec<usize> = (0..inst.a2_count())
        .map(|i| model.add_variable(make_var(format!("g{}", i + 1))))
        .collect();
    let beta: Vec<usize> = (0..inst.a1_count())
        .map(|j| model.add_variable(make_var(format!("b{}", j + 1))))
        .collect();

    let n = model.variable_count();
    let mut objective = vec![rat_int(0); n];
    for &g in &gamma {
        objective[g] = rat_int(1);
    }
    model.set_objective(objective);

    let budget_terms: Vec<(usize, _)> = beta.iter().map(|&b| (b, rat_int(1))).collect();
    model.add_constraint(Constraint::from_terms(
        "budget",
        n,
        &budget_terms,
        Relation::Le,
        rat_int(budget as i64),
    ));

    // One covering row per vertex node: either it still receives its unit of
    // flow (gamma pays its full degree) or every incident edge node is
    // interdicted. Degree-0 vertex nodes yield the vacuous row 0 >= 0.
    for (i, &g) in gamma.iter().enumerate() {
        let degree = inst.a2_degree(i) as i64;
        let mut terms = vec![(g, rat_int(degree))];
        for j in inst.a2_neighbors(i) {
            terms.push((beta[j], rat_int(1)));
        }
        model.add_constraint(Constraint::from_terms(
            format!("cover{}", i + 1),
            n,
            &terms,
            Relation::Ge,
            rat_int(degree),
        ));
    }

    PcmfnipModel {
        model,
        gamma,
        beta,
        mode,
    }
}

/// The two-layer interdiction IP: minimize the number of vertex nodes still
/// fed, subject to the interdiction budget. All variables 0/1.
pub fn build_pcmfnip_ip(inst: &PcmfnipInstance, budget: u64) -> PcmfnipModel {
    build_pcmfnip_rows(inst, budget, PcmfnipMode::IntegerProgram)
}

/// The strengthened LP relaxation: same rows as the IP, bounds relaxed to
/// [0,1] with no integrality, plus the strengthening row requiring the gamma
/// variables to sum to at least the target K.
pub fn build_slp(inst: &PcmfnipInstance, budget: u64, target: u32) -> PcmfnipModel {
    let mut built = build_pcmfnip_rows(inst, budget, PcmfnipMode::Slp);
    let n = built.model.variable_count();
    let terms: Vec<(usize, _)> = built.gamma.iter().map(|&g| (g, rat_int(1))).collect();
    built.model.add_constraint(Constraint::from_terms(
        "strengthen",
        n,
        &terms,
        Relation::Ge,
        rat_int(target as i64),
    ));
    built
}
