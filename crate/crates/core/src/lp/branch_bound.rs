//! Depth-first branch-and-bound for 0/1 and general integer programs.
//!
//! Branching picks the integrality-flagged variable whose fractional part is
//! closest to 1/2 (lowest index on ties) and explores the floor branch
//! first. Nodes are pruned when their relaxation cannot strictly beat the
//! incumbent, so the first optimal incumbent found in DFS order is the one
//! reported — making witnesses deterministic.

use num_traits::Signed;

use super::{
    solve_lp_with_bounds, IpSolution, LpModel, LpOptimum, LpSolution, Rational,
};

/// Solves the model as an integer program: integrality-flagged variables are
/// forced to exact integers, the rest stay continuous.
///
/// A model without any integrality flag degenerates to a single LP solve. If
/// any node's relaxation is unbounded the whole problem is reported
/// unbounded (a superset of an unbounded region is unbounded).
pub fn solve_ip(model: &LpModel) -> IpSolution {
    model
        .validate()
        .expect("solve_ip requires a well-formed model");

    let mut search = Search {
        model,
        lower: model.variables().iter().map(|v| v.lower.clone()).collect(),
        upper: model.variables().iter().map(|v| v.upper.clone()).collect(),
        best: None,
        node_count: 0,
        unbounded: false,
    };
    search.explore();

    let outcome = if search.unbounded {
        LpSolution::Unbounded
    } else {
        match search.best {
            Some(opt) => LpSolution::Optimal(opt),
            None => LpSolution::Infeasible,
        }
    };
    IpSolution {
        outcome,
        node_count: search.node_count,
    }
}

struct Search<'a> {
    model: &'a LpModel,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    best: Option<LpOptimum>,
    node_count: u64,
    unbounded: bool,
}

impl Search<'_> {
    fn explore(&mut self) {
        if self.unbounded {
            return;
        }
        self.node_count += 1;
        let relaxation = solve_lp_with_bounds(self.model, &self.lower, &self.upper);
        let opt = match relaxation {
            LpSolution::Infeasible => return,
            LpSolution::Unbounded => {
                self.unbounded = true;
                return;
            }
            LpSolution::Optimal(opt) => opt,
        };

        // The relaxation value bounds every integral completion below; prune
        // unless this subtree can strictly improve on the incumbent.
        if let Some(best) = &self.best {
            if opt.value >= best.value {
                return;
            }
        }

        match self.branch_variable(&opt) {
            None => self.best = Some(opt),
            Some(j) => {
                let value = opt.assignment[j].clone();
                let floor = value.floor();
                drop(opt);

                let saved = self.upper[j].clone();
                self.upper[j] = Some(floor.clone());
                self.explore();
                self.upper[j] = saved;

                let saved = self.lower[j].clone();
                self.lower[j] = Some(floor + Rational::from_integer(1.into()));
                self.explore();
                self.lower[j] = saved;
            }
        }
    }

    /// The integrality-flagged variable with fractional value closest to
    /// 1/2, lowest index on ties; `None` when the assignment is integral.
    fn branch_variable(&self, opt: &LpOptimum) -> Option<usize> {
        let half = super::rat(1, 2);
        let mut best: Option<(Rational, usize)> = None;
        for (j, variable) in self.model.variables().iter().enumerate() {
            if !variable.integral {
                continue;
            }
            let value = &opt.assignment[j];
            if value.is_integer() {
                continue;
            }
            let fractional = value - value.floor();
            let distance = (fractional - &half).abs();
            let closer = match &best {
                None => true,
                Some((best_distance, _)) => distance < *best_distance,
            };
            if closer {
                best = Some((distance, j));
            }
        }
        best.map(|(_, j)| j)
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::super::{rat, rat_int, Constraint, LpModel, Relation, Variable};
    use super::*;
    use crate::lp::solve_lp;

    #[test]
    fn rounding_forced_up() {
        let mut m = LpModel::new();
        m.add_variable(Variable::binary("x"));
        m.set_objective(vec![rat_int(1)]);
        m.add_constraint(Constraint::new(
            "floor",
            vec![rat_int(1)],
            Relation::Ge,
            rat(1, 2),
        ));
        let sol = solve_ip(&m);
        let opt = sol.optimum().expect("feasible");
        assert_eq!(opt.value, rat_int(1));
        assert_eq!(opt.assignment, vec![rat_int(1)]);
    }

    #[test]
    fn integrality_gap_of_one_half() {
        let mut m = LpModel::new();
        m.add_variable(Variable::binary("x1"));
        m.add_variable(Variable::binary("x2"));
        m.set_objective(vec![rat_int(1), rat_int(1)]);
        m.add_constraint(Constraint::new(
            "sum",
            vec![rat_int(1), rat_int(1)],
            Relation::Ge,
            rat(3, 2),
        ));
        let relaxed = solve_lp(&m);
        assert_eq!(relaxed.optimum().expect("feasible").value, rat(3, 2));
        let integral = solve_ip(&m);
        assert_eq!(integral.optimum().expect("feasible").value, rat_int(2));
        assert!(integral.node_count >= 1);
    }

    #[test]
    fn infeasible_ip() {
        let mut m = LpModel::new();
        m.add_variable(Variable::binary("x"));
        m.set_objective(vec![rat_int(1)]);
        m.add_constraint(Constraint::new(
            "narrow",
            vec![rat_int(2)],
            Relation::Eq,
            rat_int(1),
        ));
        assert_eq!(solve_ip(&m).outcome, LpSolution::Infeasible);
    }

    #[test]
    fn no_flags_degenerates_to_lp() {
        let mut m = LpModel::new();
        m.add_variable(Variable::unit_interval("x"));
        m.set_objective(vec![rat_int(1)]);
        m.add_constraint(Constraint::new(
            "floor",
            vec![rat_int(1)],
            Relation::Ge,
            rat(1, 3),
        ));
        let sol = solve_ip(&m);
        assert_eq!(sol.node_count, 1);
        assert_eq!(sol.optimum().expect("feasible").value, rat(1, 3));
    }

    /// Random 0/1 minimization models with small integer data.
    fn random_binary_model(rng: &mut ChaCha8Rng) -> LpModel {
        let n = rng.gen_range(1..=12usize);
        let rows = rng.gen_range(0..=10usize);
        let mut m = LpModel::new();
        for j in 0..n {
            m.add_variable(Variable::binary(format!("x{j}")));
        }
        m.set_objective((0..n).map(|_| rat_int(rng.gen_range(-3..=3))).collect());
        for r in 0..rows {
            let coeffs: Vec<_> = (0..n).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
            let relation = match rng.gen_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Ge,
                _ => Relation::Eq,
            };
            let rhs = rat_int(rng.gen_range(-4..=4));
            m.add_constraint(Constraint::new(format!("r{r}"), coeffs, relation, rhs));
        }
        m
    }

    /// Exhaustive 0/1 enumeration: the obviously-correct reference.
    fn enumerate_binary_optimum(m: &LpModel) -> Option<Rational> {
        let n = m.variable_count();
        let mut best: Option<Rational> = None;
        for mask in 0u32..(1 << n) {
            let assignment: Vec<Rational> = (0..n)
                .map(|j| rat_int(((mask >> j) & 1) as i64))
                .collect();
            if !m.is_feasible(&assignment) {
                continue;
            }
            let value = m.evaluate_objective(&assignment);
            if best.as_ref().is_none_or(|b| value < *b) {
                best = Some(value);
            }
        }
        best
    }

    #[test]
    fn matches_exhaustive_enumeration_on_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for _ in 0..200 {
            let m = random_binary_model(&mut rng);
            let expected = enumerate_binary_optimum(&m);
            let got = solve_ip(&m);
            match (expected, got.optimum()) {
                (Some(value), Some(opt)) => {
                    assert_eq!(opt.value, value, "model: {m:?}");
                    assert!(m.is_feasible(&opt.assignment));
                    assert!(opt.assignment.iter().all(|x| x.is_integer()));
                }
                (None, None) => assert_eq!(got.outcome, LpSolution::Infeasible),
                (expected, got) => panic!("oracle {expected:?} vs solver {got:?} on {m:?}"),
            }
        }
    }

    #[test]
    fn relaxation_never_exceeds_integer_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let mut compared = 0;
        for _ in 0..60 {
            let m = random_binary_model(&mut rng);
            let (relaxed, integral) = (solve_lp(&m), solve_ip(&m));
            if let (Some(lp), Some(ip)) = (relaxed.optimum(), integral.optimum()) {
                assert!(lp.value <= ip.value, "bound violated on {m:?}");
                compared += 1;
            }
        }
        assert!(compared > 0, "seed produced no feasible pairs");
    }

    #[test]
    fn determinism_bit_for_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
        let m = random_binary_model(&mut rng);
        assert_eq!(solve_ip(&m), solve_ip(&m));
    }
}
