//! Bounded-variable primal simplex over exact rationals.
//!
//! Two phases: phase 1 drives artificial variables to zero from a slack
//! crash basis, phase 2 optimizes the real objective. Entering variables are
//! chosen by Bland's rule (lowest eligible index) and ratio-test ties break
//! toward the lowest basic variable index, so the method terminates and is
//! fully deterministic. Nonbasic variables may rest at either bound; a step
//! that is limited by the entering variable's own span becomes a bound flip
//! instead of a basis change.

use num_traits::{Signed, Zero};

use super::{LpModel, LpOptimum, LpSolution, Rational, Relation};

/// Where a column currently lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnState {
    Basic(usize),
    AtLower,
    AtUpper,
    /// No finite bound on either side; rests at zero while nonbasic.
    Free,
}

struct Tableau {
    /// Rows over all columns (structural, slack, artificial); the basis
    /// columns always form an identity submatrix.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    state: Vec<ColumnState>,
    /// Row index -> basic column.
    basis: Vec<usize>,
    artificials: Vec<usize>,
}

enum LoopEnd {
    Optimal,
    Unbounded,
}

/// Solves the model's LP relaxation (integrality flags ignored).
pub fn solve_lp(model: &LpModel) -> LpSolution {
    let lower: Vec<_> = model.variables().iter().map(|v| v.lower.clone()).collect();
    let upper: Vec<_> = model.variables().iter().map(|v| v.upper.clone()).collect();
    solve_lp_with_bounds(model, &lower, &upper)
}

/// Solves the LP relaxation with the given bounds in place of the model's
/// own (used by branch-and-bound to explore subproblems without rebuilding
/// the model).
pub(crate) fn solve_lp_with_bounds(
    model: &LpModel,
    lower: &[Option<Rational>],
    upper: &[Option<Rational>],
) -> LpSolution {
    model
        .validate()
        .expect("solve_lp requires a well-formed model");
    for (lo, hi) in lower.iter().zip(upper) {
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if lo > hi {
                return LpSolution::Infeasible;
            }
        }
    }

    let mut tableau = Tableau::build(model, lower, upper);

    if !tableau.artificials.is_empty() {
        let mut phase1_cost = vec![Rational::zero(); tableau.column_count()];
        for &a in &tableau.artificials {
            phase1_cost[a] = super::rat_int(1);
        }
        match tableau.run(&phase1_cost) {
            LoopEnd::Optimal => {}
            LoopEnd::Unbounded => unreachable!("phase-1 objective is bounded below by zero"),
        }
        let values = tableau.values();
        let infeasibility: Rational = tableau.artificials.iter().map(|&a| values[a].clone()).sum();
        if !infeasibility.is_zero() {
            return LpSolution::Infeasible;
        }
        tableau.retire_artificials();
    }

    let mut phase2_cost = vec![Rational::zero(); tableau.column_count()];
    phase2_cost[..model.variable_count()].clone_from_slice(model.objective());
    match tableau.run(&phase2_cost) {
        LoopEnd::Unbounded => LpSolution::Unbounded,
        LoopEnd::Optimal => {
            let values = tableau.values();
            let assignment: Vec<Rational> = values[..model.variable_count()].to_vec();
            assert!(
                model.is_feasible(&assignment),
                "simplex returned an infeasible point; this is a solver bug"
            );
            LpSolution::Optimal(LpOptimum {
                value: model.evaluate_objective(&assignment),
                assignment,
            })
        }
    }
}

impl Tableau {
    fn build(model: &LpModel, lower: &[Option<Rational>], upper: &[Option<Rational>]) -> Self {
        let n = model.variable_count();
        let m = model.constraints().len();
        let cols = n + m;

        let mut rows = vec![vec![Rational::zero(); cols]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut col_lower: Vec<Option<Rational>> = lower.to_vec();
        let mut col_upper: Vec<Option<Rational>> = upper.to_vec();

        for (i, c) in model.constraints().iter().enumerate() {
            rows[i][..n].clone_from_slice(&c.coeffs);
            rows[i][n + i] = super::rat_int(1);
            rhs.push(c.rhs.clone());
            // Slack bounds encode the relation: Ax + s = b with s >= 0 for
            // <=, s <= 0 for >=, s = 0 for =.
            let (lo, hi) = match c.relation {
                Relation::Le => (Some(Rational::zero()), None),
                Relation::Ge => (None, Some(Rational::zero())),
                Relation::Eq => (Some(Rational::zero()), Some(Rational::zero())),
            };
            col_lower.push(lo);
            col_upper.push(hi);
        }

        let state: Vec<ColumnState> = (0..cols)
            .map(|j| match (&col_lower[j], &col_upper[j]) {
                (Some(_), _) => ColumnState::AtLower,
                (None, Some(_)) => ColumnState::AtUpper,
                (None, None) => ColumnState::Free,
            })
            .collect();

        let mut tableau = Self {
            rows,
            rhs,
            lower: col_lower,
            upper: col_upper,
            state,
            basis: vec![usize::MAX; m],
            artificials: Vec::new(),
        };

        // Crash basis: make each slack basic where its implied value fits
        // its bounds, otherwise clamp the slack to its nearest bound and
        // cover the residual with a fresh artificial.
        for i in 0..m {
            let slack = n + i;
            let implied = {
                let mut v = tableau.rhs[i].clone();
                for j in 0..tableau.column_count() {
                    if j != slack && !tableau.rows[i][j].is_zero() {
                        v -= &tableau.rows[i][j] * tableau.nonbasic_value(j);
                    }
                }
                v
            };
            let fits_lower = tableau.lower[slack]
                .as_ref()
                .is_none_or(|lo| &implied >= lo);
            let fits_upper = tableau.upper[slack]
                .as_ref()
                .is_none_or(|hi| &implied <= hi);
            if fits_lower && fits_upper {
                tableau.basis[i] = slack;
                tableau.state[slack] = ColumnState::Basic(i);
            } else {
                // All slack bounds are zero, so the clamped slack value is 0
                // and the full residual goes to the artificial. Negating the
                // row when the residual is negative keeps every basis column
                // at coefficient +1, the invariant `values` relies on.
                tableau.state[slack] = if fits_upper {
                    ColumnState::AtLower
                } else {
                    ColumnState::AtUpper
                };
                if implied.is_negative() {
                    for x in tableau.rows[i].iter_mut() {
                        if !x.is_zero() {
                            *x = -x.clone();
                        }
                    }
                    tableau.rhs[i] = -tableau.rhs[i].clone();
                }
                let a = tableau.push_column(super::rat_int(1), i);
                tableau.basis[i] = a;
                tableau.artificials.push(a);
            }
        }
        tableau
    }

    fn push_column(&mut self, coeff_in_row: Rational, row: usize) -> usize {
        let col = self.column_count();
        for (i, r) in self.rows.iter_mut().enumerate() {
            r.push(if i == row {
                coeff_in_row.clone()
            } else {
                Rational::zero()
            });
        }
        self.lower.push(Some(Rational::zero()));
        self.upper.push(None);
        self.state.push(ColumnState::Basic(row));
        col
    }

    fn column_count(&self) -> usize {
        self.lower.len()
    }

    fn row_count(&self) -> usize {
        self.rows.len()
    }

    fn nonbasic_value(&self, j: usize) -> Rational {
        match self.state[j] {
            ColumnState::AtLower => self.lower[j].clone().expect("AtLower requires a bound"),
            ColumnState::AtUpper => self.upper[j].clone().expect("AtUpper requires a bound"),
            ColumnState::Free => Rational::zero(),
            ColumnState::Basic(_) => unreachable!("basic column has no resting bound"),
        }
    }

    /// Current values of all columns: nonbasic at their resting bound,
    /// basic from the row equations.
    fn values(&self) -> Vec<Rational> {
        let mut values: Vec<Rational> = (0..self.column_count())
            .map(|j| match self.state[j] {
                ColumnState::Basic(_) => Rational::zero(),
                _ => self.nonbasic_value(j),
            })
            .collect();
        for i in 0..self.row_count() {
            let mut v = self.rhs[i].clone();
            for j in 0..self.column_count() {
                if j != self.basis[i] && !self.rows[i][j].is_zero() {
                    v -= &self.rows[i][j] * &values[j];
                }
            }
            values[self.basis[i]] = v;
        }
        values
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut reduced = cost.to_vec();
        for i in 0..self.row_count() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.column_count() {
                if !self.rows[i][j].is_zero() {
                    let delta = cb * &self.rows[i][j];
                    reduced[j] -= delta;
                }
            }
        }
        reduced
    }

    fn is_fixed(&self, j: usize) -> bool {
        matches!((&self.lower[j], &self.upper[j]), (Some(lo), Some(hi)) if lo == hi)
    }

    /// Runs simplex iterations under `cost` until no eligible entering
    /// column remains (optimal for that cost) or the problem is unbounded.
    fn run(&mut self, cost: &[Rational]) -> LoopEnd {
        // Bland's rule guarantees termination; the cap is a tripwire for
        // implementation bugs, generous enough for desk-scale models.
        let cap = 10_000 + 200 * (self.row_count() + self.column_count());
        for _ in 0..cap {
            let values = self.values();
            let reduced = self.reduced_costs(cost);

            let mut entering: Option<(usize, bool)> = None; // (column, moves up)
            for j in 0..self.column_count() {
                if matches!(self.state[j], ColumnState::Basic(_)) || self.is_fixed(j) {
                    continue;
                }
                let up_improves = reduced[j].is_negative();
                let down_improves = reduced[j].is_positive();
                let eligible = match self.state[j] {
                    ColumnState::AtLower => up_improves.then_some(true),
                    ColumnState::AtUpper => down_improves.then_some(false),
                    ColumnState::Free => {
                        if up_improves {
                            Some(true)
                        } else if down_improves {
                            Some(false)
                        } else {
                            None
                        }
                    }
                    ColumnState::Basic(_) => unreachable!(),
                };
                if let Some(up) = eligible {
                    entering = Some((j, up));
                    break;
                }
            }
            let Some((q, moves_up)) = entering else {
                return LoopEnd::Optimal;
            };

            // Ratio test: smallest step before some basic variable hits a
            // bound; ties resolved toward the lowest basic column index.
            let mut blocking: Option<(Rational, usize, bool)> = None; // (step, row, leaves to upper)
            for i in 0..self.row_count() {
                let a = &self.rows[i][q];
                if a.is_zero() {
                    continue;
                }
                let b = self.basis[i];
                // Basic value changes at rate -a when the entering column
                // moves up, +a when it moves down.
                let decreasing = if moves_up {
                    a.is_positive()
                } else {
                    a.is_negative()
                };
                let (limit, to_upper) = if decreasing {
                    (&self.lower[b], false)
                } else {
                    (&self.upper[b], true)
                };
                let Some(limit) = limit else { continue };
                let gap = if decreasing {
                    &values[b] - limit
                } else {
                    limit - &values[b]
                };
                let step = gap / a.abs();
                let better = match &blocking {
                    None => true,
                    Some((best, row, _)) => {
                        step < *best || (step == *best && b < self.basis[*row])
                    }
                };
                if better {
                    blocking = Some((step, i, to_upper));
                }
            }

            let span = match (&self.lower[q], &self.upper[q]) {
                (Some(lo), Some(hi)) => Some(hi - lo),
                _ => None,
            };

            // When the entering column hits its own far bound first there is
            // no basis change, just a flip of its resting bound.
            let flips = match (&span, &blocking) {
                (Some(span), Some((step, _, _))) => span <= step,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if flips {
                self.state[q] = match self.state[q] {
                    ColumnState::AtLower => ColumnState::AtUpper,
                    ColumnState::AtUpper => ColumnState::AtLower,
                    other => unreachable!("flip of non-bounded state {other:?}"),
                };
            } else if let Some((_, row, to_upper)) = blocking {
                self.pivot(row, q, to_upper);
            } else {
                return LoopEnd::Unbounded;
            }
        }
        panic!("simplex iteration cap exceeded; this is a solver bug");
    }

    fn pivot(&mut self, row: usize, entering: usize, leaving_to_upper: bool) {
        let leaving = self.basis[row];
        let pivot = self.rows[row][entering].clone();
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x /= &pivot;
            }
        }
        self.rhs[row] /= &pivot;

        let pivot_row = self.rows[row].clone();
        let rhs_pivot = self.rhs[row].clone();
        for i in 0..self.row_count() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][entering].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &rhs_pivot;
        }

        self.basis[row] = entering;
        self.state[entering] = ColumnState::Basic(row);
        self.state[leaving] = if leaving_to_upper {
            ColumnState::AtUpper
        } else {
            ColumnState::AtLower
        };
    }

    /// After a successful phase 1: pivot surviving artificials out of the
    /// basis where possible and fix every artificial to zero so phase 2 can
    /// never revive one. An artificial stuck basic in an all-zero row marks
    /// a redundant constraint and harmlessly stays basic at zero.
    fn retire_artificials(&mut self) {
        let first_artificial = *self.artificials.first().expect("nonempty");
        for idx in 0..self.artificials.len() {
            let a = self.artificials[idx];
            if let ColumnState::Basic(row) = self.state[a] {
                let replacement = (0..first_artificial).find(|&j| {
                    !matches!(self.state[j], ColumnState::Basic(_))
                        && !self.is_fixed(j)
                        && !self.rows[row][j].is_zero()
                });
                if let Some(j) = replacement {
                    // Degenerate pivot: the artificial sits at zero, so no
                    // value moves and feasibility is untouched.
                    self.pivot(row, j, false);
                    self.state[a] = ColumnState::AtLower;
                }
            }
        }
        for idx in 0..self.artificials.len() {
            let a = self.artificials[idx];
            self.upper[a] = Some(Rational::zero());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int, Constraint, LpModel, Relation, Variable};
    use super::*;

    fn single_var_model(lower: i64, upper: i64, min_rhs: i64) -> LpModel {
        let mut m = LpModel::new();
        m.add_variable(Variable::continuous(
            "x",
            Some(rat_int(lower)),
            Some(rat_int(upper)),
        ));
        m.set_objective(vec![rat_int(1)]);
        m.add_constraint(Constraint::new(
            "floor",
            vec![rat_int(1)],
            Relation::Ge,
            rat_int(min_rhs),
        ));
        m
    }

    #[test]
    fn minimize_x_above_three() {
        let sol = solve_lp(&single_var_model(0, 10, 3));
        let opt = sol.optimum().expect("feasible");
        assert_eq!(opt.value, rat_int(3));
        assert_eq!(opt.assignment, vec![rat_int(3)]);
    }

    #[test]
    fn infeasible_when_bound_blocks_constraint() {
        assert_eq!(solve_lp(&single_var_model(0, 1, 3)), LpSolution::Infeasible);
    }

    #[test]
    fn fractional_optimum_is_exact() {
        let mut m = LpModel::new();
        m.add_variable(Variable::unit_interval("x1"));
        m.add_variable(Variable::unit_interval("x2"));
        m.set_objective(vec![rat_int(1), rat_int(1)]);
        m.add_constraint(Constraint::new(
            "sum",
            vec![rat_int(1), rat_int(1)],
            Relation::Ge,
            rat(3, 2),
        ));
        let sol = solve_lp(&m);
        let opt = sol.optimum().expect("feasible");
        assert_eq!(opt.value, rat(3, 2));
        let total: Rational = opt.assignment.iter().cloned().sum();
        assert_eq!(total, rat(3, 2));
    }

    #[test]
    fn unbounded_below() {
        let mut m = LpModel::new();
        m.add_variable(Variable::continuous("x", Some(rat_int(0)), None));
        m.set_objective(vec![rat_int(-1)]);
        m.add_constraint(Constraint::new(
            "floor",
            vec![rat_int(1)],
            Relation::Ge,
            rat_int(0),
        ));
        assert_eq!(solve_lp(&m), LpSolution::Unbounded);
    }

    #[test]
    fn free_variable_settles_on_constraint() {
        let mut m = LpModel::new();
        m.add_variable(Variable::continuous("x", None, None));
        m.set_objective(vec![rat_int(1)]);
        m.add_constraint(Constraint::new(
            "floor",
            vec![rat_int(1)],
            Relation::Ge,
            rat_int(-5),
        ));
        let sol = solve_lp(&m);
        assert_eq!(sol.optimum().expect("feasible").value, rat_int(-5));
    }

    #[test]
    fn equality_constraint() {
        let mut m = LpModel::new();
        m.add_variable(Variable::unit_interval("x"));
        m.add_variable(Variable::unit_interval("y"));
        m.set_objective(vec![rat_int(1), rat_int(0)]);
        m.add_constraint(Constraint::new(
            "split",
            vec![rat_int(1), rat_int(1)],
            Relation::Eq,
            rat_int(1),
        ));
        let opt = solve_lp(&m);
        let opt = opt.optimum().expect("feasible");
        assert_eq!(opt.value, rat_int(0));
        assert_eq!(opt.assignment, vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn redundant_equalities_are_harmless() {
        let mut m = LpModel::new();
        m.add_variable(Variable::unit_interval("x"));
        m.add_variable(Variable::unit_interval("y"));
        m.set_objective(vec![rat_int(2), rat_int(3)]);
        for label in ["pair", "pair-again"] {
            m.add_constraint(Constraint::new(
                label,
                vec![rat_int(1), rat_int(1)],
                Relation::Eq,
                rat_int(1),
            ));
        }
        let sol = solve_lp(&m);
        assert_eq!(sol.optimum().expect("feasible").value, rat_int(2));
    }

    #[test]
    fn conflicting_equalities_are_infeasible() {
        let mut m = LpModel::new();
        m.add_variable(Variable::continuous("x", Some(rat_int(0)), Some(rat_int(9))));
        m.set_objective(vec![rat_int(1)]);
        m.add_constraint(Constraint::new("a", vec![rat_int(1)], Relation::Eq, rat_int(2)));
        m.add_constraint(Constraint::new("b", vec![rat_int(1)], Relation::Eq, rat_int(3)));
        assert_eq!(solve_lp(&m), LpSolution::Infeasible);
    }

    #[test]
    fn negative_rhs_ge_row() {
        // Exercises the artificial-variable path with sigma = -1.
        let mut m = LpModel::new();
        m.add_variable(Variable::continuous(
            "x",
            Some(rat_int(-10)),
            Some(rat_int(10)),
        ));
        m.set_objective(vec![rat_int(1)]);
        m.add_constraint(Constraint::new(
            "ceiling",
            vec![rat_int(1)],
            Relation::Le,
            rat_int(-4),
        ));
        let sol = solve_lp(&m);
        assert_eq!(sol.optimum().expect("feasible").value, rat_int(-10));
    }

    #[test]
    fn determinism_bit_for_bit() {
        let mut m = LpModel::new();
        for name in ["a", "b", "c"] {
            m.add_variable(Variable::unit_interval(name));
        }
        m.set_objective(vec![rat_int(1), rat_int(1), rat_int(1)]);
        m.add_constraint(Constraint::new(
            "cover",
            vec![rat_int(1), rat_int(2), rat_int(1)],
            Relation::Ge,
            rat(5, 2),
        ));
        let first = solve_lp(&m);
        let second = solve_lp(&m);
        assert_eq!(first, second);
    }
}
