//! Exact linear and integer programming over arbitrary-precision rationals.
//!
//! Everything here is exact: no floating point, no tolerances. The LP solver
//! is a bounded-variable primal simplex with Bland's anti-cycling rule; the
//! IP solver is depth-first branch-and-bound on top of it. Both are
//! deterministic: identical models produce bit-identical solutions.
//!
//! The intended scale is small ("desk scale", up to a couple hundred
//! variables); there is no presolve, no sparse algebra, and no attempt to be
//! fast beyond what exhaustive test suites need.

mod branch_bound;
mod dump;
mod simplex;

pub use branch_bound::solve_ip;
pub use dump::dump_model;
pub use simplex::solve_lp;

pub(crate) use simplex::solve_lp_with_bounds;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for `num/den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Shorthand for an integer-valued [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// A decision variable. Missing bounds mean unbounded in that direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    pub integral: bool,
}

impl Variable {
    pub fn continuous(
        name: impl Into<String>,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> Self {
        Self {
            name: name.into(),
            lower,
            upper,
            integral: false,
        }
    }

    /// Continuous variable in `[0, 1]`.
    pub fn unit_interval(name: impl Into<String>) -> Self {
        Self::continuous(name, Some(rat_int(0)), Some(rat_int(1)))
    }

    /// Integral 0/1 variable.
    pub fn binary(name: impl Into<String>) -> Self {
        Self {
            integral: true,
            ..Self::unit_interval(name)
        }
    }
}

/// A linear constraint with a dense coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(
        label: impl Into<String>,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Self {
        Self {
            label: label.into(),
            coeffs,
            relation,
            rhs,
        }
    }

    /// Builds a dense constraint from sparse `(variable index, coefficient)`
    /// terms. Repeated indices accumulate.
    pub fn from_terms(
        label: impl Into<String>,
        variable_count: usize,
        terms: &[(usize, Rational)],
        relation: Relation,
        rhs: Rational,
    ) -> Self {
        let mut coeffs = vec![rat_int(0); variable_count];
        for (idx, coeff) in terms {
            coeffs[*idx] += coeff;
        }
        Self::new(label, coeffs, relation, rhs)
    }

    /// Exact left-hand-side value at `assignment`.
    pub fn lhs(&self, assignment: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(assignment)
            .map(|(c, x)| c * x)
            .sum()
    }

    pub fn satisfied_by(&self, assignment: &[Rational]) -> bool {
        let lhs = self.lhs(assignment);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A minimization model: variables with bounds and integrality flags, dense
/// linear constraints, and a dense objective.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LpModel {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    objective: Vec<Rational>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("model has no variables")]
    NoVariables,
    #[error("objective has {found} coefficients for {expected} variables")]
    ObjectiveLength { expected: usize, found: usize },
    #[error("constraint {label:?} has {found} coefficients for {expected} variables")]
    CoefficientLength {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("variable {name:?} has lower bound above upper bound")]
    BoundOrder { name: String },
}

impl LpModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable and returns its column index. The objective
    /// coefficient defaults to 0 until [`set_objective`](Self::set_objective).
    pub fn add_variable(&mut self, variable: Variable) -> usize {
        self.variables.push(variable);
        self.variables.len() - 1
    }

    pub fn set_objective(&mut self, coeffs: Vec<Rational>) {
        self.objective = coeffs;
    }

    pub fn add_constraint(&mut self, constraint: Constraint) {
        self.constraints.push(constraint);
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.variables.len();
        if n == 0 {
            return Err(ModelError::NoVariables);
        }
        if self.objective.len() != n {
            return Err(ModelError::ObjectiveLength {
                expected: n,
                found: self.objective.len(),
            });
        }
        for v in &self.variables {
            if let (Some(lo), Some(hi)) = (&v.lower, &v.upper) {
                if lo > hi {
                    return Err(ModelError::BoundOrder {
                        name: v.name.clone(),
                    });
                }
            }
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(ModelError::CoefficientLength {
                    label: c.label.clone(),
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }

    /// Exact objective value at `assignment`.
    pub fn evaluate_objective(&self, assignment: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(assignment)
            .map(|(c, x)| c * x)
            .sum()
    }

    /// Indices of constraints violated by `assignment` (bounds not checked).
    pub fn violated_constraints(&self, assignment: &[Rational]) -> Vec<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.satisfied_by(assignment))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `assignment` respects every variable bound.
    pub fn within_bounds(&self, assignment: &[Rational]) -> bool {
        self.variables.iter().zip(assignment).all(|(v, x)| {
            v.lower.as_ref().is_none_or(|lo| x >= lo)
                && v.upper.as_ref().is_none_or(|hi| x <= hi)
        })
    }

    /// Full feasibility check: bounds and every constraint, exactly.
    pub fn is_feasible(&self, assignment: &[Rational]) -> bool {
        self.within_bounds(assignment) && self.violated_constraints(assignment).is_empty()
    }
}

/// Result of an exact LP solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal(LpOptimum),
    Infeasible,
    Unbounded,
}

/// An exact optimal solution: the objective value and one optimal assignment
/// in variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOptimum {
    pub value: Rational,
    pub assignment: Vec<Rational>,
}

impl LpSolution {
    pub fn optimum(&self) -> Option<&LpOptimum> {
        match self {
            LpSolution::Optimal(opt) => Some(opt),
            _ => None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, LpSolution::Optimal(_))
    }

    pub fn status_name(&self) -> &'static str {
        match self {
            LpSolution::Optimal(_) => "optimal",
            LpSolution::Infeasible => "infeasible",
            LpSolution::Unbounded => "unbounded",
        }
    }
}

/// Result of a branch-and-bound solve. When `outcome` is optimal, every
/// integrality-flagged variable holds an exact integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpSolution {
    pub outcome: LpSolution,
    /// Number of branch-and-bound nodes explored (= LP relaxations solved).
    pub node_count: u64,
}

impl IpSolution {
    pub fn optimum(&self) -> Option<&LpOptimum> {
        self.outcome.optimum()
    }
}
