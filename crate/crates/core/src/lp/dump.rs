//! Plain-text model dump for golden-file tests and debugging.
//!
//! The format is stable and exact: one variable or constraint per line,
//! rationals rendered in lowest terms (`p/q`, or just `p` for integers),
//! missing bounds as `-inf`/`+inf`.

use std::fmt::Write as _;

use super::{LpModel, Rational};

fn bound(b: &Option<Rational>, sign: &str) -> String {
    match b {
        Some(r) => r.to_string(),
        None => format!("{sign}inf"),
    }
}

/// Renders the model in the fixed dump format.
pub fn dump_model(model: &LpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vars {}", model.variable_count());
    for v in model.variables() {
        let kind = if v.integral { "int" } else { "cont" };
        let _ = writeln!(
            out,
            "var {} {} {} {}",
            v.name,
            bound(&v.lower, "-"),
            bound(&v.upper, "+"),
            kind
        );
    }
    let coeffs: Vec<String> = model.objective().iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "minimize {}", coeffs.join(" "));
    let _ = writeln!(out, "rows {}", model.constraints().len());
    for c in model.constraints() {
        let coeffs: Vec<String> = c.coeffs.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(
            out,
            "row {} {} {} {}",
            c.label,
            coeffs.join(" "),
            c.relation.symbol(),
            c.rhs
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int, Constraint, LpModel, Relation, Variable};
    use super::*;

    #[test]
    fn dump_is_stable() {
        let mut m = LpModel::new();
        m.add_variable(Variable::binary("g_1"));
        m.add_variable(Variable::continuous("b_1", Some(rat_int(0)), None));
        m.set_objective(vec![rat_int(1), rat(1, 2)]);
        m.add_constraint(Constraint::new(
            "budget",
            vec![rat_int(0), rat_int(1)],
            Relation::Le,
            rat_int(2),
        ));
        m.add_constraint(Constraint::new(
            "cover_1",
            vec![rat_int(2), rat(-3, 2)],
            Relation::Ge,
            rat_int(2),
        ));
        let expected = "\
vars 2
var g_1 0 1 int
var b_1 0 +inf cont
minimize 1 1/2
rows 2
row budget 0 1 <= 2
row cover_1 2 -3/2 >= 2
";
        assert_eq!(dump_model(&m), expected);
    }
}
