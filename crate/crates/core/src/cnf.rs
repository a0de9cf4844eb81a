//! 3-CNF formulas with DIMACS CNF I/O.
//!
//! Every clause has exactly three literals over distinct (variable, polarity)
//! pairs; a clause may mention a variable in both polarities, such as
//! `(x1 ∨ ¬x1 ∨ x2)`. Variables are 1-indexed.

use std::fmt::Write as _;

use thiserror::Error;

/// A literal: variable `var` (1-indexed), possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: u32) -> Self {
        Self {
            var,
            negated: false,
        }
    }

    pub fn negative(var: u32) -> Self {
        Self { var, negated: true }
    }

    /// DIMACS encoding: `var` for positive, `-var` for negative.
    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    /// Two literals are complementary when they name the same variable with
    /// opposite polarity.
    pub fn complements(self, other: Literal) -> bool {
        self.var == other.var && self.negated != other.negated
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        let value = assignment[(self.var - 1) as usize];
        value != self.negated
    }
}

/// One clause: exactly three literals, in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Clause(pub [Literal; 3]);

impl Clause {
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.0.iter().copied()
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.literals().any(|l| l.eval(assignment))
    }
}

/// A 3-CNF formula over variables `1..=variable_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: u32,
    clauses: Vec<Clause>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("variable count must be positive")]
    EmptyVariableSet,
    #[error("clause {clause}: literal repeats (variable, polarity) pair {lit}")]
    RepeatedLiteral { clause: usize, lit: i64 },
    #[error("clause {clause}: variable {var} out of range 1..={count}")]
    VariableOutOfRange { clause: usize, var: u32, count: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsCnfError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: missing `p cnf` header before this line")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed clause: {detail}")]
    MalformedClause { line: usize, detail: String },
    #[error("line {line}: clause has {found} literals, expected exactly 3")]
    WrongLiteralCount { line: usize, found: usize },
    #[error("line {line}: literal {lit} repeats a (variable, polarity) pair in its clause")]
    RepeatedLiteral { line: usize, lit: i64 },
    #[error("line {line}: variable {var} out of range 1..={count}")]
    VariableOutOfRange { line: usize, var: u32, count: u32 },
    #[error("header declared {declared} clauses but {found} clause lines were read")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("input ended without a `p cnf` header")]
    NoHeader,
}

impl CnfFormula {
    pub fn new(
        variable_count: u32,
        clauses: impl IntoIterator<Item = [Literal; 3]>,
    ) -> Result<Self, CnfError> {
        if variable_count == 0 {
            return Err(CnfError::EmptyVariableSet);
        }
        let mut out = Vec::new();
        for (idx, lits) in clauses.into_iter().enumerate() {
            let clause_no = idx + 1;
            for (i, lit) in lits.iter().enumerate() {
                if lit.var == 0 || lit.var > variable_count {
                    return Err(CnfError::VariableOutOfRange {
                        clause: clause_no,
                        var: lit.var,
                        count: variable_count,
                    });
                }
                if lits[..i].contains(lit) {
                    return Err(CnfError::RepeatedLiteral {
                        clause: clause_no,
                        lit: lit.to_dimacs(),
                    });
                }
            }
            out.push(Clause(lits));
        }
        Ok(Self {
            variable_count,
            clauses: out,
        })
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.variable_count as usize);
        self.clauses.iter().all(|c| c.eval(assignment))
    }

    /// Canonical DIMACS CNF serialization, one clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p cnf {} {}",
            self.variable_count,
            self.clauses.len()
        );
        for clause in &self.clauses {
            let lits: Vec<String> = clause.literals().map(|l| l.to_dimacs().to_string()).collect();
            let _ = writeln!(out, "{} 0", lits.join(" "));
        }
        out
    }
}

/// Parses DIMACS CNF restricted to 3-literal clauses, one zero-terminated
/// clause per line. A clause may not repeat a (variable, polarity) pair, but
/// opposite polarities of one variable are fine.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, DimacsCnfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("p ") {
            if header.is_some() {
                return Err(DimacsCnfError::DuplicateHeader { line });
            }
            let mut tokens = rest.split_whitespace();
            if tokens.next() != Some("cnf") {
                return Err(DimacsCnfError::MalformedHeader {
                    line,
                    detail: "expected `p cnf N M`".into(),
                });
            }
            let n: u32 = parse_cnf_token(tokens.next(), line, "variable count")?;
            let m: usize = parse_cnf_token(tokens.next(), line, "clause count")?;
            if n == 0 {
                return Err(DimacsCnfError::MalformedHeader {
                    line,
                    detail: "variable count must be positive".into(),
                });
            }
            if tokens.next().is_some() {
                return Err(DimacsCnfError::MalformedHeader {
                    line,
                    detail: "trailing tokens after `p cnf N M`".into(),
                });
            }
            header = Some((n, m));
            continue;
        }

        let (n, _) = header.ok_or(DimacsCnfError::MissingHeader { line })?;
        let mut lits: Vec<Literal> = Vec::new();
        let mut terminated = false;
        for token in trimmed.split_whitespace() {
            if terminated {
                return Err(DimacsCnfError::MalformedClause {
                    line,
                    detail: "tokens after terminating 0".into(),
                });
            }
            let value: i64 = token.parse().map_err(|_| DimacsCnfError::MalformedClause {
                line,
                detail: format!("cannot parse literal from {token:?}"),
            })?;
            if value == 0 {
                terminated = true;
                continue;
            }
            let var = value.unsigned_abs() as u32;
            if var > n {
                return Err(DimacsCnfError::VariableOutOfRange {
                    line,
                    var,
                    count: n,
                });
            }
            let lit = Literal {
                var,
                negated: value < 0,
            };
            if lits.contains(&lit) {
                return Err(DimacsCnfError::RepeatedLiteral {
                    line,
                    lit: value,
                });
            }
            lits.push(lit);
        }
        if !terminated {
            return Err(DimacsCnfError::MalformedClause {
                line,
                detail: "clause line not terminated by 0".into(),
            });
        }
        if lits.len() != 3 {
            return Err(DimacsCnfError::WrongLiteralCount {
                line,
                found: lits.len(),
            });
        }
        clauses.push(Clause([lits[0], lits[1], lits[2]]));
    }

    let (n, m) = header.ok_or(DimacsCnfError::NoHeader)?;
    if clauses.len() != m {
        return Err(DimacsCnfError::ClauseCountMismatch {
            declared: m,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula {
        variable_count: n,
        clauses,
    })
}

fn parse_cnf_token<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, DimacsCnfError> {
    let token = token.ok_or_else(|| DimacsCnfError::MalformedHeader {
        line,
        detail: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| DimacsCnfError::MalformedHeader {
        line,
        detail: format!("cannot parse {what} from {token:?}"),
    })
}
