//! 3-CNF formulas in DIMACS format, and truth assignments.

use std::fmt;

use super::SatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable number, as in DIMACS.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(x: i64) -> Option<Literal> {
        (x != 0).then(|| Literal {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        })
    }

    pub fn is_true(&self, assignment: &Assignment) -> bool {
        assignment.value(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

/// A formula with exactly three literals on distinct variables per clause,
/// where every variable occurs at least once positively and once negatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, SatError> {
        for (i, clause) in clauses.iter().enumerate() {
            for (k, lit) in clause.iter().enumerate() {
                if lit.var == 0 || lit.var > variable_count {
                    return Err(SatError::VariableOutOfRange {
                        clause: i,
                        var: lit.var,
                    });
                }
                if clause[..k].iter().any(|l| l.var == lit.var) {
                    return Err(SatError::RepeatedVariable {
                        clause: i,
                        var: lit.var,
                    });
                }
            }
        }
        for var in 1..=variable_count {
            let occurs = |sign: bool| {
                clauses
                    .iter()
                    .flatten()
                    .any(|l| l.var == var && l.positive == sign)
            };
            if !occurs(true) {
                return Err(SatError::MissingOccurrence { var, positive: true });
            }
            if !occurs(false) {
                return Err(SatError::MissingOccurrence { var, positive: false });
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Clause indices where `var` occurs, ascending, with the literal's slot.
    pub fn occurrences(&self, var: usize) -> Vec<(usize, usize)> {
        self.clauses
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.iter().position(|l| l.var == var).map(|k| (i, k)))
            .collect()
    }

    pub fn clause_satisfied(&self, clause: usize, assignment: &Assignment) -> bool {
        self.clauses[clause].iter().any(|l| l.is_true(assignment))
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        (0..self.clauses.len()).all(|i| self.clause_satisfied(i, assignment))
    }

    /// Parses DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>`
    /// header, then clauses terminated by `0` (possibly spanning lines).
    pub fn parse_dimacs(text: &str) -> Result<Self, SatError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<Vec<Literal>> = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let parsed = match parts.as_slice() {
                    ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                if header.is_some() || parsed.is_none() {
                    return Err(SatError::MalformedHeader { line: line_no });
                }
                header = parsed;
                continue;
            }
            if header.is_none() {
                return Err(SatError::MissingHeader);
            }
            for token in line.split_whitespace() {
                let x: i64 = token
                    .parse()
                    .map_err(|_| SatError::MalformedClause { line: line_no })?;
                match Literal::from_dimacs(x) {
                    Some(lit) => current.push(lit),
                    None => clauses.push(std::mem::take(&mut current)),
                }
            }
        }
        let (variable_count, clause_count) = header.ok_or(SatError::MissingHeader)?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != clause_count {
            return Err(SatError::ClauseCountMismatch {
                expected: clause_count,
                found: clauses.len(),
            });
        }
        let clauses = clauses
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                <[Literal; 3]>::try_from(c.as_slice()).map_err(|_| SatError::ClauseArity {
                    clause: i,
                    found: c.len(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        CnfFormula::new(variable_count, clauses)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.variable_count, self.clauses.len())?;
        for [a, b, c] in &self.clauses {
            writeln!(f, "{a} {b} {c} 0")?;
        }
        Ok(())
    }
}

/// A total truth assignment over variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    /// `values[k]` is the value of variable `k + 1`.
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Parses a list of signed variable numbers (`1 -2 3`), optionally
    /// ending in `0`. Lines starting with `c` are comments and a leading
    /// `v` token is skipped, so solver output is accepted as is. Every
    /// variable in `1..=variable_count` must appear exactly once.
    pub fn parse(text: &str, variable_count: usize) -> Result<Self, SatError> {
        let mut values: Vec<Option<bool>> = vec![None; variable_count];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
                continue;
            }
            for token in line.split_whitespace().filter(|&t| t != "v") {
                let x: i64 = token
                    .parse()
                    .map_err(|_| SatError::MalformedAssignment { line: i + 1 })?;
                let Some(lit) = Literal::from_dimacs(x) else {
                    continue;
                };
                if lit.var > variable_count {
                    return Err(SatError::AssignmentOutOfRange { var: lit.var });
                }
                if values[lit.var - 1].replace(lit.positive).is_some() {
                    return Err(SatError::AssignedTwice { var: lit.var });
                }
            }
        }
        let values = values
            .iter()
            .enumerate()
            .map(|(k, v)| v.ok_or(SatError::PartialAssignment { var: k + 1 }))
            .collect::<Result<_, _>>()?;
        Ok(Assignment { values })
    }
}
