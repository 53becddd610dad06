use std::fmt;

use super::PartialError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    fn from_dimacs(v: i64) -> Self {
        Literal {
            var: v.unsigned_abs() as usize,
            positive: v > 0,
        }
    }

    /// `assignment[j - 1]` is the value of `x_j`.
    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
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

/// A conjunction of nonempty clauses over variables `x_1 .. x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, PartialError> {
        if clauses.is_empty() {
            return Err(PartialError::InvalidCnf("formula has no clauses".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(PartialError::InvalidCnf(format!(
                    "clause {} is empty",
                    i + 1
                )));
            }
            if let Some(l) = c.iter().find(|l| l.var == 0 || l.var > num_vars) {
                return Err(PartialError::InvalidCnf(format!(
                    "clause {} mentions variable {} outside 1..{}",
                    i + 1,
                    l.var,
                    num_vars
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Reads DIMACS `cnf`: comment lines start with `c`, a `p cnf n m` header
    /// precedes the clauses, and every clause ends with `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self, PartialError> {
        let err = |line: usize, message: String| PartialError::Dimacs { line, message };
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            last_line = ln;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            if trimmed.starts_with('p') {
                if header.is_some() {
                    return Err(err(ln, "second problem line".into()));
                }
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                let (n, m) = match parts.as_slice() {
                    ["p", "cnf", n, m] => (n.parse::<usize>(), m.parse::<usize>()),
                    _ => return Err(err(ln, "expected `p cnf <variables> <clauses>`".into())),
                };
                match (n, m) {
                    (Ok(n), Ok(m)) => header = Some((n, m)),
                    _ => return Err(err(ln, "header counts must be nonnegative integers".into())),
                }
                continue;
            }
            let Some((n, _)) = header else {
                return Err(err(ln, "clause before `p cnf` header".into()));
            };
            for tok in trimmed.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| err(ln, format!("`{tok}` is not an integer literal")))?;
                if v == 0 {
                    if current.is_empty() {
                        return Err(err(ln, "empty clause".into()));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else if v.unsigned_abs() as usize > n {
                    return Err(err(
                        ln,
                        format!("literal {v} exceeds declared {n} variables"),
                    ));
                } else {
                    current.push(Literal::from_dimacs(v));
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(err(last_line.max(1), "missing `p cnf` header".into()));
        };
        if !current.is_empty() {
            return Err(err(last_line, "last clause is not terminated by 0".into()));
        }
        if clauses.len() != m {
            return Err(err(
                last_line.max(1),
                format!("header declares {m} clauses, found {}", clauses.len()),
            ));
        }
        CnfFormula::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&l.to_string());
                s.push(' ');
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Total number of literal occurrences.
    pub fn atoms(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let text = "c example\np cnf 3 2\n1 -3 0\n-2 3 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses()[0], [Literal::pos(1), Literal::neg(3)]);
        assert_eq!(f.atoms(), 4);
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = CnfFormula::parse_dimacs("p cnf 2 2\n1\n2 0 -1 0\n").unwrap();
        assert_eq!(f.clauses().len(), 2);
        assert_eq!(f.clauses()[0].len(), 2);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "1 2 0\n",
            "p cnf 2 1\n1 3 0\n",
            "p cnf 2 1\n1 2\n",
            "p cnf 2 2\n1 2 0\n",
            "p cnf 2 1\n0\n",
            "p cnf x 1\n1 0\n",
            "p cnf 2 1\n1 a 0\n",
            "p cnf 1 0\n",
        ] {
            assert!(CnfFormula::parse_dimacs(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn evaluation() {
        let f = CnfFormula::new(1, vec![vec![Literal::pos(1)], vec![Literal::neg(1)]]).unwrap();
        assert!(!f.evaluate(&[true]));
        assert!(!f.evaluate(&[false]));
        let g = CnfFormula::new(2, vec![vec![Literal::pos(1), Literal::neg(2)]]).unwrap();
        assert!(g.evaluate(&[false, false]));
        assert!(!g.evaluate(&[false, true]));
    }
}
