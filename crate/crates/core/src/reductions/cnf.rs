//! 3-CNF formulas, truth assignments and their DIMACS text forms.

use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

/// A variable (0-based) with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }

    /// From a nonzero DIMACS integer (1-based, sign is polarity).
    pub fn from_dimacs(x: i64) -> Option<Self> {
        (x != 0).then(|| Self {
            var: x.unsigned_abs() as usize - 1,
            negated: x < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn is_satisfied_by(self, f: &Assignment) -> bool {
        f.value(self.var) != self.negated
    }
}

/// A conjunction of clauses with exactly three literals each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let clauses = clauses
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                    return Err(Error::Formula(format!(
                        "clause {} uses variable {} but only {num_vars} are declared",
                        i + 1,
                        l.var + 1
                    )));
                }
                <[Literal; 3]>::try_from(c.as_slice()).map_err(|_| {
                    Error::Formula(format!(
                        "clause {} has {} literals, expected 3",
                        i + 1,
                        c.len()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Occurrences of `x` and `¬x` per variable.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut n = vec![0; self.num_vars];
        for l in self.clauses.iter().flatten() {
            n[l.var] += 1;
        }
        n
    }

    /// Largest occurrence count over all variables.
    pub fn beta(&self) -> usize {
        self.occurrences().into_iter().max().unwrap_or(0)
    }

    pub fn satisfied_count(&self, f: &Assignment) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.is_satisfied_by(f)))
            .count()
    }

    pub fn is_satisfied_by(&self, f: &Assignment) -> bool {
        self.satisfied_count(f) == self.clauses.len()
    }

    /// A satisfying assignment found by trying all of them, if one exists.
    /// Intended for small formulas only.
    pub fn brute_force_satisfying(&self) -> Option<Assignment> {
        assert!(self.num_vars < 26, "brute force limited to 25 variables");
        (0u32..1 << self.num_vars)
            .map(|bits| Assignment::new((0..self.num_vars).map(|i| bits >> i & 1 == 1).collect()))
            .find(|f| self.is_satisfied_by(f))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(
                out,
                "{} {} {} 0",
                c[0].to_dimacs(),
                c[1].to_dimacs(),
                c[2].to_dimacs()
            );
        }
        out
    }
}

/// Parses DIMACS CNF. Clauses may span lines and are terminated by `0`;
/// every clause must have exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let t: Vec<&str> = trimmed.split_whitespace().collect();
            if header.is_some() || t.len() != 4 || t[1] != "cnf" {
                return Err(parse_err(
                    line,
                    "expected a single `p cnf <vars> <clauses>` header",
                ));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("invalid count `{s}`")))
            };
            header = Some((num(t[2])?, num(t[3])?));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(parse_err(line, "clause before the `p cnf` header"));
        };
        for token in trimmed.split_whitespace() {
            let x: i64 = token
                .parse()
                .map_err(|_| parse_err(line, format!("invalid literal `{token}`")))?;
            match Literal::from_dimacs(x) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var >= num_vars => {
                    return Err(parse_err(
                        line,
                        format!("variable {} exceeds declared {num_vars}", l.var + 1),
                    ))
                }
                Some(l) => current.push(l),
            }
        }
    }
    let (num_vars, declared) = header.ok_or_else(|| parse_err(1, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(Error::Formula("last clause is not terminated by 0".into()));
    }
    if clauses.len() != declared {
        return Err(Error::Formula(format!(
            "header declares {declared} clauses, found {}",
            clauses.len()
        )));
    }
    CnfFormula::new(num_vars, clauses)
}

/// A truth value per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn all_false(num_vars: usize) -> Self {
        Self {
            values: vec![false; num_vars],
        }
    }

    /// Unlisted variables read as false.
    pub fn value(&self, var: usize) -> bool {
        self.values.get(var).copied().unwrap_or(false)
    }

    pub fn set(&mut self, var: usize, value: bool) {
        if var >= self.values.len() {
            self.values.resize(var + 1, false);
        }
        self.values[var] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// `v 1 -2 3 ... 0`, one signed literal per variable.
    pub fn to_text(&self) -> String {
        let mut out = String::from("v");
        for (i, &b) in self.values.iter().enumerate() {
            let x = i as i64 + 1;
            let _ = write!(out, " {}", if b { x } else { -x });
        }
        out.push_str(" 0\n");
        out
    }
}

/// Parses signed literals (an optional leading `v` per line, `c` and `s`
/// lines ignored). Positive literals are true; unlisted variables false.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let mut f = Assignment::all_false(0);
    for (idx, raw) in text.lines().enumerate() {
        let mut tokens = raw.split_whitespace().peekable();
        match tokens.peek() {
            None | Some(&"c") | Some(&"s") => continue,
            Some(&"v") => {
                tokens.next();
            }
            _ => {}
        }
        for token in tokens {
            let x: i64 = token
                .parse()
                .map_err(|_| parse_err(idx + 1, format!("invalid literal `{token}`")))?;
            if let Some(l) = Literal::from_dimacs(x) {
                f.set(l.var, !l.negated);
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dimacs() {
        let phi = parse_dimacs("c example\np cnf 4 2\n1 2 3 0\n-1 2\n-4 0\n").unwrap();
        assert_eq!(phi.num_vars(), 4);
        assert_eq!(phi.clause_count(), 2);
        assert_eq!(
            phi.clauses()[1],
            [Literal::neg(0), Literal::pos(1), Literal::neg(3)]
        );
        assert_eq!(phi.occurrences(), vec![2, 2, 1, 1]);
        assert_eq!(phi.beta(), 2);
        assert_eq!(parse_dimacs(&phi.to_dimacs()).unwrap(), phi);
    }

    #[test]
    fn rejects_bad_dimacs() {
        assert!(matches!(
            parse_dimacs("p cnf 3 1\n1 2 0\n"),
            Err(Error::Formula(_))
        ));
        assert!(matches!(
            parse_dimacs("p cnf 4 1\n1 2 3 4 0\n"),
            Err(Error::Formula(_))
        ));
        assert!(parse_dimacs("p cnf 2 1\n1 2 3 0\n").is_err());
        assert!(parse_dimacs("1 2 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 2 3\n").is_err());
        let empty = parse_dimacs("p cnf 0 0\n").unwrap();
        assert_eq!(empty.clause_count(), 0);
    }

    #[test]
    fn assignments() {
        let f = parse_assignment("c model\nv 1 -2\nv 3 0\n").unwrap();
        assert_eq!(f.values(), &[true, false, true]);
        assert!(!f.value(10));
        assert_eq!(f.to_text(), "v 1 -2 3 0\n");
        let phi = parse_dimacs("p cnf 3 2\n-1 2 -3 0\n-1 -2 -3 0\n").unwrap();
        assert_eq!(phi.satisfied_count(&f), 1);
        assert!(phi.is_satisfied_by(&Assignment::all_false(3)));
        assert!(phi.brute_force_satisfying().is_some());
    }
}
