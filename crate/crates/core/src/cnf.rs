//! CNF formulas, literals, and (partial) truth assignments.
//!
//! Variables are 1-based. A literal is a signed variable index, negative for
//! the negated variable, exactly as in DIMACS.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Not;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Var = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        assert!(var > 0 && var <= i32::MAX as u32, "variable index {var} out of range");
        let v = var as i32;
        Lit(if positive { v } else { -v })
    }

    pub fn pos(var: Var) -> Self {
        Lit::new(var, true)
    }

    pub fn neg(var: Var) -> Self {
        Lit::new(var, false)
    }

    pub fn from_dimacs(value: i32) -> Option<Self> {
        (value != 0 && value != i32::MIN).then_some(Lit(value))
    }

    pub fn var(self) -> Var {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    /// Truth value of the literal when its variable has value `value`.
    pub fn eval(self, value: bool) -> bool {
        value == self.is_positive()
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Clause list over `1..=num_vars`.
///
/// Duplicate literals inside a clause are kept verbatim; they never change
/// the set of proper assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    var_names: BTreeMap<Var, String>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidInput(format!("clause {} is empty", i + 1)));
            }
            if let Some(lit) = clause.iter().find(|l| l.var() > num_vars) {
                return Err(Error::InvalidInput(format!(
                    "clause {} uses variable {} but the formula has {} variables",
                    i + 1,
                    lit.var(),
                    num_vars
                )));
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            var_names: BTreeMap::new(),
        })
    }

    /// Builds a formula from DIMACS-style signed integers.
    pub fn from_ints(num_vars: u32, clauses: &[&[i32]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| Lit::from_dimacs(v).ok_or_else(|| Error::InvalidInput("literal 0".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        1..=self.num_vars
    }

    pub fn var_name(&self, var: Var) -> Option<&str> {
        self.var_names.get(&var).map(String::as_str)
    }

    pub fn set_var_name(&mut self, var: Var, name: impl Into<String>) {
        self.var_names.insert(var, name.into());
    }

    /// Largest number of distinct literals in any clause.
    pub fn width(&self) -> usize {
        self.clauses.iter().map(|c| distinct_literals(c).len()).max().unwrap_or(0)
    }

    /// Pads every clause to exactly `k` literal slots by repeating its last
    /// distinct literal.
    pub fn normalized_to_width(&self, k: usize) -> Result<Self> {
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for (i, clause) in self.clauses.iter().enumerate() {
            let lits = distinct_literals(clause);
            if lits.len() > k {
                return Err(Error::InvalidInput(format!(
                    "clause {} has {} distinct literals, more than {k}",
                    i + 1,
                    lits.len()
                )));
            }
            clauses.push(pad_clause(&lits, k));
        }
        Ok(CnfFormula {
            num_vars: self.num_vars,
            clauses,
            var_names: self.var_names.clone(),
        })
    }

    /// Same formula with duplicate literals removed from every clause.
    pub fn deduplicated(&self) -> Self {
        CnfFormula {
            num_vars: self.num_vars,
            clauses: self.clauses.iter().map(|c| distinct_literals(c)).collect(),
            var_names: self.var_names.clone(),
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (var, name) in &self.var_names {
            out.push_str(&format!("c var {var} {name}\n"));
        }
        out.push_str(&format!("p cnf {} {}\n", self.num_vars, self.clauses.len()));
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&format!("{lit} "));
            }
            out.push_str("0\n");
        }
        out
    }
}

impl FromStr for CnfFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_cnf(s)
    }
}

/// Distinct literals of a clause in first-occurrence order.
pub fn distinct_literals(clause: &[Lit]) -> Vec<Lit> {
    let mut out: Vec<Lit> = Vec::with_capacity(clause.len());
    for &lit in clause {
        if !out.contains(&lit) {
            out.push(lit);
        }
    }
    out
}

/// Repeats the last literal until the clause has `k` slots.
pub(crate) fn pad_clause(lits: &[Lit], k: usize) -> Vec<Lit> {
    let mut out = lits.to_vec();
    if let Some(&last) = lits.last() {
        while out.len() < k {
            out.push(last);
        }
    }
    out
}

/// Parses a DIMACS `p cnf` document.
///
/// Clauses are 0-terminated and may span lines. `c` lines are comments; a
/// `c var <idx> <name>` comment restores a variable label written by
/// [`CnfFormula::to_dimacs`].
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut names = BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('c') {
            let mut parts = line.split_whitespace();
            if parts.next() == Some("c") && parts.next() == Some("var") {
                if let (Some(v), Some(name)) = (parts.next().and_then(|v| v.parse::<Var>().ok()), parts.next()) {
                    names.insert(v, name.to_string());
                }
            }
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(Error::parse(line_no, "malformed header, expected `p cnf <vars> <clauses>`"));
            }
            let vars = parts[2]
                .parse::<u32>()
                .map_err(|_| Error::parse(line_no, format!("bad variable count `{}`", parts[2])))?;
            let count = parts[3]
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad clause count `{}`", parts[3])))?;
            header = Some((vars, count, line_no));
            continue;
        }
        let Some((num_vars, _, _)) = header else {
            return Err(Error::parse(line_no, "clause before `p cnf` header"));
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{token}`")))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(Error::parse(line_no, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if value.unsigned_abs() > num_vars as u64 {
                return Err(Error::parse(
                    line_no,
                    format!("literal {value} out of range for {num_vars} variables"),
                ));
            }
            current.push(Lit(value as i32));
        }
    }

    let Some((num_vars, count, header_line)) = header else {
        return Err(Error::parse(last_line.max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(Error::parse(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::parse(
            header_line,
            format!("header declares {count} clauses but {} were read", clauses.len()),
        ));
    }
    let mut formula = CnfFormula::new(num_vars, clauses)?;
    for (var, name) in names {
        if var >= 1 && var <= num_vars {
            formula.set_var_name(var, name);
        }
    }
    Ok(formula)
}

/// Sparse map from variable to truth value. Its key set is the support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    bindings: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        PartialAssignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, bool)>) -> Self {
        PartialAssignment {
            bindings: pairs.into_iter().collect(),
        }
    }

    /// Binds every literal's variable so that the literal is true.
    pub fn from_literals(lits: impl IntoIterator<Item = Lit>) -> Self {
        PartialAssignment::from_pairs(lits.into_iter().map(|l| (l.var(), l.is_positive())))
    }

    /// Total assignment from a dense vector; index 0 holds variable 1.
    pub fn from_total(values: &[bool]) -> Self {
        PartialAssignment::from_pairs(values.iter().enumerate().map(|(i, &b)| (i as Var + 1, b)))
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.bindings.get(&var).copied()
    }

    pub fn insert(&mut self, var: Var, value: bool) -> Option<bool> {
        self.bindings.insert(var, value)
    }

    pub fn remove(&mut self, var: Var) -> Option<bool> {
        self.bindings.remove(&var)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        self.bindings.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    /// The true literals of this assignment, by variable index.
    pub fn literals(&self) -> Vec<Lit> {
        self.iter().map(|(v, b)| Lit::new(v, b)).collect()
    }

    pub fn max_var(&self) -> Var {
        self.bindings.keys().next_back().copied().unwrap_or(0)
    }

    /// True iff the support is exactly `1..=num_vars`.
    pub fn is_total_for(&self, num_vars: u32) -> bool {
        self.bindings.len() == num_vars as usize && self.max_var() <= num_vars && self.bindings.keys().all(|&v| v >= 1)
    }

    /// True iff every binding here also appears in `other`.
    pub fn is_restriction_of(&self, other: &PartialAssignment) -> bool {
        self.iter().all(|(v, b)| other.get(v) == Some(b))
    }

    pub fn restricted_to(&self, vars: impl IntoIterator<Item = Var>) -> PartialAssignment {
        PartialAssignment::from_pairs(vars.into_iter().filter_map(|v| self.get(v).map(|b| (v, b))))
    }

    /// Dense form indexed by variable (slot 0 unused).
    pub fn to_dense(&self, num_vars: u32) -> Vec<Option<bool>> {
        let mut dense = vec![None; num_vars as usize + 1];
        for (v, b) in self.iter() {
            if (v as usize) < dense.len() && v > 0 {
                dense[v as usize] = Some(b);
            }
        }
        dense
    }

    /// One-line file form: signed integers terminated by `0`.
    pub fn to_line(&self) -> String {
        let mut out = String::new();
        for lit in self.literals() {
            out.push_str(&format!("{lit} "));
        }
        out.push('0');
        out
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Parses an assignment line such as `1 -2 3 0`.
///
/// Comment lines starting with `c` are skipped. Binding a variable twice is
/// an error.
pub fn parse_assignment(text: &str) -> Result<PartialAssignment> {
    let mut out = PartialAssignment::new();
    let mut terminated = false;
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for token in line.split_whitespace() {
            if terminated {
                return Err(Error::parse(line_no, "data after terminating 0"));
            }
            let value: i32 = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{token}`")))?;
            if value == 0 {
                terminated = true;
                continue;
            }
            let lit = Lit::from_dimacs(value).ok_or_else(|| Error::parse(line_no, "bad literal"))?;
            if out.insert(lit.var(), lit.is_positive()).is_some() {
                return Err(Error::parse(line_no, format!("variable {} bound twice", lit.var())));
            }
        }
    }
    if !terminated {
        return Err(Error::parse(last_line, "assignment is not terminated by 0"));
    }
    Ok(out)
}

/// Three-valued result of evaluating a formula under a partial assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Satisfied,
    Falsified,
    Undetermined,
}

pub fn evaluate(formula: &CnfFormula, assignment: &PartialAssignment) -> Evaluation {
    let mut all_satisfied = true;
    for clause in formula.clauses() {
        let mut satisfied = false;
        let mut open = false;
        for lit in clause {
            match assignment.get(lit.var()) {
                Some(value) if lit.eval(value) => {
                    satisfied = true;
                    break;
                }
                Some(_) => {}
                None => open = true,
            }
        }
        if satisfied {
            continue;
        }
        if !open {
            return Evaluation::Falsified;
        }
        all_satisfied = false;
    }
    if all_satisfied {
        Evaluation::Satisfied
    } else {
        Evaluation::Undetermined
    }
}

/// Every clause has a literal made true by the bound variables of `t`.
pub fn is_proper_partial(formula: &CnfFormula, t: &PartialAssignment) -> bool {
    formula
        .clauses()
        .iter()
        .all(|clause| clause.iter().any(|lit| t.get(lit.var()).is_some_and(|b| lit.eval(b))))
}

/// Satisfaction check for a dense total assignment (index 0 = variable 1).
pub fn satisfies_total(formula: &CnfFormula, values: &[bool]) -> bool {
    formula
        .clauses()
        .iter()
        .all(|clause| clause.iter().any(|lit| lit.eval(values[lit.var() as usize - 1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_document() {
        let f = parse_cnf("p cnf 2 1\n1 2 0").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[vec![Lit::pos(1), Lit::pos(2)]]);
    }

    #[test]
    fn duplicated_literal_is_kept_and_width_counts_distinct() {
        let f = parse_cnf("c dup\np cnf 1 1\n1 1 1 0\n").unwrap();
        assert_eq!(f.clauses()[0].len(), 3);
        assert_eq!(f.width(), 1);
    }

    #[test]
    fn rejects_out_of_range_literal_with_line() {
        let err = parse_cnf("p cnf 2 1\n3 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(matches!(parse_cnf("p cnf x 1\n1 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_cnf("p dnf 1 1\n1 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_cnf("p cnf 2 2\n1 0\n0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_cnf("1 2 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_cnf("p cnf 2 1\n1 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_cnf("p cnf 2 2\n1 2 0"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_cnf("p cnf 3 2\n1 -2\n 3 0 -1\n0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
        assert_eq!(f.clauses()[1], vec![Lit::neg(1)]);
    }

    #[test]
    fn dimacs_round_trip_keeps_names() {
        let mut f = CnfFormula::from_ints(3, &[&[1, -2], &[3, 3, -1]]).unwrap();
        f.set_var_name(2, "z");
        let back = parse_cnf(&f.to_dimacs()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn evaluate_examples() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert_eq!(evaluate(&f, &PartialAssignment::from_pairs([(1, true)])), Evaluation::Satisfied);
        assert_eq!(
            evaluate(&f, &PartialAssignment::from_pairs([(1, false), (2, false)])),
            Evaluation::Falsified
        );
        let g = CnfFormula::from_ints(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(evaluate(&g, &PartialAssignment::new()), Evaluation::Undetermined);
    }

    #[test]
    fn proper_partial_examples() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert!(!is_proper_partial(&f, &PartialAssignment::from_pairs([(2, false)])));
        assert!(is_proper_partial(&f, &PartialAssignment::from_pairs([(2, true)])));
    }

    #[test]
    fn assignment_lines() {
        let a = parse_assignment("c anchor\n1 -2 3 0\n").unwrap();
        assert_eq!(a.to_line(), "1 -2 3 0");
        assert!(a.is_total_for(3));
        assert!(!a.is_total_for(4));
        assert!(parse_assignment("1 -1 0").is_err());
        assert!(parse_assignment("1 2").is_err());
        assert_eq!(parse_assignment("0").unwrap(), PartialAssignment::new());
    }

    #[test]
    fn width_normalization_pads_with_last_literal() {
        let f = CnfFormula::from_ints(3, &[&[1], &[2, -3]]).unwrap();
        let g = f.normalized_to_width(3).unwrap();
        assert_eq!(g.clauses()[0], vec![Lit::pos(1); 3]);
        assert_eq!(g.clauses()[1], vec![Lit::pos(2), Lit::neg(3), Lit::neg(3)]);
        assert!(f.normalized_to_width(1).is_err());
    }
}
