//! Backtracking model enumeration with unit propagation.
//!
//! Decisions are taken on the smallest unassigned variable, `false` before
//! `true`. Propagation only discards branches that contain no model, so
//! models come out in lexicographic order of their value vectors.

use crate::cnf::{distinct_literals, CnfFormula, Lit, PartialAssignment, Var};
use crate::error::{Error, Result};

pub(crate) struct SatEngine {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    occurs: Vec<Vec<usize>>,
}

enum Clause {
    Satisfied,
    Conflict,
    Unit(Lit),
    Open,
}

impl SatEngine {
    pub(crate) fn new(formula: &CnfFormula) -> Self {
        let num_vars = formula.num_vars() as usize;
        let clauses: Vec<Vec<Lit>> = formula.clauses().iter().map(|c| distinct_literals(c)).collect();
        let mut occurs = vec![Vec::new(); num_vars + 1];
        for (ci, clause) in clauses.iter().enumerate() {
            for lit in clause {
                let slot = &mut occurs[lit.var() as usize];
                if slot.last() != Some(&ci) {
                    slot.push(ci);
                }
            }
        }
        SatEngine {
            num_vars,
            clauses,
            occurs,
        }
    }

    fn status(&self, ci: usize, values: &[Option<bool>]) -> Clause {
        let mut unit = None;
        let mut open = 0;
        for &lit in &self.clauses[ci] {
            match values[lit.var() as usize] {
                Some(b) if lit.eval(b) => return Clause::Satisfied,
                Some(_) => {}
                None => {
                    open += 1;
                    unit = Some(lit);
                }
            }
        }
        match (open, unit) {
            (0, _) => Clause::Conflict,
            (1, Some(lit)) => Clause::Unit(lit),
            _ => Clause::Open,
        }
    }

    /// Propagates from the trail entries at `from..`. Returns false on conflict.
    fn propagate(&self, values: &mut [Option<bool>], trail: &mut Vec<Var>, mut from: usize) -> bool {
        while from < trail.len() {
            let var = trail[from] as usize;
            from += 1;
            for &ci in &self.occurs[var] {
                match self.status(ci, values) {
                    Clause::Conflict => return false,
                    Clause::Unit(lit) => {
                        values[lit.var() as usize] = Some(lit.is_positive());
                        trail.push(lit.var());
                    }
                    Clause::Satisfied | Clause::Open => {}
                }
            }
        }
        true
    }

    /// Visits every total model extending `fixed` (dense, slot 0 unused) in
    /// lexicographic order until `visit` returns false.
    pub(crate) fn for_each_model(&self, fixed: &[Option<bool>], mut visit: impl FnMut(&[bool]) -> bool) {
        let mut values: Vec<Option<bool>> = vec![None; self.num_vars + 1];
        let mut trail: Vec<Var> = Vec::new();
        for (v, slot) in values.iter_mut().enumerate().skip(1) {
            if let Some(b) = fixed.get(v).copied().flatten() {
                *slot = Some(b);
                trail.push(v as Var);
            }
        }
        // Clauses with no fixed variable can still be unit or, after the
        // fixed part, falsified; scan everything once to a fixpoint.
        loop {
            let mut changed = false;
            for ci in 0..self.clauses.len() {
                match self.status(ci, &values) {
                    Clause::Conflict => return,
                    Clause::Unit(lit) => {
                        values[lit.var() as usize] = Some(lit.is_positive());
                        trail.push(lit.var());
                        changed = true;
                    }
                    Clause::Satisfied | Clause::Open => {}
                }
            }
            if !changed {
                break;
            }
        }
        let mut scratch = vec![false; self.num_vars];
        self.descend(&mut values, &mut trail, 1, &mut scratch, &mut visit);
    }

    /// Returns false when the visitor asked to stop.
    fn descend(
        &self,
        values: &mut Vec<Option<bool>>,
        trail: &mut Vec<Var>,
        start: usize,
        scratch: &mut Vec<bool>,
        visit: &mut impl FnMut(&[bool]) -> bool,
    ) -> bool {
        let next = (start..=self.num_vars).find(|&v| values[v].is_none());
        let Some(var) = next else {
            for v in 1..=self.num_vars {
                scratch[v - 1] = values[v].expect("all variables assigned");
            }
            return visit(scratch);
        };
        for value in [false, true] {
            let mark = trail.len();
            values[var] = Some(value);
            trail.push(var as Var);
            let keep_going = if self.propagate(values, trail, mark) {
                self.descend(values, trail, var + 1, scratch, visit)
            } else {
                true
            };
            for &v in &trail[mark..] {
                values[v as usize] = None;
            }
            trail.truncate(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// Number of models extending `fixed`, counting no further than `limit`.
    pub(crate) fn count_models(&self, fixed: &[Option<bool>], limit: usize) -> usize {
        let mut count = 0;
        if limit == 0 {
            return 0;
        }
        self.for_each_model(fixed, |_| {
            count += 1;
            count < limit
        });
        count
    }

    /// The single model extending `fixed`, if there is exactly one.
    pub(crate) fn unique_model(&self, fixed: &[Option<bool>]) -> Option<Vec<bool>> {
        let mut found: Option<Vec<bool>> = None;
        let mut count = 0;
        self.for_each_model(fixed, |m| {
            count += 1;
            if count == 1 {
                found = Some(m.to_vec());
            }
            count < 2
        });
        (count == 1).then_some(found).flatten()
    }
}

pub(crate) fn check_support(formula: &CnfFormula, assignment: &PartialAssignment, what: &str) -> Result<()> {
    if let Some(v) = assignment.support().find(|&v| v == 0 || v > formula.num_vars()) {
        return Err(Error::contract(format!(
            "{what} binds variable {v}, outside 1..={}",
            formula.num_vars()
        )));
    }
    Ok(())
}

/// All total proper assignments extending `fixed`, at most `limit` of them,
/// in lexicographic order of the value vector (false < true).
pub fn enumerate_proper(formula: &CnfFormula, fixed: &PartialAssignment, limit: usize) -> Result<Vec<PartialAssignment>> {
    if limit == 0 {
        return Err(Error::contract("enumeration limit must be at least 1"));
    }
    check_support(formula, fixed, "fixed assignment")?;
    let engine = SatEngine::new(formula);
    let mut out = Vec::new();
    engine.for_each_model(&fixed.to_dense(formula.num_vars()), |m| {
        out.push(PartialAssignment::from_total(m));
        out.len() < limit
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn models(f: &CnfFormula) -> Vec<String> {
        enumerate_proper(f, &PartialAssignment::new(), 64)
            .unwrap()
            .iter()
            .map(|a| a.to_line())
            .collect()
    }

    #[test]
    fn or_clause_has_three_models_in_lex_order() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert_eq!(models(&f), vec!["-1 2 0", "1 -2 0", "1 2 0"]);
    }

    #[test]
    fn forced_chain_is_unique() {
        let f = CnfFormula::from_ints(2, &[&[1], &[-1, 2]]).unwrap();
        assert_eq!(models(&f), vec!["1 2 0"]);
    }

    #[test]
    fn contradiction_has_no_models() {
        let f = CnfFormula::from_ints(1, &[&[1], &[-1]]).unwrap();
        assert!(models(&f).is_empty());
    }

    #[test]
    fn zero_variables_has_one_empty_model() {
        let f = CnfFormula::new(0, vec![]).unwrap();
        assert_eq!(models(&f), vec!["0"]);
    }

    #[test]
    fn fixed_part_and_limit_are_honoured() {
        let f = CnfFormula::from_ints(3, &[&[1, 2, 3]]).unwrap();
        let fixed = PartialAssignment::from_pairs([(2, false)]);
        let got = enumerate_proper(&f, &fixed, 2).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].to_line(), "-1 -2 3 0");
        assert_eq!(got[1].to_line(), "1 -2 -3 0");
        assert!(enumerate_proper(&f, &fixed, 0).is_err());
        assert!(enumerate_proper(&f, &PartialAssignment::from_pairs([(4, true)]), 1).is_err());
    }

    #[test]
    fn conflicting_fixed_part_yields_nothing() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let fixed = PartialAssignment::from_pairs([(1, false), (2, false)]);
        assert!(enumerate_proper(&f, &fixed, 4).unwrap().is_empty());
    }
}
