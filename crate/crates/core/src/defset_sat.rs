//! Defining sets over the family of proper assignments of a CNF.
//!
//! `D` is a defining set of `(P(phi), S)` when `S` is the only proper
//! assignment of `phi` containing `D`. The minimizers sweep candidate
//! supports by increasing size, lexicographically within a size, and run a
//! uniqueness check (search for a second model) on each. Variables that can
//! be flipped alone without leaving the family belong to every defining set
//! and are always included.

use serde::{Deserialize, Serialize};

use crate::cnf::{is_proper_partial, satisfies_total, CnfFormula, PartialAssignment, Var};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::sat_search::{check_support, SatEngine};
use crate::subsets::{first_hit, merge_sorted};

/// The pair `(P(phi), S)` and an optional budget `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefsetSatInstance {
    formula: CnfFormula,
    anchor: PartialAssignment,
    budget: Option<usize>,
}

impl DefsetSatInstance {
    /// Fails unless `anchor` is total and satisfies `formula`.
    pub fn new(formula: CnfFormula, anchor: PartialAssignment, budget: Option<usize>) -> Result<Self> {
        if !anchor.is_total_for(formula.num_vars()) {
            return Err(Error::contract(format!(
                "anchor must bind exactly variables 1..={}",
                formula.num_vars()
            )));
        }
        let dense = anchor_values(&anchor, formula.num_vars());
        if !satisfies_total(&formula, &dense) {
            return Err(Error::contract("anchor does not satisfy the formula"));
        }
        Ok(DefsetSatInstance {
            formula,
            anchor,
            budget,
        })
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn anchor(&self) -> &PartialAssignment {
        &self.anchor
    }

    pub fn budget(&self) -> Option<usize> {
        self.budget
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }
}

fn anchor_values(anchor: &PartialAssignment, num_vars: u32) -> Vec<bool> {
    (1..=num_vars).map(|v| anchor.get(v).unwrap_or(false)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDefiningSet {
    pub size: usize,
    #[serde(with = "assignment_serde")]
    pub witness: PartialAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMinDefiningSet {
    pub size: usize,
    #[serde(with = "assignment_serde")]
    pub anchor: PartialAssignment,
    #[serde(with = "assignment_serde")]
    pub witness: PartialAssignment,
}

mod assignment_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::cnf::{Lit, PartialAssignment};

    pub fn serialize<S: Serializer>(a: &PartialAssignment, s: S) -> Result<S::Ok, S::Error> {
        let lits: Vec<i32> = a.literals().into_iter().map(Lit::to_dimacs).collect();
        lits.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PartialAssignment, D::Error> {
        let lits = Vec::<i32>::deserialize(d)?;
        Ok(PartialAssignment::from_literals(lits.into_iter().filter_map(Lit::from_dimacs)))
    }
}

/// Q1: is `candidate` a defining set of the instance?
pub fn is_defining_set(instance: &DefsetSatInstance, candidate: &PartialAssignment, cfg: &SearchConfig) -> Result<bool> {
    let formula = instance.formula();
    cfg.check_vars(formula.num_vars() as usize)?;
    check_support(formula, candidate, "candidate")?;
    if !candidate.is_restriction_of(instance.anchor()) {
        return Err(Error::contract("candidate is not a restriction of the anchor"));
    }
    let engine = SatEngine::new(formula);
    Ok(engine.count_models(&candidate.to_dense(formula.num_vars()), 2) == 1)
}

/// Variables whose single flip keeps the anchor proper.
fn flippable_vars(formula: &CnfFormula, anchor: &[bool]) -> Vec<usize> {
    let mut values = anchor.to_vec();
    (1..=formula.num_vars() as usize)
        .filter(|&v| {
            values[v - 1] = !values[v - 1];
            let ok = satisfies_total(formula, &values);
            values[v - 1] = !values[v - 1];
            ok
        })
        .collect()
}

fn pair_search(instance: &DefsetSatInstance, max_size: usize, cfg: &SearchConfig) -> Result<Option<PartialAssignment>> {
    let formula = instance.formula();
    let n = formula.num_vars() as usize;
    cfg.check_vars(n)?;
    let engine = SatEngine::new(formula);
    let anchor = anchor_values(instance.anchor(), formula.num_vars());
    let forced = flippable_vars(formula, &anchor);
    let free: Vec<usize> = (1..=n).filter(|v| !forced.contains(v)).collect();

    for size in forced.len()..=max_size.min(n) {
        let hit = first_hit(&free, size - forced.len(), cfg.jobs, |extra| {
            let mut fixed = vec![None; n + 1];
            for &v in forced.iter().chain(extra) {
                fixed[v] = Some(anchor[v - 1]);
            }
            (engine.count_models(&fixed, 2) == 1).then_some(())
        });
        if let Some((extra, ())) = hit {
            let support = merge_sorted(&forced, &extra);
            return Ok(Some(PartialAssignment::from_pairs(
                support.into_iter().map(|v| (v as Var, anchor[v - 1])),
            )));
        }
    }
    Ok(None)
}

/// Q2 in optimization form: minimum size and the canonical witness, the
/// lexicographically first support of that size.
pub fn min_defining_set(instance: &DefsetSatInstance, cfg: &SearchConfig) -> Result<MinDefiningSet> {
    let n = instance.formula().num_vars() as usize;
    let witness = pair_search(instance, n, cfg)?.expect("the anchor itself is always defining");
    Ok(MinDefiningSet {
        size: witness.len(),
        witness,
    })
}

/// Q2 in decision form: a defining set of size at most `k`, if one exists.
pub fn defining_set_within(instance: &DefsetSatInstance, k: usize, cfg: &SearchConfig) -> Result<Option<PartialAssignment>> {
    pair_search(instance, k, cfg)
}

fn family_search(formula: &CnfFormula, max_size: usize, cfg: &SearchConfig) -> Result<Option<FamilyMinDefiningSet>> {
    let n = formula.num_vars() as usize;
    cfg.check_vars(n)?;
    let engine = SatEngine::new(formula);
    if engine.count_models(&vec![None; n + 1], 1) == 0 {
        return Err(Error::Unsatisfiable);
    }
    // A variable in no clause can be flipped in every proper assignment.
    let mut mentioned = vec![false; n + 1];
    for clause in formula.clauses() {
        for lit in clause {
            mentioned[lit.var() as usize] = true;
        }
    }
    let forced: Vec<usize> = (1..=n).filter(|&v| !mentioned[v]).collect();
    let free: Vec<usize> = (1..=n).filter(|&v| mentioned[v]).collect();

    for size in forced.len()..=max_size.min(n) {
        let hit = first_hit(&free, size - forced.len(), cfg.jobs, |extra| {
            let support = merge_sorted(&forced, extra);
            let mut fixed = vec![None; n + 1];
            // Values in lexicographic order, first support variable most significant.
            for bits in 0u64..(1u64 << support.len()) {
                for (i, &v) in support.iter().enumerate() {
                    fixed[v] = Some(bits >> (support.len() - 1 - i) & 1 == 1);
                }
                if let Some(model) = engine.unique_model(&fixed) {
                    return Some(model);
                }
            }
            None
        });
        if let Some((extra, model)) = hit {
            let support = merge_sorted(&forced, &extra);
            let anchor = PartialAssignment::from_total(&model);
            let witness = anchor.restricted_to(support.into_iter().map(|v| v as Var));
            return Ok(Some(FamilyMinDefiningSet { size, anchor, witness }));
        }
    }
    Ok(None)
}

/// Q3 in optimization form: the smallest defining set over all anchors.
/// Ties break on the witness (support, then values), which also fixes the
/// anchor.
pub fn min_defining_set_family(formula: &CnfFormula, cfg: &SearchConfig) -> Result<FamilyMinDefiningSet> {
    let n = formula.num_vars() as usize;
    Ok(family_search(formula, n, cfg)?.expect("every proper assignment is defined by itself"))
}

/// Q3 in decision form.
pub fn family_defining_set_within(formula: &CnfFormula, k: usize, cfg: &SearchConfig) -> Result<Option<FamilyMinDefiningSet>> {
    family_search(formula, k, cfg)
}

/// A formula with its variables split into an outer block `x` and an inner
/// block `y`, optionally with a proper partial assignment `t` over `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantifiedSplit {
    formula: CnfFormula,
    x_vars: Vec<Var>,
    y_vars: Vec<Var>,
    anchor_t: Option<PartialAssignment>,
}

impl QuantifiedSplit {
    pub fn new(formula: CnfFormula, x_vars: Vec<Var>, y_vars: Vec<Var>, anchor_t: Option<PartialAssignment>) -> Result<Self> {
        let n = formula.num_vars() as usize;
        let mut seen = vec![false; n + 1];
        for &v in x_vars.iter().chain(&y_vars) {
            if v == 0 || v as usize > n {
                return Err(Error::contract(format!("block variable {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::contract(format!("variable {v} appears in both blocks or twice")));
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::contract("x and y blocks must cover every variable"));
        }
        if let Some(t) = &anchor_t {
            let mut support: Vec<Var> = t.support().collect();
            let mut ys = y_vars.clone();
            support.sort_unstable();
            ys.sort_unstable();
            if support != ys {
                return Err(Error::contract("anchor t must bind exactly the y block"));
            }
            if !is_proper_partial(&formula, t) {
                return Err(Error::contract("anchor t is not a proper partial assignment"));
            }
        }
        Ok(QuantifiedSplit {
            formula,
            x_vars,
            y_vars,
            anchor_t,
        })
    }

    /// Split whose y block is every variable not listed in `x_vars`.
    pub fn from_x_block(formula: CnfFormula, x_vars: Vec<Var>, anchor_t: Option<PartialAssignment>) -> Result<Self> {
        let y_vars = formula.vars().filter(|v| !x_vars.contains(v)).collect();
        QuantifiedSplit::new(formula, x_vars, y_vars, anchor_t)
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn x_vars(&self) -> &[Var] {
        &self.x_vars
    }

    pub fn y_vars(&self) -> &[Var] {
        &self.y_vars
    }

    pub fn anchor_t(&self) -> Option<&PartialAssignment> {
        self.anchor_t.as_ref()
    }
}

/// Visits assignments to the x block in lexicographic order, counting the
/// models of each, until `stop` says so.
fn sweep_x_block(split: &QuantifiedSplit, limit: usize, cfg: &SearchConfig, stop: impl Fn(usize) -> bool) -> Result<bool> {
    let n = split.formula().num_vars() as usize;
    cfg.check_vars(n)?;
    let engine = SatEngine::new(split.formula());
    let xs = split.x_vars();
    let mut fixed = vec![None; n + 1];
    for bits in 0u64..(1u64 << xs.len()) {
        for (i, &v) in xs.iter().enumerate() {
            fixed[v as usize] = Some(bits >> (xs.len() - 1 - i) & 1 == 1);
        }
        if stop(engine.count_models(&fixed, limit)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Is there an x-assignment with no satisfying y-completion?
pub fn exists_forall_check(split: &QuantifiedSplit, cfg: &SearchConfig) -> Result<bool> {
    if split.anchor_t().is_some() {
        return Err(Error::contract("the exists-not-exists question takes no anchor t"));
    }
    sweep_x_block(split, 1, cfg, |count| count == 0)
}

/// Is there an x-assignment whose extension to a proper assignment is
/// unique? When there is, the unique model agrees with `t` on y.
pub fn exists_uniqueexists_check(split: &QuantifiedSplit, cfg: &SearchConfig) -> Result<bool> {
    if split.anchor_t().is_none() {
        return Err(Error::contract("the exists-unique question needs a proper partial anchor t"));
    }
    sweep_x_block(split, 2, cfg, |count| count == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn inst(f: &CnfFormula, anchor: &[(Var, bool)]) -> DefsetSatInstance {
        DefsetSatInstance::new(f.clone(), PartialAssignment::from_pairs(anchor.iter().copied()), None).unwrap()
    }

    #[test]
    fn instance_rejects_partial_or_unsatisfying_anchor() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert!(DefsetSatInstance::new(f.clone(), PartialAssignment::from_pairs([(1, true)]), None).is_err());
        assert!(DefsetSatInstance::new(f, PartialAssignment::from_pairs([(1, false), (2, false)]), None).is_err());
    }

    #[test]
    fn is_defining_set_examples() {
        let unique = CnfFormula::from_ints(2, &[&[1], &[-1, 2]]).unwrap();
        let i = inst(&unique, &[(1, true), (2, true)]);
        assert!(is_defining_set(&i, &PartialAssignment::new(), &cfg()).unwrap());

        let or = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let i = inst(&or, &[(1, true), (2, true)]);
        assert!(!is_defining_set(&i, &PartialAssignment::new(), &cfg()).unwrap());

        let xor = CnfFormula::from_ints(2, &[&[1, 2], &[-1, -2]]).unwrap();
        let i = inst(&xor, &[(1, true), (2, false)]);
        assert!(is_defining_set(&i, &PartialAssignment::from_pairs([(1, true)]), &cfg()).unwrap());
    }

    #[test]
    fn candidate_must_restrict_anchor() {
        let xor = CnfFormula::from_ints(2, &[&[1, 2], &[-1, -2]]).unwrap();
        let i = inst(&xor, &[(1, true), (2, false)]);
        let err = is_defining_set(&i, &PartialAssignment::from_pairs([(1, false)]), &cfg()).unwrap_err();
        assert!(matches!(err, Error::ContractViolation(_)));
    }

    #[test]
    fn min_defining_set_examples() {
        let unique = CnfFormula::from_ints(2, &[&[1], &[-1, 2]]).unwrap();
        let m = min_defining_set(&inst(&unique, &[(1, true), (2, true)]), &cfg()).unwrap();
        assert_eq!(m.size, 0);
        assert!(m.witness.is_empty());

        let xor = CnfFormula::from_ints(2, &[&[1, 2], &[-1, -2]]).unwrap();
        let m = min_defining_set(&inst(&xor, &[(1, true), (2, false)]), &cfg()).unwrap();
        assert_eq!(m.size, 1);
        assert_eq!(m.witness, PartialAssignment::from_pairs([(1, true)]));
    }

    #[test]
    fn free_variable_is_always_in_the_witness() {
        // x2 occurs nowhere, x1 is forced.
        let f = CnfFormula::from_ints(2, &[&[1]]).unwrap();
        let m = min_defining_set(&inst(&f, &[(1, true), (2, false)]), &cfg()).unwrap();
        assert_eq!(m.witness, PartialAssignment::from_pairs([(2, false)]));
        assert!(defining_set_within(&inst(&f, &[(1, true), (2, false)]), 0, &cfg()).unwrap().is_none());
    }

    #[test]
    fn family_examples() {
        let unique = CnfFormula::from_ints(2, &[&[1], &[-1, 2]]).unwrap();
        assert_eq!(min_defining_set_family(&unique, &cfg()).unwrap().size, 0);

        let or = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let fam = min_defining_set_family(&or, &cfg()).unwrap();
        assert_eq!(fam.size, 1);
        // {x1:F} forces x2:T and is the first support/value pair that works.
        assert_eq!(fam.witness, PartialAssignment::from_pairs([(1, false)]));
        assert_eq!(fam.anchor.to_line(), "-1 2 0");

        let unsat = CnfFormula::from_ints(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(min_defining_set_family(&unsat, &cfg()).unwrap_err(), Error::Unsatisfiable);
    }

    #[test]
    fn exists_forall_examples() {
        let contra = CnfFormula::from_ints(2, &[&[2], &[-2]]).unwrap();
        let s = QuantifiedSplit::from_x_block(contra, vec![1], None).unwrap();
        assert!(exists_forall_check(&s, &cfg()).unwrap());

        let taut = CnfFormula::from_ints(2, &[&[2, -2]]).unwrap();
        let s = QuantifiedSplit::from_x_block(taut, vec![1], None).unwrap();
        assert!(!exists_forall_check(&s, &cfg()).unwrap());

        // x1 = F leaves (y1) and (~y1): no completion.
        let f = CnfFormula::from_ints(2, &[&[1, 2], &[1, -2]]).unwrap();
        let s = QuantifiedSplit::from_x_block(f, vec![1], None).unwrap();
        assert!(exists_forall_check(&s, &cfg()).unwrap());
    }

    #[test]
    fn exists_unique_requires_anchor_and_detects_forcing() {
        let f = CnfFormula::from_ints(2, &[&[1], &[2]]).unwrap();
        let t = PartialAssignment::from_pairs([(1, true), (2, true)]);
        let s = QuantifiedSplit::from_x_block(f.clone(), vec![], Some(t)).unwrap();
        assert!(exists_uniqueexists_check(&s, &cfg()).unwrap());
        let bare = QuantifiedSplit::from_x_block(f, vec![], None).unwrap();
        assert!(exists_uniqueexists_check(&bare, &cfg()).is_err());
    }

    #[test]
    fn split_validation() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert!(QuantifiedSplit::new(f.clone(), vec![1], vec![1, 2], None).is_err());
        assert!(QuantifiedSplit::new(f.clone(), vec![1], vec![], None).is_err());
        let improper = PartialAssignment::from_pairs([(2, false)]);
        assert!(QuantifiedSplit::new(f, vec![1], vec![2], Some(improper)).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let f = CnfFormula::new(30, vec![]).unwrap();
        let err = min_defining_set_family(&f, &cfg()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { actual: 30, cap: 24, .. }));
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        let f = CnfFormula::from_ints(6, &[&[1, 2, 3], &[-1, 4], &[-2, 5, -6], &[3, -4, 6], &[-3, -5]]).unwrap();
        let seq = min_defining_set_family(&f, &cfg()).unwrap();
        let par = crate::config::with_pool(4, || min_defining_set_family(&f, &cfg().with_jobs(4)).unwrap());
        assert_eq!(seq, par);
    }
}
