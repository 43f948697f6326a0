//! Executable SAT-side reductions.
//!
//! * [`construct_mu`]: exists-not-exists 3SAT to exists-unique-exists 4SAT by
//!   adding a switch variable `z`.
//! * [`split_to_3cnf`]: replaces every 4-literal `(C_i or z)` clause with a
//!   six-clause 3CNF block over a fresh variable `v_i`.
//! * [`reduce_unique_to_q2`]: exists-unique-exists 3SAT to Q2 (pair defining
//!   set of size at most `|x|`).
//! * [`reduce_q2_to_q3`]: Q2 to Q3 by padding each variable with `k + 1`
//!   implied copies.
//!
//! Fresh variables are appended after the retained input variables in the
//! order z, gadget variables, chain variables, pair variables, padding
//! variables. Every construction checks the anchor it claims before
//! returning.

use std::collections::BTreeMap;
use std::fmt;

use crate::cnf::{distinct_literals, is_proper_partial, pad_clause, satisfies_total, CnfFormula, Lit, PartialAssignment, Var};
use crate::defset_sat::{DefsetSatInstance, QuantifiedSplit};
use crate::error::{Error, Result};

/// Which input object an output variable encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarRole {
    /// An input variable carried over unchanged.
    Original { source: Var },
    OriginalX { source: Var },
    OriginalY { source: Var },
    /// A y variable feeding the chain, with the polarity chosen for its
    /// chain literal (`a_j = y_j` when positive, `~y_j` otherwise).
    ChainY { source: Var, chain_literal_positive: bool },
    Z,
    /// Interior variable of the block replacing clause `clause` (1-based).
    Gadget { clause: usize },
    Chain { position: usize },
    PairV { x: Var },
    PairVPrime { x: Var },
    Pad { x: Var, copy: usize },
}

impl fmt::Display for VarRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarRole::Original { source } => write!(f, "original:{source}"),
            VarRole::OriginalX { source } => write!(f, "original-x:{source}"),
            VarRole::OriginalY { source } => write!(f, "original-y:{source}"),
            VarRole::ChainY {
                source,
                chain_literal_positive,
            } => write!(f, "original-y:{source}:a={}", if *chain_literal_positive { "+" } else { "-" }),
            VarRole::Z => write!(f, "z"),
            VarRole::Gadget { clause } => write!(f, "gadget-v:clause={clause}"),
            VarRole::Chain { position } => write!(f, "chain-w:{position}"),
            VarRole::PairV { x } => write!(f, "pair-v:x={x}"),
            VarRole::PairVPrime { x } => write!(f, "pair-v':x={x}"),
            VarRole::Pad { x, copy } => write!(f, "pad-y:x={x},j={copy}"),
        }
    }
}

/// Output of a construction together with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub output: CnfFormula,
    pub provenance: BTreeMap<Var, VarRole>,
    /// The anchor the construction defines on its output, if any.
    pub anchor_out: Option<PartialAssignment>,
    pub budget_out: Option<usize>,
    /// Block structure of the output when it is a quantified instance.
    pub split_out: Option<QuantifiedSplit>,
}

impl ReductionArtifact {
    fn build(
        num_vars: u32,
        clauses: Vec<Vec<Lit>>,
        provenance: BTreeMap<Var, VarRole>,
        anchor_out: Option<PartialAssignment>,
        budget_out: Option<usize>,
    ) -> Result<Self> {
        if provenance.len() != num_vars as usize || provenance.keys().copied().ne(1..=num_vars) {
            return Err(Error::InvalidInput("provenance does not cover the output variables".into()));
        }
        let mut output = CnfFormula::new(num_vars, clauses)?;
        for (&v, role) in &provenance {
            output.set_var_name(v, role.to_string());
        }
        Ok(ReductionArtifact {
            output,
            provenance,
            anchor_out,
            budget_out,
            split_out: None,
        })
    }

    /// Sidecar text: one `var <idx> role <tag>` line per output variable.
    pub fn provenance_sidecar(&self) -> String {
        self.provenance
            .iter()
            .map(|(v, role)| format!("var {v} role {role}\n"))
            .collect()
    }

    pub fn var_with_role(&self, wanted: &VarRole) -> Option<Var> {
        self.provenance.iter().find(|(_, r)| *r == wanted).map(|(&v, _)| v)
    }
}

fn require_width3(formula: &CnfFormula) -> Result<()> {
    if formula.width() > 3 {
        return Err(Error::InvalidInput(format!(
            "expected a 3CNF, found a clause with {} distinct literals",
            formula.width()
        )));
    }
    Ok(())
}

/// Adds `z` to every clause and the implications `z -> y_j`.
///
/// Output: `AND_i (C_i or z) AND AND_j (~z or y_j)`, anchor `z = y_j = true`.
/// The output split keeps the x block and puts `z` at the end of the y block.
pub fn construct_mu(split: &QuantifiedSplit) -> Result<ReductionArtifact> {
    let phi = split.formula();
    require_width3(phi)?;
    let n = phi.num_vars();
    let z = n + 1;

    let mut clauses: Vec<Vec<Lit>> = phi
        .clauses()
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.push(Lit::pos(z));
            c
        })
        .collect();
    clauses.extend(split.y_vars().iter().map(|&y| vec![Lit::neg(z), Lit::pos(y)]));

    let mut provenance = BTreeMap::new();
    for &x in split.x_vars() {
        provenance.insert(x, VarRole::OriginalX { source: x });
    }
    for &y in split.y_vars() {
        provenance.insert(y, VarRole::OriginalY { source: y });
    }
    provenance.insert(z, VarRole::Z);

    let anchor = PartialAssignment::from_pairs(split.y_vars().iter().map(|&y| (y, true)).chain([(z, true)]));
    let mut artifact = ReductionArtifact::build(z, clauses, provenance, Some(anchor.clone()), None)?;
    if !is_proper_partial(&artifact.output, &anchor) {
        return Err(Error::contract("z/y anchor is not proper on the constructed formula"));
    }
    let mut y_out = split.y_vars().to_vec();
    y_out.push(z);
    artifact.split_out = Some(QuantifiedSplit::new(
        artifact.output.clone(),
        split.x_vars().to_vec(),
        y_out,
        Some(anchor),
    )?);
    Ok(artifact)
}

/// The six clauses standing in for `(a1 or a2 or a3 or z)`.
pub fn cprime_block(a: [Lit; 3], z: Lit, v: Lit) -> [Vec<Lit>; 6] {
    let [a1, a2, a3] = a;
    [
        vec![a1, a2, v],
        vec![a3, z, !v],
        vec![!a1, !z, v],
        vec![!a2, !z, v],
        vec![!a1, !a3, v],
        vec![!a2, !a3, v],
    ]
}

/// Rewrites the output of [`construct_mu`] into a 3CNF.
///
/// The clause containing `z` positively is split as `C_i` plus `z`, where
/// `C_i` is padded to three slots by repeating its last literal. The anchor
/// gains `v_i = true` for every block.
pub fn split_to_3cnf(mu: &ReductionArtifact) -> Result<ReductionArtifact> {
    let malformed = |why: &str| Error::InvalidInput(format!("not a z-switched formula: {why}"));
    let z = mu.var_with_role(&VarRole::Z).ok_or_else(|| malformed("no z variable"))?;
    let split = mu.split_out.as_ref().ok_or_else(|| malformed("missing block structure"))?;
    let anchor_in = mu.anchor_out.as_ref().ok_or_else(|| malformed("missing anchor"))?;

    let input = &mu.output;
    let mut next = input.num_vars();
    let mut clauses = Vec::new();
    let mut provenance = mu.provenance.clone();
    let mut anchor = anchor_in.clone();
    let mut gadget_vars = Vec::new();
    let mut block = 0;

    for clause in input.clauses() {
        let lits = distinct_literals(clause);
        let has_pos = lits.contains(&Lit::pos(z));
        let has_neg = lits.contains(&Lit::neg(z));
        match (has_pos, has_neg) {
            (true, false) => {
                let rest: Vec<Lit> = lits.iter().copied().filter(|l| l.var() != z).collect();
                if rest.is_empty() || rest.len() > 3 {
                    return Err(malformed("a z clause must carry one to three other literals"));
                }
                let a = pad_clause(&rest, 3);
                block += 1;
                next += 1;
                let v = next;
                provenance.insert(v, VarRole::Gadget { clause: block });
                anchor.insert(v, true);
                gadget_vars.push(v);
                clauses.extend(cprime_block([a[0], a[1], a[2]], Lit::pos(z), Lit::pos(v)));
            }
            (false, true) if lits.len() == 2 => clauses.push(clause.clone()),
            _ => return Err(malformed("clause is neither (C or z) nor (~z or y)")),
        }
    }

    let mut artifact = ReductionArtifact::build(next, clauses, provenance, Some(anchor.clone()), None)?;
    if !is_proper_partial(&artifact.output, &anchor) {
        return Err(Error::contract("extended anchor is not proper on the 3CNF"));
    }
    let mut y_out = split.y_vars().to_vec();
    y_out.extend(gadget_vars);
    artifact.split_out = Some(QuantifiedSplit::new(
        artifact.output.clone(),
        split.x_vars().to_vec(),
        y_out,
        Some(anchor),
    )?);
    Ok(artifact)
}

/// Output variables standing for one x variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairMap {
    pub x: Var,
    pub v: Var,
    pub v_prime: Var,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q2Reduction {
    pub artifact: ReductionArtifact,
    /// Target pair `(P(phi), t')` with budget `|x|`.
    pub instance: DefsetSatInstance,
    pub pairs: Vec<PairMap>,
}

/// Reduces exists-unique-exists 3SAT to Q2-3SAT.
///
/// Output variables: the y block renumbered `1..=m`, then the chain
/// `w_1..w_{m-1}` (a single `w_1` when `m = 1`), then `v_i, v'_i` for each x
/// variable. Positive x literals become `v_i`, negative ones `v'_i`.
pub fn reduce_unique_to_q2(split: &QuantifiedSplit) -> Result<Q2Reduction> {
    let source = split.formula();
    require_width3(source)?;
    let t = split
        .anchor_t()
        .ok_or_else(|| Error::contract("the source needs a proper partial anchor t"))?;
    if !is_proper_partial(source, t) {
        return Err(Error::contract("anchor t is not a proper partial assignment"));
    }
    let m = split.y_vars().len();
    if m == 0 {
        return Err(Error::InvalidInput(
            "empty y block: the chain needs at least one y variable".into(),
        ));
    }
    let k = split.x_vars().len();
    let chain_len = (m - 1).max(1);

    let mut provenance = BTreeMap::new();
    let mut target_of: BTreeMap<Var, (Var, Var)> = BTreeMap::new();
    let mut chain_lits = Vec::with_capacity(m);
    let mut anchor = PartialAssignment::new();

    for (j, &y) in split.y_vars().iter().enumerate() {
        let out = j as Var + 1;
        let ty = t.get(y).expect("t binds the y block");
        let a = if ty { Lit::neg(out) } else { Lit::pos(out) };
        chain_lits.push(a);
        provenance.insert(
            out,
            VarRole::ChainY {
                source: y,
                chain_literal_positive: a.is_positive(),
            },
        );
        target_of.insert(y, (out, out));
        anchor.insert(out, ty);
    }
    let w = |i: usize| (m + i) as Var;
    for i in 1..=chain_len {
        provenance.insert(w(i), VarRole::Chain { position: i });
        anchor.insert(w(i), true);
    }
    let mut pairs = Vec::with_capacity(k);
    for (i, &x) in split.x_vars().iter().enumerate() {
        let v = (m + chain_len + 2 * i + 1) as Var;
        let vp = v + 1;
        provenance.insert(v, VarRole::PairV { x });
        provenance.insert(vp, VarRole::PairVPrime { x });
        target_of.insert(x, (v, vp));
        anchor.insert(v, false);
        anchor.insert(vp, false);
        pairs.push(PairMap { x, v, v_prime: vp });
    }
    let num_vars = (m + chain_len + 2 * k) as Var;

    let is_x: Vec<bool> = {
        let mut flags = vec![false; source.num_vars() as usize + 1];
        for &x in split.x_vars() {
            flags[x as usize] = true;
        }
        flags
    };
    let mut clauses: Vec<Vec<Lit>> = source
        .clauses()
        .iter()
        .map(|clause| {
            clause
                .iter()
                .map(|&lit| {
                    let (pos, neg) = target_of[&lit.var()];
                    if is_x[lit.var() as usize] {
                        Lit::pos(if lit.is_positive() { pos } else { neg })
                    } else {
                        Lit::new(pos, lit.is_positive())
                    }
                })
                .collect()
        })
        .collect();

    if m == 1 {
        clauses.push(vec![chain_lits[0], chain_lits[0], Lit::pos(w(1))]);
    } else {
        clauses.push(vec![chain_lits[0], chain_lits[1], Lit::pos(w(1))]);
        for j in 3..=m {
            clauses.push(vec![Lit::neg(w(j - 2)), chain_lits[j - 1], Lit::pos(w(j - 1))]);
        }
    }
    let last = Lit::neg(w(chain_len));
    for p in &pairs {
        clauses.push(vec![last, Lit::pos(p.v), Lit::neg(p.v_prime)]);
        clauses.push(vec![last, Lit::neg(p.v), Lit::pos(p.v_prime)]);
    }

    let artifact = ReductionArtifact::build(num_vars, clauses, provenance, Some(anchor.clone()), Some(k))?;
    let dense: Vec<bool> = (1..=num_vars).map(|v| anchor.get(v).unwrap_or(false)).collect();
    if !satisfies_total(&artifact.output, &dense) {
        return Err(Error::contract("constructed anchor t' is not a proper assignment"));
    }
    let instance = DefsetSatInstance::new(artifact.output.clone(), anchor, Some(k))?;
    Ok(Q2Reduction {
        artifact,
        instance,
        pairs,
    })
}

/// Reduces Q2-3SAT with budget `k` to Q3-3SAT with the same budget.
///
/// For each variable `x_i` adds `k + 1` clauses `(~x_i or y_ij)` when the
/// anchor makes `x_i` true and `(x_i or y_ij)` otherwise. The reported
/// anchor is the source anchor with every `y_ij` true.
pub fn reduce_q2_to_q3(instance: &DefsetSatInstance, k: usize) -> Result<ReductionArtifact> {
    let phi = instance.formula();
    require_width3(phi)?;
    let t = instance.anchor();
    let n = phi.num_vars();
    let copies = k + 1;

    let mut clauses = phi.clauses().to_vec();
    let mut provenance: BTreeMap<Var, VarRole> = (1..=n).map(|v| (v, VarRole::Original { source: v })).collect();
    let mut anchor = t.clone();
    let mut next = n;
    for x in 1..=n {
        let tx = t.get(x).expect("anchor is total");
        for j in 1..=copies {
            next += 1;
            provenance.insert(next, VarRole::Pad { x, copy: j });
            anchor.insert(next, true);
            clauses.push(vec![Lit::new(x, !tx), Lit::pos(next)]);
        }
    }

    let artifact = ReductionArtifact::build(next, clauses, provenance, Some(anchor.clone()), Some(k))?;
    let dense: Vec<bool> = (1..=next).map(|v| anchor.get(v).unwrap_or(false)).collect();
    if !satisfies_total(&artifact.output, &dense) {
        return Err(Error::contract("padded anchor does not satisfy the padded formula"));
    }
    Ok(artifact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::parse_cnf;
    use crate::sat_search::enumerate_proper;

    #[test]
    fn mu_of_single_clause() {
        let phi = CnfFormula::from_ints(2, &[&[1, 2, 2]]).unwrap();
        let split = QuantifiedSplit::from_x_block(phi, vec![1], None).unwrap();
        let mu = construct_mu(&split).unwrap();
        assert_eq!(mu.output.clauses(), CnfFormula::from_ints(3, &[&[1, 2, 2, 3], &[-3, 2]]).unwrap().clauses());
        assert_eq!(mu.anchor_out, Some(PartialAssignment::from_pairs([(2, true), (3, true)])));
        assert_eq!(mu.provenance[&3], VarRole::Z);
        assert!(is_proper_partial(&mu.output, mu.anchor_out.as_ref().unwrap()));
    }

    #[test]
    fn mu_of_empty_formula() {
        let phi = CnfFormula::new(2, vec![]).unwrap();
        let split = QuantifiedSplit::from_x_block(phi, vec![], None).unwrap();
        let mu = construct_mu(&split).unwrap();
        assert_eq!(mu.output.clauses(), &[vec![Lit::neg(3), Lit::pos(1)], vec![Lit::neg(3), Lit::pos(2)]]);
    }

    #[test]
    fn mu_rejects_wide_clauses() {
        let phi = CnfFormula::from_ints(4, &[&[1, 2, 3, 4]]).unwrap();
        let split = QuantifiedSplit::from_x_block(phi, vec![1], None).unwrap();
        assert!(matches!(construct_mu(&split), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn split_replaces_one_clause_by_six() {
        let phi = CnfFormula::from_ints(3, &[&[1, 2, 3]]).unwrap();
        let split = QuantifiedSplit::from_x_block(phi, vec![1], None).unwrap();
        let mu = construct_mu(&split).unwrap();
        let mu3 = split_to_3cnf(&mu).unwrap();
        // 6 gadget clauses + 2 implications, one new variable.
        assert_eq!(mu3.output.num_clauses(), 8);
        assert_eq!(mu3.output.num_vars(), mu.output.num_vars() + 1);
        assert_eq!(mu3.output.width(), 3);
        assert_eq!(mu3.provenance[&5], VarRole::Gadget { clause: 1 });
        assert_eq!(mu3.anchor_out.as_ref().unwrap().get(5), Some(true));
    }

    #[test]
    fn split_rejects_other_shapes() {
        let phi = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let split = QuantifiedSplit::from_x_block(phi, vec![1], None).unwrap();
        let mut mu = construct_mu(&split).unwrap();
        assert!(split_to_3cnf(&mu).is_ok());
        mu.provenance.insert(3, VarRole::Original { source: 3 });
        assert!(split_to_3cnf(&mu).is_err());
    }

    #[test]
    fn cprime_sixth_clause_is_needed() {
        // a1=F a2=T a3=T z=F: without the last clause v is free.
        let a = [Lit::pos(1), Lit::pos(2), Lit::pos(3)];
        let block = cprime_block(a, Lit::pos(4), Lit::pos(5));
        let fixed = PartialAssignment::from_pairs([(1, false), (2, true), (3, true), (4, false)]);
        let full = CnfFormula::new(5, block.to_vec()).unwrap();
        let five = CnfFormula::new(5, block[..5].to_vec()).unwrap();
        assert_eq!(enumerate_proper(&full, &fixed, 4).unwrap().len(), 1);
        assert_eq!(enumerate_proper(&five, &fixed, 4).unwrap().len(), 2);
    }

    fn toy_split() -> QuantifiedSplit {
        // x = {1}, y = {2, 3}; t(y2) = T, t(y3) = F.
        let phi = CnfFormula::from_ints(3, &[&[1, 2, 3], &[-1, -3, 2], &[2, -3, -3]]).unwrap();
        let t = PartialAssignment::from_pairs([(2, true), (3, false)]);
        QuantifiedSplit::from_x_block(phi, vec![1], Some(t)).unwrap()
    }

    #[test]
    fn q2_target_layout_and_anchor() {
        let r = reduce_unique_to_q2(&toy_split()).unwrap();
        let out = &r.artifact.output;
        // y2 -> 1, y3 -> 2, w1 -> 3, v1 -> 4, v'1 -> 5
        assert_eq!(out.num_vars(), 5);
        assert_eq!(r.pairs, vec![PairMap { x: 1, v: 4, v_prime: 5 }]);
        assert_eq!(r.instance.anchor().to_line(), "1 -2 3 -4 -5 0");
        assert_eq!(r.artifact.budget_out, Some(1));
        // a1 = ~y (t true), a2 = y (t false): chain clause (~1 or 2 or 3).
        assert!(out.clauses().contains(&vec![Lit::neg(1), Lit::pos(2), Lit::pos(3)]));
        assert!(out.clauses().contains(&vec![Lit::neg(3), Lit::pos(4), Lit::neg(5)]));
        assert!(out.clauses().contains(&vec![Lit::neg(3), Lit::neg(4), Lit::pos(5)]));
        // x1 -> v1, ~x1 -> v'1
        assert_eq!(out.clauses()[0], vec![Lit::pos(4), Lit::pos(1), Lit::pos(2)]);
        assert_eq!(out.clauses()[1], vec![Lit::pos(5), Lit::neg(2), Lit::pos(1)]);
    }

    #[test]
    fn q2_y_block_at_t_forces_the_chain() {
        let r = reduce_unique_to_q2(&toy_split()).unwrap();
        let fixed = PartialAssignment::from_pairs([(1, true), (2, false)]);
        for model in enumerate_proper(&r.artifact.output, &fixed, 64).unwrap() {
            assert_eq!(model.get(3), Some(true));
        }
    }

    #[test]
    fn q2_single_y_uses_degenerate_chain() {
        let phi = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let t = PartialAssignment::from_pairs([(2, true)]);
        let split = QuantifiedSplit::from_x_block(phi, vec![1], Some(t)).unwrap();
        let r = reduce_unique_to_q2(&split).unwrap();
        assert!(r.artifact.output.clauses().contains(&vec![Lit::neg(1), Lit::neg(1), Lit::pos(2)]));
    }

    #[test]
    fn q2_rejects_empty_y_block_and_missing_anchor() {
        let phi = CnfFormula::new(1, vec![]).unwrap();
        let split = QuantifiedSplit::from_x_block(phi.clone(), vec![1], Some(PartialAssignment::new())).unwrap();
        assert!(matches!(reduce_unique_to_q2(&split), Err(Error::InvalidInput(_))));
        let split = QuantifiedSplit::from_x_block(phi, vec![], None).unwrap();
        assert!(matches!(reduce_unique_to_q2(&split), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn q3_padding_for_single_true_variable() {
        let phi = CnfFormula::from_ints(1, &[&[1]]).unwrap();
        let inst = DefsetSatInstance::new(phi, PartialAssignment::from_pairs([(1, true)]), Some(1)).unwrap();
        let r = reduce_q2_to_q3(&inst, 1).unwrap();
        assert_eq!(
            r.output.clauses(),
            &[vec![Lit::pos(1)], vec![Lit::neg(1), Lit::pos(2)], vec![Lit::neg(1), Lit::pos(3)]]
        );
        assert_eq!(r.budget_out, Some(1));
        assert_eq!(r.provenance[&3], VarRole::Pad { x: 1, copy: 2 });
    }

    #[test]
    fn q3_anchor_forces_padding_true() {
        let phi = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let t = PartialAssignment::from_pairs([(1, false), (2, true)]);
        let inst = DefsetSatInstance::new(phi, t.clone(), None).unwrap();
        let r = reduce_q2_to_q3(&inst, 2).unwrap();
        assert_eq!(r.output.num_vars(), 2 + 2 * 3);
        let models = enumerate_proper(&r.output, &t, 16).unwrap();
        assert_eq!(models.len(), 1);
        assert!((3..=8).all(|v| models[0].get(v) == Some(true)));
    }

    #[test]
    fn sidecar_and_reparse() {
        let r = reduce_unique_to_q2(&toy_split()).unwrap();
        let side = r.artifact.provenance_sidecar();
        assert_eq!(side.lines().count(), 5);
        assert!(side.starts_with("var 1 role original-y:2:a=-\n"));
        let back = parse_cnf(&r.artifact.output.to_dimacs()).unwrap();
        assert_eq!(back, r.artifact.output);
    }
}
