//! Brute-force reference answers.
//!
//! Everything here is a plain double enumeration: every total assignment or
//! every color vector, then every subset of positions as a bitmask. None of
//! it touches the propagating solvers, so agreement between the two is
//! meaningful evidence.

pub mod generate;
pub mod verify;

use std::collections::HashMap;

use crate::cnf::{CnfFormula, Lit, PartialAssignment};
use crate::defset_coloring::DefsetColorInstance;
use crate::defset_sat::{DefsetSatInstance, QuantifiedSplit};
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, PartialColoring};

/// Largest formula the SAT oracles accept.
pub const ORACLE_MAX_VARS: usize = 16;
/// Largest graph the coloring oracles accept.
pub const ORACLE_MAX_VERTICES: usize = 12;

fn check_cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        return Err(Error::CapExceeded { what, actual, cap });
    }
    Ok(())
}

/// Bit `v - 1` of `bits` holds the value of variable `v`.
fn literal_true(bits: u32, lit: Lit) -> bool {
    let value = bits >> (lit.var() - 1) & 1 == 1;
    value == lit.is_positive()
}

fn assignment_bits(a: &PartialAssignment) -> (u32, u32) {
    let mut mask = 0;
    let mut bits = 0;
    for (v, b) in a.iter() {
        mask |= 1 << (v - 1);
        if b {
            bits |= 1 << (v - 1);
        }
    }
    (mask, bits)
}

/// Every satisfying total assignment as a bitmask, by full truth table.
pub fn oracle_models(formula: &CnfFormula) -> Result<Vec<u32>> {
    let n = formula.num_vars() as usize;
    check_cap("variables", n, ORACLE_MAX_VARS)?;
    Ok((0..1u32 << n)
        .filter(|&bits| {
            formula
                .clauses()
                .iter()
                .all(|clause| clause.iter().any(|&lit| literal_true(bits, lit)))
        })
        .collect())
}

/// Converts an oracle bitmask over `n` variables into an assignment.
pub fn bits_to_assignment(bits: u32, n: u32) -> PartialAssignment {
    PartialAssignment::from_pairs((1..=n).map(|v| (v, bits >> (v - 1) & 1 == 1)))
}

/// Is `candidate` a defining set of `(P(formula), anchor)`? Assumes the
/// candidate is a restriction of the anchor.
pub fn oracle_is_defining_sat(formula: &CnfFormula, candidate: &PartialAssignment) -> Result<bool> {
    let (mask, bits) = assignment_bits(candidate);
    let models = oracle_models(formula)?;
    Ok(models.iter().filter(|&&m| (m ^ bits) & mask == 0).count() == 1)
}

/// Smallest defining set size of `(P(phi), t)`.
pub fn oracle_min_defset_sat(instance: &DefsetSatInstance) -> Result<usize> {
    let n = instance.formula().num_vars();
    let models = oracle_models(instance.formula())?;
    let (_, anchor) = assignment_bits(instance.anchor());
    let mut best = n as usize;
    for mask in 0..1u32 << n {
        let size = mask.count_ones() as usize;
        if size < best && models.iter().filter(|&&m| (m ^ anchor) & mask == 0).count() == 1 {
            best = size;
        }
    }
    Ok(best)
}

/// Smallest defining set size over all members of `P(phi)`, or `None` when
/// the formula is unsatisfiable.
pub fn oracle_min_defset_sat_family(formula: &CnfFormula) -> Result<Option<usize>> {
    let n = formula.num_vars();
    let models = oracle_models(formula)?;
    if models.is_empty() {
        return Ok(None);
    }
    let mut best = n as usize;
    for mask in 0..1u32 << n {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut groups: HashMap<u32, usize> = HashMap::new();
        for &m in &models {
            *groups.entry(m & mask).or_default() += 1;
        }
        if groups.values().any(|&c| c == 1) {
            best = size;
        }
    }
    Ok(Some(best))
}

/// Number of models for each assignment of the x block.
fn x_block_counts(split: &QuantifiedSplit) -> Result<HashMap<u32, usize>> {
    let models = oracle_models(split.formula())?;
    let x_mask: u32 = split.x_vars().iter().map(|&v| 1u32 << (v - 1)).sum();
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for x_bits in 0..1u32 << split.formula().num_vars() {
        if x_bits & !x_mask == 0 {
            counts.insert(x_bits, 0);
        }
    }
    for m in models {
        *counts.get_mut(&(m & x_mask)).expect("every x pattern is present") += 1;
    }
    Ok(counts)
}

/// Some x-assignment has no satisfying completion.
pub fn oracle_exists_forall(split: &QuantifiedSplit) -> Result<bool> {
    Ok(x_block_counts(split)?.values().any(|&c| c == 0))
}

/// Some x-assignment has exactly one satisfying completion.
pub fn oracle_exists_unique(split: &QuantifiedSplit) -> Result<bool> {
    Ok(x_block_counts(split)?.values().any(|&c| c == 1))
}

/// Chromatic number and all optimal colorings, by trying every color vector
/// for `k = 1, 2, ...`.
pub fn oracle_colorings(g: &Graph) -> Result<(usize, Vec<Vec<usize>>)> {
    let n = g.num_vertices();
    check_cap("vertices", n, ORACLE_MAX_VERTICES)?;
    if n == 0 {
        return Ok((0, vec![Vec::new()]));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for k in 1..=n {
        let mut found = Vec::new();
        let mut colors = vec![0usize; n];
        'outer: loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                found.push(colors.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
            }
        }
        if !found.is_empty() {
            return Ok((k, found));
        }
    }
    unreachable!("n colors always suffice")
}

pub fn oracle_chromatic_number(g: &Graph) -> Result<usize> {
    Ok(oracle_colorings(g)?.0)
}

fn agrees(coloring: &[usize], partial: &PartialColoring) -> bool {
    partial.iter().all(|(v, c)| coloring[v] == c)
}

/// Is `candidate` a defining set of its anchor in `C(g)`?
pub fn oracle_is_defining_coloring(g: &Graph, candidate: &PartialColoring) -> Result<bool> {
    let (_, all) = oracle_colorings(g)?;
    Ok(all.iter().filter(|c| agrees(c, candidate)).count() == 1)
}

/// Smallest defining set size of `(C(G), c)`.
pub fn oracle_min_defset_coloring(instance: &DefsetColorInstance) -> Result<usize> {
    let g = instance.graph();
    let (_, all) = oracle_colorings(g)?;
    Ok(min_mask_size(g.num_vertices(), |mask| {
        let subset = masked(instance.anchor(), mask);
        all.iter().filter(|c| agrees(c, &subset)).count() == 1
    }))
}

/// Smallest defining set size over all members of `C(G)`.
pub fn oracle_min_defset_coloring_family(g: &Graph) -> Result<usize> {
    let (_, all) = oracle_colorings(g)?;
    Ok(min_mask_size(g.num_vertices(), |mask| {
        let mut groups: HashMap<Vec<usize>, usize> = HashMap::new();
        for c in &all {
            let key: Vec<usize> = (0..c.len()).filter(|v| mask >> v & 1 == 1).map(|v| c[v]).collect();
            *groups.entry(key).or_default() += 1;
        }
        groups.values().any(|&n| n == 1)
    }))
}

fn masked(anchor: &Coloring, mask: u32) -> PartialColoring {
    anchor.restricted_to((0..anchor.len()).filter(|v| mask >> v & 1 == 1))
}

fn min_mask_size(n: usize, mut defining: impl FnMut(u32) -> bool) -> usize {
    let mut best = n;
    for mask in 0..1u32 << n {
        let size = mask.count_ones() as usize;
        if size < best && defining(mask) {
            best = size;
        }
    }
    best
}
