//! Deterministic instance generators for sweeps.
//!
//! Exhaustive generators walk a fixed clause universe in a fixed order.
//! Random generators draw from a `ChaCha8Rng` seeded by the caller, so the
//! same seed always yields the same instances.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cnf::{CnfFormula, Lit, PartialAssignment, Var};
use crate::graph::Graph;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All clauses over variables `1..=n` with one to three distinct literals,
/// ordered by width and then lexicographically by literal code.
pub fn clause_universe(n: u32) -> Vec<Vec<Lit>> {
    let literals: Vec<Lit> = (1..=n).flat_map(|v| [Lit::pos(v), Lit::neg(v)]).collect();
    (1..=3)
        .flat_map(|w| literals.iter().copied().combinations(w))
        .collect()
}

/// Every formula over `1..=n` made of at most `max_clauses` distinct
/// clauses from [`clause_universe`].
pub fn all_formulas(n: u32, max_clauses: usize) -> Vec<CnfFormula> {
    let universe = clause_universe(n);
    (0..=max_clauses)
        .flat_map(|c| universe.iter().cloned().combinations(c))
        .map(|clauses| CnfFormula::new(n, clauses).expect("universe clauses are in range"))
        .collect()
}

/// A random formula with `num_vars` variables and `num_clauses` clauses of
/// one to three distinct variables each.
pub fn random_formula(rng: &mut ChaCha8Rng, num_vars: u32, num_clauses: usize) -> CnfFormula {
    let vars: Vec<Var> = (1..=num_vars).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            let width = rng.gen_range(1..=3usize.min(num_vars as usize));
            vars.choose_multiple(rng, width)
                .map(|&v| Lit::new(v, rng.gen_bool(0.5)))
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("generated literals are in range")
}

/// Splits `vars` into a random `(x, y)` pair with a non-empty y block.
pub fn random_split(rng: &mut ChaCha8Rng, num_vars: u32) -> (Vec<Var>, Vec<Var>) {
    loop {
        let (y, x): (Vec<Var>, Vec<Var>) = (1..=num_vars).partition(|_| rng.gen_bool(0.5));
        if !y.is_empty() {
            return (x, y);
        }
    }
}

/// All assignments of `vars` that make every clause of `phi` true on
/// their own.
pub fn proper_partials(phi: &CnfFormula, vars: &[Var]) -> Vec<PartialAssignment> {
    (0..1u32 << vars.len())
        .map(|bits| PartialAssignment::from_pairs(vars.iter().enumerate().map(|(i, &v)| (v, bits >> i & 1 == 1))))
        .filter(|t| crate::cnf::is_proper_partial(phi, t))
        .collect()
}

/// A random simple graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("vertices in range");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_sizes() {
        assert_eq!(clause_universe(1).len(), 2 + 1);
        assert_eq!(clause_universe(2).len(), 4 + 6 + 4);
        assert_eq!(clause_universe(3).len(), 6 + 15 + 20);
        assert_eq!(all_formulas(2, 2).len(), 1 + 14 + 91);
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_formula(&mut rng(7), 4, 4);
        let b = random_formula(&mut rng(7), 4, 4);
        assert_eq!(a, b);
        assert!(a.width() <= 3);
        let (x, y) = random_split(&mut rng(3), 4);
        assert!(!y.is_empty());
        assert_eq!(x.len() + y.len(), 4);
    }
}
