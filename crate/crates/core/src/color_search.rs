//! Exact coloring search: chromatic number and ordered enumeration of
//! `chi`-colorings.
//!
//! Domains are color bitmasks. Assigning a color removes it from the
//! neighbours, and any vertex left with a single color is committed at once.
//! Branching takes the smallest uncommitted vertex and tries its colors in
//! increasing order, so colorings are produced in lexicographic order of the
//! color vector.

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, Graph, PartialColoring};

/// Most colors a domain mask can hold.
const MAX_COLORS: usize = 64;

pub(crate) struct ColorEngine {
    adjacency: Vec<Vec<usize>>,
    k: usize,
}

impl ColorEngine {
    pub(crate) fn new(g: &Graph, k: usize) -> Self {
        assert!(k <= MAX_COLORS, "at most {MAX_COLORS} colors are supported");
        ColorEngine {
            adjacency: (0..g.num_vertices()).map(|v| g.neighbors(v).collect()).collect(),
            k,
        }
    }

    pub(crate) fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    fn full_mask(&self) -> u64 {
        if self.k == MAX_COLORS {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        }
    }

    /// Commits `start` (whose domain must be a single color) and everything
    /// that becomes forced. Returns false on a conflict.
    fn commit(&self, domains: &mut [u64], done: &mut [bool], start: usize) -> bool {
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            let bit = domains[u];
            for &w in &self.adjacency[u] {
                if domains[w] & bit != 0 {
                    if done[w] {
                        return false;
                    }
                    domains[w] &= !bit;
                    match domains[w].count_ones() {
                        0 => return false,
                        1 => stack.push(w),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn initial_state(&self, fixed: &[Option<Color>]) -> Option<(Vec<u64>, Vec<bool>)> {
        let n = self.num_vertices();
        let mut domains = vec![self.full_mask(); n];
        let mut done = vec![false; n];
        for (v, c) in fixed.iter().enumerate().take(n) {
            if let Some(c) = *c {
                if c >= self.k || domains[v] & (1 << c) == 0 {
                    return None;
                }
                domains[v] = 1 << c;
                if !self.commit(&mut domains, &mut done, v) {
                    return None;
                }
            }
        }
        for v in 0..n {
            if !done[v] && domains[v].count_ones() == 1 && !self.commit(&mut domains, &mut done, v) {
                return None;
            }
        }
        Some((domains, done))
    }

    /// Visits every proper `k`-coloring extending `fixed` in lexicographic
    /// order until `visit` returns false.
    pub(crate) fn for_each_coloring(&self, fixed: &[Option<Color>], mut visit: impl FnMut(&[Color]) -> bool) {
        if let Some((domains, done)) = self.initial_state(fixed) {
            let mut scratch = vec![0; self.num_vertices()];
            self.descend(domains, done, 0, &mut scratch, &mut visit);
        }
    }

    fn descend(
        &self,
        domains: Vec<u64>,
        done: Vec<bool>,
        start: usize,
        scratch: &mut [Color],
        visit: &mut impl FnMut(&[Color]) -> bool,
    ) -> bool {
        let Some(v) = (start..self.num_vertices()).find(|&v| !done[v]) else {
            for (slot, d) in scratch.iter_mut().zip(&domains) {
                *slot = d.trailing_zeros() as Color;
            }
            return visit(scratch);
        };
        let mut options = domains[v];
        while options != 0 {
            let bit = options & options.wrapping_neg();
            options &= !bit;
            let mut d = domains.clone();
            let mut dn = done.clone();
            d[v] = bit;
            if self.commit(&mut d, &mut dn, v) && !self.descend(d, dn, v + 1, scratch, visit) {
                return false;
            }
        }
        true
    }

    pub(crate) fn count(&self, fixed: &[Option<Color>], limit: usize) -> usize {
        if limit == 0 {
            return 0;
        }
        let mut count = 0;
        self.for_each_coloring(fixed, |_| {
            count += 1;
            count < limit
        });
        count
    }

    /// The single coloring extending `fixed`, if there is exactly one.
    pub(crate) fn unique(&self, fixed: &[Option<Color>]) -> Option<Vec<Color>> {
        let mut found = None;
        let mut count = 0;
        self.for_each_coloring(fixed, |c| {
            count += 1;
            if count == 1 {
                found = Some(c.to_vec());
            }
            count < 2
        });
        (count == 1).then_some(found).flatten()
    }
}

fn colorable(g: &Graph, k: usize) -> bool {
    if g.num_vertices() == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    // Color names are interchangeable, so vertex 0 may take color 0.
    let mut fixed = vec![None; g.num_vertices()];
    fixed[0] = Some(0);
    ColorEngine::new(g, k).count(&fixed, 1) == 1
}

/// Exact chromatic number by trying `k = 1, 2, ...`. The empty graph has
/// chromatic number 0.
pub fn chromatic_number(g: &Graph, cfg: &SearchConfig) -> Result<usize> {
    cfg.check_vertices(g.num_vertices())?;
    Ok(chromatic_number_unchecked(g))
}

pub(crate) fn chromatic_number_unchecked(g: &Graph) -> usize {
    let n = g.num_vertices();
    if n == 0 {
        return 0;
    }
    (1..=n).find(|&k| colorable(g, k)).expect("n colors always suffice")
}

pub(crate) fn check_partial(g: &Graph, partial: &PartialColoring, chi: usize, what: &str) -> Result<()> {
    for (v, c) in partial.iter() {
        if v >= g.num_vertices() {
            return Err(Error::contract(format!(
                "{what} colors vertex {}, outside 1..={}",
                v + 1,
                g.num_vertices()
            )));
        }
        if c >= chi {
            return Err(Error::contract(format!(
                "{what} uses color {c} but the chromatic number is {chi}"
            )));
        }
    }
    Ok(())
}

/// Proper `chi(g)`-colorings extending `fixed`, at most `limit` of them, in
/// lexicographic order of the color vector.
pub fn enumerate_colorings(g: &Graph, fixed: &PartialColoring, limit: usize, cfg: &SearchConfig) -> Result<Vec<Coloring>> {
    if limit == 0 {
        return Err(Error::contract("enumeration limit must be at least 1"));
    }
    let chi = chromatic_number(g, cfg)?;
    check_partial(g, fixed, chi, "fixed coloring")?;
    let mut out = Vec::new();
    ColorEngine::new(g, chi).for_each_coloring(&fixed.to_dense(g.num_vertices()), |c| {
        out.push(Coloring::new(c.to_vec()));
        out.len() < limit
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::new(0), &cfg()).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::new(1), &cfg()).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::new(4), &cfg()).unwrap(), 1);
        assert_eq!(chromatic_number(&cycle(3), &cfg()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(4), &cfg()).unwrap(), 2);
        assert_eq!(chromatic_number(&cycle(5), &cfg()).unwrap(), 3);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(chromatic_number(&k4, &cfg()).unwrap(), 4);
    }

    #[test]
    fn triangle_has_six_colorings_in_order() {
        let all = enumerate_colorings(&cycle(3), &PartialColoring::new(), 100, &cfg()).unwrap();
        let vecs: Vec<Vec<usize>> = all.iter().map(|c| c.colors().to_vec()).collect();
        assert_eq!(
            vecs,
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        );
    }

    #[test]
    fn fixed_colors_restrict_enumeration() {
        let tri = cycle(3);
        let fixed = PartialColoring::from_pairs([(0, 0), (1, 1)]);
        assert_eq!(enumerate_colorings(&tri, &fixed, 10, &cfg()).unwrap().len(), 1);
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let fixed = PartialColoring::from_pairs([(0, 0)]);
        assert_eq!(enumerate_colorings(&edge, &fixed, 10, &cfg()).unwrap().len(), 1);
        let bad = PartialColoring::from_pairs([(0, 0), (1, 0)]);
        assert!(enumerate_colorings(&tri, &bad, 10, &cfg()).unwrap().is_empty());
        let out_of_palette = PartialColoring::from_pairs([(0, 3)]);
        assert!(enumerate_colorings(&tri, &out_of_palette, 10, &cfg()).is_err());
        assert!(enumerate_colorings(&tri, &PartialColoring::new(), 0, &cfg()).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = SearchConfig {
            max_vertices: 2,
            ..SearchConfig::default()
        };
        assert!(matches!(chromatic_number(&cycle(3), &cfg), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn limit_truncates() {
        let all = enumerate_colorings(&Graph::new(3), &PartialColoring::new(), 1, &cfg()).unwrap();
        assert_eq!(all, vec![Coloring::new(vec![0, 0, 0])]);
    }
}
