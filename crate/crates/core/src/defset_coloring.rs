//! Defining sets of optimal vertex colorings.
//!
//! The family is `C(G)`, the labeled proper colorings of `G` with exactly
//! `chi(G)` colors. Searches mirror the CNF side: sizes grow from the number
//! of provably necessary vertices, and within a size supports are tried in
//! lexicographic order so the reported witness is canonical.

use serde::{Deserialize, Serialize};

use crate::color_search::{check_partial, chromatic_number, ColorEngine};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, Graph, PartialColoring, Vertex};
use crate::subsets::{first_hit, for_each_digits, merge_sorted};

/// A graph, one of its optimal colorings, and an optional budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefsetColorInstance {
    graph: Graph,
    anchor: Coloring,
    chi: usize,
    budget: Option<usize>,
}

impl DefsetColorInstance {
    /// Fails unless `anchor` is a proper coloring using colors below
    /// `chi(graph)`.
    pub fn new(graph: Graph, anchor: Coloring, budget: Option<usize>, cfg: &SearchConfig) -> Result<Self> {
        let chi = chromatic_number(&graph, cfg)?;
        if !anchor.is_proper(&graph) {
            return Err(Error::contract("anchor is not a proper total coloring"));
        }
        if anchor.palette_size() > chi {
            return Err(Error::contract(format!(
                "anchor uses color {} but the chromatic number is {chi}",
                anchor.palette_size() - 1
            )));
        }
        Ok(DefsetColorInstance {
            graph,
            anchor,
            chi,
            budget,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn anchor(&self) -> &Coloring {
        &self.anchor
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn budget(&self) -> Option<usize> {
        self.budget
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDefiningColoringSet {
    pub size: usize,
    #[serde(with = "partial_serde")]
    pub witness: PartialColoring,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMinDefiningColoringSet {
    pub size: usize,
    pub anchor: Vec<Color>,
    #[serde(with = "partial_serde")]
    pub witness: PartialColoring,
}

/// Partial colorings serialize as `[[vertex, color], ...]` with 1-based
/// vertices, matching the coloring file format.
mod partial_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::PartialColoring;

    pub fn serialize<S: Serializer>(p: &PartialColoring, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = p.iter().map(|(v, c)| [v + 1, c]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PartialColoring, D::Error> {
        let pairs = Vec::<[usize; 2]>::deserialize(d)?;
        if pairs.iter().any(|p| p[0] == 0) {
            return Err(serde::de::Error::custom("vertices are numbered from 1"));
        }
        Ok(PartialColoring::from_pairs(pairs.into_iter().map(|[v, c]| (v - 1, c))))
    }
}

/// Q1: is `candidate` a defining set of the instance?
pub fn is_defining_coloring_set(instance: &DefsetColorInstance, candidate: &PartialColoring, cfg: &SearchConfig) -> Result<bool> {
    let g = instance.graph();
    cfg.check_vertices(g.num_vertices())?;
    check_partial(g, candidate, instance.chi(), "candidate")?;
    if !candidate.is_restriction_of(instance.anchor()) {
        return Err(Error::contract("candidate is not a restriction of the anchor"));
    }
    let engine = ColorEngine::new(g, instance.chi());
    Ok(engine.count(&candidate.to_dense(g.num_vertices()), 2) == 1)
}

/// Vertices that can be recolored on their own inside `C(G)`. Every defining
/// set must contain them.
fn recolorable_vertices(g: &Graph, anchor: &Coloring, chi: usize) -> Vec<Vertex> {
    (0..g.num_vertices())
        .filter(|&v| {
            (0..chi).any(|c| c != anchor.color(v) && g.neighbors(v).all(|u| anchor.color(u) != c))
        })
        .collect()
}

fn pair_search(instance: &DefsetColorInstance, max_size: usize, cfg: &SearchConfig) -> Result<Option<PartialColoring>> {
    let g = instance.graph();
    let n = g.num_vertices();
    cfg.check_vertices(n)?;
    let anchor = instance.anchor();
    let engine = ColorEngine::new(g, instance.chi());
    let forced = recolorable_vertices(g, anchor, instance.chi());
    let free: Vec<Vertex> = (0..n).filter(|v| !forced.contains(v)).collect();

    for size in forced.len()..=max_size.min(n) {
        let hit = first_hit(&free, size - forced.len(), cfg.jobs, |extra| {
            let mut fixed = vec![None; n];
            for &v in forced.iter().chain(extra) {
                fixed[v] = Some(anchor.color(v));
            }
            (engine.count(&fixed, 2) == 1).then_some(())
        });
        if let Some((extra, ())) = hit {
            return Ok(Some(anchor.restricted_to(merge_sorted(&forced, &extra))));
        }
    }
    Ok(None)
}

/// Q2 in optimization form: minimum size and the lexicographically first
/// support of that size.
pub fn min_defining_coloring_set(instance: &DefsetColorInstance, cfg: &SearchConfig) -> Result<MinDefiningColoringSet> {
    let n = instance.graph().num_vertices();
    let witness = pair_search(instance, n, cfg)?.expect("the anchor itself is always defining");
    Ok(MinDefiningColoringSet {
        size: witness.len(),
        witness,
    })
}

/// Q2 in decision form.
pub fn coloring_defining_set_within(
    instance: &DefsetColorInstance,
    k: usize,
    cfg: &SearchConfig,
) -> Result<Option<PartialColoring>> {
    pair_search(instance, k, cfg)
}

fn family_search(g: &Graph, max_size: usize, cfg: &SearchConfig) -> Result<Option<FamilyMinDefiningColoringSet>> {
    let n = g.num_vertices();
    let chi = chromatic_number(g, cfg)?;
    let engine = ColorEngine::new(g, chi);
    // With fewer than chi - 1 neighbours a vertex always has a spare color.
    let forced: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) + 2 <= chi).collect();
    let free: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) + 2 > chi).collect();

    for size in forced.len()..=max_size.min(n) {
        let hit = first_hit(&free, size - forced.len(), cfg.jobs, |extra| {
            let support = merge_sorted(&forced, extra);
            let mut fixed = vec![None; n];
            let mut found = None;
            for_each_digits(support.len(), chi, |digits| {
                for (&v, &c) in support.iter().zip(digits) {
                    fixed[v] = Some(c);
                }
                found = engine.unique(&fixed);
                found.is_none()
            });
            found
        });
        if let Some((extra, colors)) = hit {
            let anchor = Coloring::new(colors);
            let witness = anchor.restricted_to(merge_sorted(&forced, &extra));
            return Ok(Some(FamilyMinDefiningColoringSet {
                size,
                anchor: anchor.colors().to_vec(),
                witness,
            }));
        }
    }
    Ok(None)
}

/// Q3 in optimization form: the smallest defining set over all members of
/// `C(G)`. Ties break on the witness support, then on its colors.
pub fn min_defining_coloring_family(g: &Graph, cfg: &SearchConfig) -> Result<FamilyMinDefiningColoringSet> {
    Ok(family_search(g, g.num_vertices(), cfg)?.expect("every coloring is defined by itself"))
}

/// Q3 in decision form.
pub fn coloring_family_within(g: &Graph, k: usize, cfg: &SearchConfig) -> Result<Option<FamilyMinDefiningColoringSet>> {
    family_search(g, k, cfg)
}
