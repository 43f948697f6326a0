//! Defining sets of CNF models and of optimal graph colorings.
//!
//! A *defining set* of a member `S` of a family `F` is a subset `D` of `S`
//! such that `S` is the only member of `F` containing `D`. This crate
//! answers the standard questions about them for two families: the proper
//! assignments of a CNF and the proper `chi(G)`-colorings of a graph. The
//! questions are whether `D` is defining, whether `S` has a defining set of
//! size at most `k`, and whether some member of `F` has one. It also builds
//! the reductions that relate those questions to each other and to
//! quantified SAT, and ships independent brute-force oracles that
//! cross-check all of it on small instances.

pub mod cnf;
mod color_search;
pub mod coloring_reductions;
pub mod config;
pub mod defset_coloring;
pub mod defset_sat;
pub mod error;
pub mod gadget;
pub mod graph;
pub mod oracle;
pub mod report;
pub mod sat_reductions;
mod sat_search;
mod subsets;

pub use cnf::{evaluate, is_proper_partial, parse_assignment, parse_cnf, CnfFormula, Evaluation, Lit, PartialAssignment, Var};
pub use color_search::{chromatic_number, enumerate_colorings};
pub use coloring_reductions::{build_g_phi, build_g_phi_graph, build_h, lift_sat_witness, GraphArtifact, VertexRole};
pub use config::{with_pool, SearchConfig};
pub use defset_coloring::{
    coloring_defining_set_within, coloring_family_within, is_defining_coloring_set, min_defining_coloring_family,
    min_defining_coloring_set, DefsetColorInstance, FamilyMinDefiningColoringSet, MinDefiningColoringSet,
};
pub use defset_sat::{
    defining_set_within, exists_forall_check, exists_uniqueexists_check, family_defining_set_within, is_defining_set,
    min_defining_set, min_defining_set_family, DefsetSatInstance, FamilyMinDefiningSet, MinDefiningSet, QuantifiedSplit,
};
pub use error::{Error, Result};
pub use gadget::{synthesize_clause_gadget, ClauseGadget};
pub use graph::{parse_coloring, parse_graph, Color, Coloring, Graph, PartialColoring, Vertex};
pub use oracle::verify::{verify_reduction, SweepSpec, VerifyReport, VerifyTarget};
pub use report::ResultRecord;
pub use sat_reductions::{
    construct_mu, reduce_q2_to_q3, reduce_unique_to_q2, split_to_3cnf, Q2Reduction, ReductionArtifact, VarRole,
};
pub use sat_search::enumerate_proper;
