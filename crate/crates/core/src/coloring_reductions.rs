//! Graph constructions relating the CNF and coloring defining-set problems.
//!
//! [`build_g_phi`] turns a 3CNF with a proper assignment `t` into a
//! 3-colorable graph with a coloring `c_t`. The smallest defining set of
//! `(C(G_phi), c_t)` is four more than that of `(P(phi), t)`.
//!
//! [`build_h`] turns a 3-chromatic graph `G` with coloring `c` and a budget
//! `k` into a graph `H` whose family `C(H)` has a defining set of size at
//! most `k + 4` exactly when `(C(G), c)` has one of size at most `k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cnf::{distinct_literals, pad_clause, CnfFormula, Lit, PartialAssignment, Var};
use crate::color_search::chromatic_number;
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::gadget::{synthesize_clause_gadget, ClauseGadget, Terminal, GADGET_SIZE};
use crate::graph::{Color, Coloring, Graph, PartialColoring, Vertex};

/// Which input object an output vertex encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexRole {
    /// Triangle vertex `w_i`.
    W(usize),
    /// Degree-one vertex `w'_i`, `i` in `1..=4`.
    WPrime(usize),
    /// Literal vertex `u_x` or `u_~x`.
    Literal { var: Var, positive: bool },
    /// Interior vertex `index` (1-based) of the gadget of clause `clause`
    /// (1-based).
    Gadget { clause: usize, index: usize },
    /// A vertex of the input graph.
    Original { source: Vertex },
    /// Copy `copy` of the vertices joining `source` to `w_color`.
    Pendant { source: Vertex, color: Color, copy: usize },
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::W(i) => write!(f, "w{i}"),
            VertexRole::WPrime(i) => write!(f, "w'{i}"),
            VertexRole::Literal { var, positive: true } => write!(f, "u:x={var}"),
            VertexRole::Literal { var, positive: false } => write!(f, "u:~x={var}"),
            VertexRole::Gadget { clause, index } => write!(f, "gadget:clause={clause},v={index}"),
            VertexRole::Original { source } => write!(f, "original:{}", source + 1),
            VertexRole::Pendant { source, color, copy } => {
                write!(f, "pendant:u={},c={color},t={copy}", source + 1)
            }
        }
    }
}

/// A constructed graph, its designated coloring, and vertex provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphArtifact {
    pub graph: Graph,
    pub coloring: Coloring,
    pub provenance: Vec<VertexRole>,
}

impl GraphArtifact {
    fn new() -> Self {
        GraphArtifact {
            graph: Graph::new(0),
            coloring: Coloring::new(Vec::new()),
            provenance: Vec::new(),
        }
    }

    fn add(&mut self, role: VertexRole) -> Vertex {
        let v = self.graph.add_labeled_vertex(role.to_string());
        self.provenance.push(role);
        v
    }

    fn connect(&mut self, u: Vertex, v: Vertex) {
        self.graph.add_edge(u, v).expect("constructed edges are in range and loop-free");
    }

    pub fn vertex_with_role(&self, wanted: &VertexRole) -> Option<Vertex> {
        self.provenance.iter().position(|r| r == wanted)
    }

    /// Sidecar text: one `vertex <idx> role <tag>` line per vertex, 1-based.
    pub fn provenance_sidecar(&self) -> String {
        self.provenance
            .iter()
            .enumerate()
            .map(|(v, role)| format!("vertex {} role {role}\n", v + 1))
            .collect()
    }

    /// Vertices `w'_1..w'_4`.
    pub fn w_primes(&self) -> [Vertex; 4] {
        [1, 2, 3, 4].map(|i| self.vertex_with_role(&VertexRole::WPrime(i)).expect("w' vertices are always built"))
    }
}

/// Adds `w0 w1 w2` and the four `w'` vertices with their anchor colors.
/// `middle` adds the remaining vertices, before or after the `w'` block.
fn add_frame(art: &mut GraphArtifact, colors: &mut Vec<Color>, w_primes_last: bool, middle: impl FnOnce(&mut GraphArtifact, &mut Vec<Color>, [Vertex; 3])) {
    let w = [0, 1, 2].map(|i| art.add(VertexRole::W(i)));
    colors.extend([0, 1, 2]);
    art.connect(w[0], w[1]);
    art.connect(w[1], w[2]);
    art.connect(w[0], w[2]);
    let add_primes = |art: &mut GraphArtifact, colors: &mut Vec<Color>| {
        for (i, (hub, color)) in [(0, 1), (0, 2), (1, 0), (1, 2)].into_iter().enumerate() {
            let v = art.add(VertexRole::WPrime(i + 1));
            art.connect(v, w[hub]);
            colors.push(color);
        }
    };
    if w_primes_last {
        middle(art, colors, w);
        add_primes(art, colors);
    } else {
        add_primes(art, colors);
        middle(art, colors, w);
    }
}

/// Pads a clause to three slots and rotates it so the first literal made
/// true by `t` sits in the middle slot.
pub fn orient_clause(clause: &[Lit], t: &PartialAssignment) -> Option<[Lit; 3]> {
    let lits = pad_clause(&distinct_literals(clause), 3);
    let first_true = lits.iter().position(|l| t.get(l.var()).is_some_and(|b| l.eval(b)))?;
    Some([0, 1, 2].map(|i| lits[(first_true + i + 2) % 3]))
}

fn require_3cnf(phi: &CnfFormula) -> Result<()> {
    if phi.width() > 3 {
        return Err(Error::InvalidInput(format!(
            "expected a 3CNF, found a clause with {} distinct literals",
            phi.width()
        )));
    }
    Ok(())
}

/// Builds `G_phi` and the coloring `c_t`.
///
/// Layout: `w0, w1, w2`, then `w'_1..w'_4`, then `u_x, u_~x` for each
/// variable in order, then eight interior vertices per clause.
pub fn build_g_phi(phi: &CnfFormula, t: &PartialAssignment) -> Result<GraphArtifact> {
    require_3cnf(phi)?;
    if !t.is_total_for(phi.num_vars()) {
        return Err(Error::contract("t must bind every variable of the formula"));
    }
    let oriented = phi
        .clauses()
        .iter()
        .enumerate()
        .map(|(i, c)| orient_clause(c, t).ok_or_else(|| Error::contract(format!("clause {} is false under t", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let art = assemble_g_phi(phi, &oriented, Some(t));
    if !art.coloring.is_proper(&art.graph) {
        return Err(Error::contract("c_t is not a proper coloring of G_phi"));
    }
    Ok(art)
}

/// Builds the graph of `G_phi` without an anchor, keeping every clause in
/// its padded input order. The returned coloring is empty. The graph is
/// 3-colorable exactly when `phi` is satisfiable.
pub fn build_g_phi_graph(phi: &CnfFormula) -> Result<GraphArtifact> {
    require_3cnf(phi)?;
    let padded: Vec<[Lit; 3]> = phi
        .clauses()
        .iter()
        .map(|c| {
            let lits = pad_clause(&distinct_literals(c), 3);
            [lits[0], lits[1], lits[2]]
        })
        .collect();
    Ok(assemble_g_phi(phi, &padded, None))
}

fn assemble_g_phi(phi: &CnfFormula, clauses: &[[Lit; 3]], t: Option<&PartialAssignment>) -> GraphArtifact {
    let gadget = synthesize_clause_gadget();
    let mut art = GraphArtifact::new();
    let mut colors = Vec::new();
    add_frame(&mut art, &mut colors, false, |art, colors, w| {
        let mut literal_vertex = BTreeMap::new();
        for x in phi.vars() {
            let pos = art.add(VertexRole::Literal { var: x, positive: true });
            let neg = art.add(VertexRole::Literal { var: x, positive: false });
            art.connect(pos, neg);
            art.connect(pos, w[2]);
            art.connect(neg, w[2]);
            if let Some(t) = t {
                let value = t.get(x).expect("t is total") as Color;
                colors.extend([value, 1 - value]);
            }
            literal_vertex.insert(Lit::pos(x), pos);
            literal_vertex.insert(Lit::neg(x), neg);
        }
        for (ci, lits) in clauses.iter().enumerate() {
            let inputs = lits.map(|l| literal_vertex[&l]);
            attach_gadget(art, &gadget, ci + 1, inputs, w);
            if t.is_some() {
                let fill = gadget
                    .unique_interior(inputs.map(|u| colors[u]))
                    .expect("gadget interior is unique when its middle input is true");
                colors.extend(fill);
            }
        }
    });
    if t.is_some() {
        art.coloring = Coloring::new(colors);
    }
    art
}

fn attach_gadget(art: &mut GraphArtifact, gadget: &ClauseGadget, clause: usize, inputs: [Vertex; 3], w: [Vertex; 3]) {
    let interior: Vec<Vertex> = (1..=GADGET_SIZE)
        .map(|index| art.add(VertexRole::Gadget { clause, index }))
        .collect();
    for &(a, b) in &gadget.internal_edges {
        art.connect(interior[a], interior[b]);
    }
    for &(v, terminal) in &gadget.boundary_edges {
        let other = match terminal {
            Terminal::Input(i) => inputs[i],
            Terminal::W(i) => w[i],
        };
        art.connect(interior[v], other);
    }
}

/// Carries a defining set of `(P(phi), t)` over to `(C(G_phi), c_t)`: the
/// four `w'` vertices plus `u_x` for every variable in the set.
pub fn lift_sat_witness(g_phi: &GraphArtifact, witness: &PartialAssignment) -> Result<PartialColoring> {
    let mut vertices: Vec<Vertex> = g_phi.w_primes().to_vec();
    for x in witness.support() {
        let u = g_phi
            .vertex_with_role(&VertexRole::Literal { var: x, positive: true })
            .ok_or_else(|| Error::contract(format!("variable {x} has no literal vertex")))?;
        vertices.push(u);
    }
    Ok(g_phi.coloring.restricted_to(vertices))
}

/// Builds `H` from a 3-chromatic graph `g`, a coloring `c` of it, and a
/// budget `k`.
///
/// Layout: the vertices of `g`, then `w0, w1, w2`, then for each vertex `u`
/// and each color `j != c(u)` the `k + 1` vertices joined to `u` and `w_j`,
/// then `w'_1..w'_4`. The returned coloring extends `c`.
pub fn build_h(g: &Graph, c: &Coloring, k: usize, cfg: &SearchConfig) -> Result<GraphArtifact> {
    let chi = chromatic_number(g, cfg)?;
    if chi != 3 {
        return Err(Error::contract(format!("H needs a 3-chromatic graph, got chromatic number {chi}")));
    }
    if !c.is_proper(g) || c.palette_size() > 3 {
        return Err(Error::contract("c must be a proper coloring with colors 0, 1, 2"));
    }
    let n = g.num_vertices();
    let mut art = GraphArtifact::new();
    let mut colors = Vec::new();
    for source in 0..n {
        art.add(VertexRole::Original { source });
        colors.push(c.color(source));
    }
    for (u, v) in g.edges() {
        art.connect(u, v);
    }
    add_frame(&mut art, &mut colors, true, |art, colors, w| {
        for source in 0..n {
            let own = c.color(source);
            for color in (0..3).filter(|&j| j != own) {
                for copy in 1..=k + 1 {
                    let p = art.add(VertexRole::Pendant { source, color, copy });
                    art.connect(p, source);
                    art.connect(p, w[color]);
                    colors.push(3 - own - color);
                }
            }
        }
    });
    art.coloring = Coloring::new(colors);
    debug_assert_eq!(art.graph.num_vertices(), n + 3 + 2 * (k + 1) * n + 4);
    if !art.coloring.is_proper(&art.graph) {
        return Err(Error::contract("extended coloring of H is not proper"));
    }
    Ok(art)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color_search::enumerate_colorings;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn orientation_moves_first_true_literal_to_the_middle() {
        let clause = [Lit::pos(1), Lit::pos(2), Lit::pos(3)];
        let t = PartialAssignment::from_pairs([(1, false), (2, false), (3, true)]);
        assert_eq!(orient_clause(&clause, &t), Some([Lit::pos(2), Lit::pos(3), Lit::pos(1)]));
        let t = PartialAssignment::from_pairs([(1, true), (2, false), (3, true)]);
        assert_eq!(orient_clause(&clause, &t), Some([Lit::pos(3), Lit::pos(1), Lit::pos(2)]));
        let t = PartialAssignment::from_pairs([(1, false), (2, false), (3, false)]);
        assert_eq!(orient_clause(&clause, &t), None);
        let short = [Lit::neg(4)];
        let t = PartialAssignment::from_pairs([(4, false)]);
        assert_eq!(orient_clause(&short, &t), Some([Lit::neg(4); 3]));
    }

    #[test]
    fn g_phi_layout_and_anchor() {
        let phi = CnfFormula::from_ints(2, &[&[1, -2]]).unwrap();
        let t = PartialAssignment::from_pairs([(1, false), (2, false)]);
        let art = build_g_phi(&phi, &t).unwrap();
        assert_eq!(art.graph.num_vertices(), 3 + 4 + 4 + 8);
        assert_eq!(&art.coloring.colors()[..11], &[0, 1, 2, 1, 2, 0, 2, 0, 1, 0, 1]);
        assert_eq!(art.provenance[9], VertexRole::Literal { var: 2, positive: true });
        assert!(art.graph.has_edge(9, 10) && art.graph.has_edge(9, 2));
        for v in art.w_primes() {
            assert_eq!(art.graph.degree(v), 1);
        }
        assert_eq!(chromatic_number(&art.graph, &cfg()).unwrap(), 3);
        let side = art.provenance_sidecar();
        assert!(side.starts_with("vertex 1 role w0\n"));
        assert!(side.ends_with("vertex 19 role gadget:clause=1,v=8\n"));
    }

    #[test]
    fn g_phi_of_unsatisfiable_formula_needs_four_colors() {
        let phi = CnfFormula::from_ints(1, &[&[1], &[-1]]).unwrap();
        let t = PartialAssignment::from_pairs([(1, true)]);
        assert!(matches!(build_g_phi(&phi, &t), Err(Error::ContractViolation(_))));
        let art = build_g_phi_graph(&phi).unwrap();
        assert_eq!(art.graph.num_vertices(), 3 + 4 + 2 + 16);
        assert_eq!(chromatic_number(&art.graph, &cfg()).unwrap(), 4);
    }

    #[test]
    fn skeleton_has_the_anchored_graph_size() {
        let phi = CnfFormula::from_ints(3, &[&[1, 2, 3], &[-1, 2]]).unwrap();
        let t = PartialAssignment::from_pairs([(1, true), (2, true), (3, false)]);
        let anchored = build_g_phi(&phi, &t).unwrap();
        let bare = build_g_phi_graph(&phi).unwrap();
        assert_eq!(anchored.graph.num_vertices(), bare.graph.num_vertices());
        assert_eq!(anchored.graph.num_edges(), bare.graph.num_edges());
        assert_eq!(chromatic_number(&bare.graph, &cfg()).unwrap(), 3);
    }

    #[test]
    fn g_phi_rejects_partial_anchor() {
        let phi = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        let t = PartialAssignment::from_pairs([(1, true)]);
        assert!(build_g_phi(&phi, &t).is_err());
    }

    #[test]
    fn w_primes_force_the_triangle() {
        let phi = CnfFormula::from_ints(1, &[&[1]]).unwrap();
        let t = PartialAssignment::from_pairs([(1, true)]);
        let art = build_g_phi(&phi, &t).unwrap();
        let fixed = art.coloring.restricted_to(art.w_primes());
        for col in enumerate_colorings(&art.graph, &fixed, 1000, &cfg()).unwrap() {
            assert_eq!(&col.colors()[..3], &[0, 1, 2]);
        }
    }

    #[test]
    fn h_counts_and_coloring() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = Coloring::new(vec![0, 1, 2]);
        for k in 0..3 {
            let art = build_h(&tri, &c, k, &cfg()).unwrap();
            assert_eq!(art.graph.num_vertices(), 3 + 3 + 2 * (k + 1) * 3 + 4);
            assert_eq!(art.graph.num_edges(), 3 + 3 + 2 * 2 * (k + 1) * 3 + 4);
            assert_eq!(&art.coloring.colors()[..3], &[0, 1, 2]);
            for v in art.w_primes() {
                assert_eq!(art.graph.degree(v), 1);
            }
        }
    }

    #[test]
    fn h_rejects_wrong_chromatic_number() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            build_h(&edge, &Coloring::new(vec![0, 1]), 0, &cfg()),
            Err(Error::ContractViolation(_))
        ));
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(build_h(&tri, &Coloring::new(vec![0, 0, 1]), 0, &cfg()).is_err());
    }
}
