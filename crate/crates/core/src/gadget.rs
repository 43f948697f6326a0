//! The 8-vertex clause gadget used by the `G_phi` construction, with an
//! exhaustive verifier for its behavioral contract.
//!
//! The gadget hangs off six boundary vertices: the literal vertices
//! `u_a1, u_a2, u_a3` of the clause and the triangle `w0, w1, w2`, colored
//! 0, 1, 2. Literal vertices only take colors 0 (false) and 1 (true).
//!
//! * EXTEND: any 0/1 input other than all-zero extends to the interior.
//! * FORCE: on all-zero input, and with the two `w` edges of the last
//!   interior vertex removed, every extension gives that vertex color 0.
//!   With those edges present the all-zero input therefore has no extension.
//! * UNIQUE: whenever `u_a2` has color 1 the interior coloring is unique,
//!   whatever `u_a1` and `u_a3` are.

use std::fmt;

use crate::graph::Color;

/// Number of interior vertices.
pub const GADGET_SIZE: usize = 8;

/// A boundary vertex of the gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    /// Literal vertex `u_a{i+1}` for `i` in `0..3`.
    Input(usize),
    /// Triangle vertex `w_i`, whose color is `i`.
    W(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseGadget {
    /// Edges between interior vertices, 0-based.
    pub internal_edges: Vec<(usize, usize)>,
    /// Edges from an interior vertex to a boundary vertex.
    pub boundary_edges: Vec<(usize, Terminal)>,
}

impl ClauseGadget {
    /// Interior vertex that sees both `w0` and `w2`.
    pub const LAST: usize = GADGET_SIZE - 1;

    fn neighbourhoods(&self, with_last_w_edges: bool) -> Vec<(Vec<usize>, Vec<Terminal>)> {
        let mut out = vec![(Vec::new(), Vec::new()); GADGET_SIZE];
        for &(a, b) in &self.internal_edges {
            out[a].0.push(b);
            out[b].0.push(a);
        }
        for &(v, t) in &self.boundary_edges {
            if !with_last_w_edges && v == Self::LAST && matches!(t, Terminal::W(_)) {
                continue;
            }
            out[v].1.push(t);
        }
        out
    }

    /// All interior colorings compatible with `inputs`, by brute force over
    /// the `3^8` candidates, in lexicographic order.
    pub fn interior_colorings(&self, inputs: [Color; 3], with_last_w_edges: bool) -> Vec<[Color; GADGET_SIZE]> {
        let nbhd = self.neighbourhoods(with_last_w_edges);
        let terminal_color = |t: Terminal| match t {
            Terminal::Input(i) => inputs[i],
            Terminal::W(i) => i,
        };
        let mut out = Vec::new();
        for code in 0..3usize.pow(GADGET_SIZE as u32) {
            let mut colors = [0; GADGET_SIZE];
            let mut rest = code;
            for slot in colors.iter_mut().rev() {
                *slot = rest % 3;
                rest /= 3;
            }
            let ok = nbhd.iter().enumerate().all(|(v, (inner, outer))| {
                inner.iter().all(|&u| colors[u] != colors[v]) && outer.iter().all(|&t| terminal_color(t) != colors[v])
            });
            if ok {
                out.push(colors);
            }
        }
        out
    }

    /// The interior coloring forced by `inputs`, if there is exactly one.
    pub fn unique_interior(&self, inputs: [Color; 3]) -> Option<[Color; GADGET_SIZE]> {
        match self.interior_colorings(inputs, true).as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    /// Checks the three contract properties over every 0/1 input.
    pub fn verify(&self) -> GadgetReport {
        let mut report = GadgetReport {
            extend: true,
            force: true,
            unique: true,
            cases: Vec::new(),
        };
        for bits in 0..8usize {
            let inputs = [bits >> 2 & 1, bits >> 1 & 1, bits & 1];
            let extensions = self.interior_colorings(inputs, true).len();
            if inputs == [0, 0, 0] {
                let relaxed = self.interior_colorings(inputs, false);
                report.force &= !relaxed.is_empty() && relaxed.iter().all(|c| c[Self::LAST] == 0);
            } else {
                report.extend &= extensions > 0;
            }
            if inputs[1] == 1 {
                report.unique &= extensions == 1;
            }
            report.cases.push((inputs, extensions));
        }
        report
    }
}

/// Outcome of [`ClauseGadget::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetReport {
    pub extend: bool,
    pub force: bool,
    pub unique: bool,
    /// Number of interior extensions for each 0/1 input.
    pub cases: Vec<([Color; 3], usize)>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.extend && self.force && self.unique
    }
}

impl fmt::Display for GadgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAILED" };
        writeln!(f, "EXTEND {}", verdict(self.extend))?;
        writeln!(f, "FORCE {}", verdict(self.force))?;
        writeln!(f, "UNIQUE {}", verdict(self.unique))?;
        for (inputs, n) in &self.cases {
            writeln!(f, "inputs {}{}{} extensions {n}", inputs[0], inputs[1], inputs[2])?;
        }
        Ok(())
    }
}

/// The shipped gadget.
///
/// Interior vertices, 0-based: `n` sees `u_a2` and `w2`, so it holds the
/// complement of `a2`. `p` sees `u_a1` and `q` sees `u_a3`, both also seeing
/// `w1` and `n`. The triangle `x, y, r` relays `p` and `q` to `g`, which sees
/// `u_a2`. The last vertex sees `g`, `p`, `w0` and `w2`.
pub fn synthesize_clause_gadget() -> ClauseGadget {
    use Terminal::{Input, W};
    const N: usize = 0;
    const P: usize = 1;
    const Q: usize = 2;
    const X: usize = 3;
    const Y: usize = 4;
    const R: usize = 5;
    const G: usize = 6;
    const L: usize = ClauseGadget::LAST;
    ClauseGadget {
        internal_edges: vec![
            (N, P),
            (N, Q),
            (N, X),
            (P, X),
            (Q, Y),
            (X, Y),
            (X, R),
            (Y, R),
            (R, G),
            (P, L),
            (G, L),
        ],
        boundary_edges: vec![
            (N, Input(1)),
            (N, W(2)),
            (P, Input(0)),
            (P, W(1)),
            (Q, Input(2)),
            (Q, W(1)),
            (G, Input(1)),
            (L, W(0)),
            (L, W(2)),
        ],
    }
}
