//! Sweeps that run both sides of each reduction law and compare.
//!
//! Instances are generated sequentially from the seed, checked in parallel,
//! and reported in generation order, so a report depends only on the target,
//! the seed and the instance count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::generate::{all_formulas, proper_partials, random_formula, random_graph, random_split, rng};
use super::*;
use crate::cnf::{Lit, PartialAssignment, Var};
use crate::coloring_reductions::{build_g_phi, build_g_phi_graph, build_h, lift_sat_witness};
use crate::color_search::{chromatic_number, enumerate_colorings};
use crate::config::{with_pool, SearchConfig};
use crate::defset_coloring::{
    coloring_defining_set_within, coloring_family_within, is_defining_coloring_set, min_defining_coloring_family,
    min_defining_coloring_set,
};
use crate::defset_sat::{
    defining_set_within, exists_forall_check, exists_uniqueexists_check, family_defining_set_within, is_defining_set,
    min_defining_set, min_defining_set_family,
};
use crate::sat_reductions::{construct_mu, cprime_block, reduce_q2_to_q3, reduce_unique_to_q2, split_to_3cnf};
use crate::sat_search::enumerate_proper;

/// What a sweep exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyTarget {
    /// exists-forall versus exists-unique through the `z` switch, also
    /// through the 3CNF split.
    Mu,
    /// The six-clause block, over all 16 boundary assignments.
    Cprime,
    /// The Q2 reduction from exists-unique-exists.
    Q2,
    /// The Q3 padding reduction.
    Q3,
    /// The `+4` law for `G_phi`.
    Gphi,
    /// The `k + 4` law for `H`.
    H,
    /// CNF solvers against the oracles.
    SatOracle,
    /// Coloring solvers against the oracles.
    ColorOracle,
}

impl VerifyTarget {
    pub const ALL: [VerifyTarget; 8] = [
        VerifyTarget::Mu,
        VerifyTarget::Cprime,
        VerifyTarget::Q2,
        VerifyTarget::Q3,
        VerifyTarget::Gphi,
        VerifyTarget::H,
        VerifyTarget::SatOracle,
        VerifyTarget::ColorOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifyTarget::Mu => "mu",
            VerifyTarget::Cprime => "cprime",
            VerifyTarget::Q2 => "q2",
            VerifyTarget::Q3 => "q3",
            VerifyTarget::Gphi => "gphi",
            VerifyTarget::H => "h",
            VerifyTarget::SatOracle => "sat-oracle",
            VerifyTarget::ColorOracle => "color-oracle",
        }
    }

    /// Random instance count used when the sweep spec leaves it open.
    /// Exhaustive sweeps ignore it.
    pub fn default_count(self) -> usize {
        match self {
            VerifyTarget::Q2 | VerifyTarget::Q3 => 200,
            VerifyTarget::H => 24,
            VerifyTarget::SatOracle => 500,
            VerifyTarget::ColorOracle => 200,
            VerifyTarget::Mu | VerifyTarget::Cprime | VerifyTarget::Gphi => 0,
        }
    }
}

impl fmt::Display for VerifyTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VerifyTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VerifyTarget::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown verify target `{s}`")))
    }
}

/// Sweep parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub seed: u64,
    /// Number of random instances; `None` uses the target default.
    pub count: Option<usize>,
    /// Worker threads for checking instances.
    pub jobs: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            seed: 1,
            count: None,
            jobs: 1,
        }
    }
}

/// Result of a sweep. The serialized form leaves out the wall time so it is
/// reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub target: VerifyTarget,
    pub seed: u64,
    pub parameters: String,
    pub instances: usize,
    pub mismatches: usize,
    /// Outcome counts, e.g. how many instances answered yes and no.
    pub tally: BTreeMap<String, usize>,
    /// FNV-1a hash of every per-instance outcome line, in order.
    pub digest: String,
    /// One entry per mismatching instance, with the full instance dump.
    pub counterexamples: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    /// `VERIFY <name> instances=<n> mismatches=<m>`
    pub fn summary_line(&self) -> String {
        format!(
            "VERIFY {} instances={} mismatches={}",
            self.target, self.instances, self.mismatches
        )
    }

    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("target: {}\nseed: {}\nparameters: {}\n", self.target, self.seed, self.parameters);
        out += &format!("instances: {}\nmismatches: {}\n", self.instances, self.mismatches);
        for (k, v) in &self.tally {
            out += &format!("tally {k}: {v}\n");
        }
        out += &format!("digest: {}\nwall time: {:.3}s\n", self.digest, self.elapsed.as_secs_f64());
        for c in &self.counterexamples {
            out += &format!("COUNTEREXAMPLE {c}\n");
        }
        out += &self.summary_line();
        out.push('\n');
        out
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Outcome of one instance check.
struct Outcome {
    /// Short description of what was observed, always recorded.
    line: String,
    tags: Vec<String>,
    failure: Option<String>,
}

impl Outcome {
    fn new(line: String) -> Self {
        Outcome {
            line,
            tags: Vec::new(),
            failure: None,
        }
    }

    fn tag(mut self, tag: impl Into<String>) -> Self {
        self.tags.push(tag.into());
        self
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }
}

fn fnv1a(lines: impl Iterator<Item = String>) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for line in lines {
        for byte in line.bytes().chain(*b"\n") {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{hash:016x}")
}

fn run_checks<I: Sync>(items: &[I], jobs: usize, check: impl Fn(&I) -> Result<Outcome> + Sync) -> Vec<Outcome> {
    let eval = |item: &I| match check(item) {
        Ok(o) => o,
        Err(e) => {
            let mut o = Outcome::new(format!("error {e}"));
            o.failure = Some(format!("solver error: {e}"));
            o
        }
    };
    with_pool(jobs, || items.par_iter().map(eval).collect())
}

/// Runs the sweep for `target`.
pub fn verify_reduction(target: VerifyTarget, spec: &SweepSpec) -> Result<VerifyReport> {
    let start = Instant::now();
    let count = spec.count.unwrap_or(target.default_count());
    let (parameters, dumps, outcomes) = match target {
        VerifyTarget::Mu => sweep_mu(spec),
        VerifyTarget::Cprime => sweep_cprime(),
        VerifyTarget::Q2 => sweep_q2(spec, count),
        VerifyTarget::Q3 => sweep_q3(spec, count),
        VerifyTarget::Gphi => sweep_gphi(spec),
        VerifyTarget::H => sweep_h(spec, count),
        VerifyTarget::SatOracle => sweep_sat_oracle(spec, count),
        VerifyTarget::ColorOracle => sweep_color_oracle(spec, count),
    }?;
    let mut tally = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (dump, o) in dumps.iter().zip(&outcomes) {
        for t in &o.tags {
            *tally.entry(t.clone()).or_insert(0) += 1;
        }
        if let Some(why) = &o.failure {
            counterexamples.push(format!("{why} | {dump} | {}", o.line));
        }
    }
    let digest = fnv1a(dumps.iter().zip(&outcomes).map(|(d, o)| format!("{d} => {}", o.line)));
    Ok(VerifyReport {
        target,
        seed: spec.seed,
        parameters,
        instances: outcomes.len(),
        mismatches: counterexamples.len(),
        tally,
        digest,
        counterexamples,
        elapsed: start.elapsed(),
    })
}

type Sweep = Result<(String, Vec<String>, Vec<Outcome>)>;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn dump_formula(phi: &CnfFormula) -> String {
    let clauses: Vec<String> = phi
        .clauses()
        .iter()
        .map(|c| c.iter().map(|l| l.to_dimacs().to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("n={} [{}]", phi.num_vars(), clauses.join(" | "))
}

fn dump_graph(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    format!("n={} [{}]", g.num_vertices(), edges.join(" "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn sweep_mu(spec: &SweepSpec) -> Sweep {
    let mut items = Vec::new();
    for n in 1..=3u32 {
        for phi in all_formulas(n, 2) {
            for bits in 0..1u32 << n {
                let x: Vec<Var> = (1..=n).filter(|v| bits >> (v - 1) & 1 == 1).collect();
                items.push(QuantifiedSplit::from_x_block(phi.clone(), x, None)?);
            }
        }
    }
    let dumps = items
        .iter()
        .map(|s| format!("{} x={:?}", dump_formula(s.formula()), s.x_vars()))
        .collect();
    let outcomes = run_checks(&items, spec.jobs, |split| {
        let lhs = exists_forall_check(split, &cfg())?;
        let mu = construct_mu(split)?;
        let mu_split = mu.split_out.as_ref().expect("mu carries its split");
        let rhs = exists_uniqueexists_check(mu_split, &cfg())?;
        let mu3 = split_to_3cnf(&mu)?;
        let rhs3 = exists_uniqueexists_check(mu3.split_out.as_ref().expect("split carries its blocks"), &cfg())?;
        let oracle_lhs = oracle_exists_forall(split)?;
        let oracle_rhs = oracle_exists_unique(mu_split)?;
        let mut o = Outcome::new(format!(
            "forall={} unique={} unique3={}",
            yes_no(lhs),
            yes_no(rhs),
            yes_no(rhs3)
        ))
        .tag(yes_no(lhs));
        o.expect(lhs == rhs, || "exists-forall differs from exists-unique on mu".into());
        o.expect(rhs == rhs3, || "3CNF split changes the exists-unique answer".into());
        o.expect(lhs == oracle_lhs && rhs == oracle_rhs, || "solver disagrees with oracle".into());
        Ok(o)
    });
    Ok((
        "exhaustive: vars 1..=3, clauses 0..=2 of width 1..=3 distinct literals, every x/y split".into(),
        dumps,
        outcomes,
    ))
}

/// Number of `v` values that complete each `(a1, a2, a3, z)` assignment,
/// with the full block or with its first five clauses.
pub fn cprime_tally(full: bool) -> Vec<([bool; 4], usize)> {
    let block = cprime_block([Lit::pos(1), Lit::pos(2), Lit::pos(3)], Lit::pos(4), Lit::pos(5));
    let clauses = if full { block.to_vec() } else { block[..5].to_vec() };
    let phi = CnfFormula::new(5, clauses).expect("block is well formed");
    (0..16u32)
        .map(|bits| {
            let values = [bits >> 3 & 1 == 1, bits >> 2 & 1 == 1, bits >> 1 & 1 == 1, bits & 1 == 1];
            let fixed = PartialAssignment::from_pairs((1..=4).map(|v| (v, values[v as usize - 1])));
            let n = enumerate_proper(&phi, &fixed, 4).expect("fixed part is in range").len();
            (values, n)
        })
        .collect()
}

fn sweep_cprime() -> Sweep {
    let full = cprime_tally(true);
    let five = cprime_tally(false);
    let mut dumps = Vec::new();
    let mut outcomes = Vec::new();
    for ((values, n), (_, n5)) in full.iter().zip(&five) {
        let tf: String = values.iter().map(|&b| if b { 'T' } else { 'F' }).collect();
        dumps.push(format!("a1a2a3z={tf}"));
        let expected = usize::from(values.iter().any(|&b| b));
        let tag = match n {
            0 => "none",
            1 => "unique",
            _ => "several",
        };
        let mut o = Outcome::new(format!("extensions={n} without-sixth={n5}")).tag(tag);
        o.expect(*n == expected, || format!("expected {expected} extensions"));
        if tf == "FTTF" {
            o.expect(*n5 == 2, || "dropping the sixth clause should leave v free".into());
            o = o.tag("sixth-clause-needed");
        }
        outcomes.push(o);
    }
    Ok((
        "exhaustive: all 16 assignments to (a1, a2, a3, z)".into(),
        dumps,
        outcomes,
    ))
}

struct Q2Item {
    split: QuantifiedSplit,
}

fn sweep_q2(spec: &SweepSpec, count: usize) -> Sweep {
    let mut r = rng(spec.seed);
    let mut items = Vec::new();
    while items.len() < count {
        let n = r.gen_range(1..=4u32);
        let m = r.gen_range(1..=4usize);
        let phi = random_formula(&mut r, n, m);
        let (x, y) = random_split(&mut r, n);
        let ts = proper_partials(&phi, &y);
        let Some(t) = ts.choose(&mut r).cloned() else {
            continue;
        };
        items.push(Q2Item {
            split: QuantifiedSplit::new(phi, x, y, Some(t))?,
        });
    }
    let dumps = items
        .iter()
        .map(|i| {
            format!(
                "{} x={:?} t={}",
                dump_formula(i.split.formula()),
                i.split.x_vars(),
                i.split.anchor_t().expect("anchored").to_line()
            )
        })
        .collect();
    let outcomes = run_checks(&items, spec.jobs, |item| {
        let source = exists_uniqueexists_check(&item.split, &cfg())?;
        let reduction = reduce_unique_to_q2(&item.split)?;
        let k = item.split.x_vars().len();
        let min = min_defining_set(&reduction.instance, &cfg())?;
        let target = min.size <= k;
        let oracle_source = oracle_exists_unique(&item.split)?;
        let oracle_min = oracle_min_defset_sat(&reduction.instance)?;
        let mut o = Outcome::new(format!("unique={} min={} k={k}", yes_no(source), min.size)).tag(yes_no(source));
        o.expect(source == target, || "Q2 law fails".into());
        o.expect(source == oracle_source && min.size == oracle_min, || "solver disagrees with oracle".into());
        Ok(o)
    });
    Ok((
        format!("random: seed {}, vars 1..=4, clauses 1..=4, width 1..=3, non-empty y block, proper partial t", spec.seed),
        dumps,
        outcomes,
    ))
}

struct Q3Item {
    instance: DefsetSatInstance,
    k: usize,
}

fn sweep_q3(spec: &SweepSpec, count: usize) -> Sweep {
    let mut r = rng(spec.seed);
    let mut items = Vec::new();
    while items.len() < 3 * count {
        let n = r.gen_range(1..=4u32);
        let m = r.gen_range(1..=4usize);
        let phi = random_formula(&mut r, n, m);
        let models = oracle_models(&phi)?;
        let Some(&t) = models.choose(&mut r) else {
            continue;
        };
        let instance = DefsetSatInstance::new(phi, bits_to_assignment(t, n), None)?;
        for k in 0..=2 {
            items.push(Q3Item {
                instance: instance.clone(),
                k,
            });
        }
    }
    let dumps = items
        .iter()
        .map(|i| format!("{} t={} k={}", dump_formula(i.instance.formula()), i.instance.anchor().to_line(), i.k))
        .collect();
    let outcomes = run_checks(&items, spec.jobs, |item| {
        let min = min_defining_set(&item.instance, &cfg())?;
        let source = min.size <= item.k;
        let padded = reduce_q2_to_q3(&item.instance, item.k)?;
        let target = family_defining_set_within(&padded.output, item.k, &cfg())?.is_some();
        let mut o = Outcome::new(format!("pair-min={} family-within={}", min.size, yes_no(target))).tag(yes_no(source));
        o.expect(source == target, || "Q3 law fails".into());
        o.expect(min.size == oracle_min_defset_sat(&item.instance)?, || "solver disagrees with oracle".into());
        if padded.output.num_vars() <= 12 {
            let oracle_family = oracle_min_defset_sat_family(&padded.output)?.expect("padded formula is satisfiable");
            o.expect((oracle_family <= item.k) == target, || "family decision disagrees with oracle".into());
        }
        Ok(o)
    });
    Ok((
        format!(
            "random: seed {}, vars 1..=4, clauses 1..=4, width 1..=3, random model t, each instance at k = 0, 1, 2",
            spec.seed
        ),
        dumps,
        outcomes,
    ))
}

struct GphiItem {
    phi: CnfFormula,
    t: Option<PartialAssignment>,
}

fn sweep_gphi(spec: &SweepSpec) -> Sweep {
    let mut items = Vec::new();
    for n in 1..=2u32 {
        for phi in all_formulas(n, 2) {
            let models = oracle_models(&phi)?;
            if models.is_empty() {
                items.push(GphiItem { phi, t: None });
            } else {
                for m in models {
                    items.push(GphiItem {
                        phi: phi.clone(),
                        t: Some(bits_to_assignment(m, n)),
                    });
                }
            }
        }
    }
    let dumps = items
        .iter()
        .map(|i| match &i.t {
            Some(t) => format!("{} t={}", dump_formula(&i.phi), t.to_line()),
            None => format!("{} unsatisfiable", dump_formula(&i.phi)),
        })
        .collect();
    let outcomes = run_checks(&items, spec.jobs, |item| {
        let Some(t) = &item.t else {
            let g = build_g_phi_graph(&item.phi)?;
            let chi = chromatic_number(&g.graph, &cfg())?;
            let mut o = Outcome::new(format!("chi={chi}")).tag("unsatisfiable");
            o.expect(chi >= 4, || "G_phi of an unsatisfiable formula is 3-colorable".into());
            return Ok(o);
        };
        let sat = DefsetSatInstance::new(item.phi.clone(), t.clone(), None)?;
        let sat_min = min_defining_set(&sat, &cfg())?;
        let art = build_g_phi(&item.phi, t)?;
        let chi = chromatic_number(&art.graph, &cfg())?;
        let color = DefsetColorInstance::new(art.graph.clone(), art.coloring.clone(), None, &cfg())?;
        let color_min = min_defining_coloring_set(&color, &cfg())?;
        let lifted = lift_sat_witness(&art, &sat_min.witness)?;
        let lifted_ok = is_defining_coloring_set(&color, &lifted, &cfg())?;
        let mut o = Outcome::new(format!("chi={chi} sat-min={} color-min={}", sat_min.size, color_min.size))
            .tag(format!("sat-min={}", sat_min.size));
        o.expect(chi == 3, || "G_phi is not 3-chromatic".into());
        o.expect(color_min.size == sat_min.size + 4, || "+4 law fails".into());
        o.expect(lifted_ok, || "lifted witness is not defining".into());
        o.expect(sat_min.size == oracle_min_defset_sat(&sat)?, || "solver disagrees with oracle".into());
        Ok(o)
    });
    Ok((
        "exhaustive: vars 1..=2, clauses 0..=2 of width 1..=3 distinct literals, every model t".into(),
        dumps,
        outcomes,
    ))
}

struct HItem {
    g: Graph,
    c: Coloring,
    k: usize,
}

fn sweep_h(spec: &SweepSpec, count: usize) -> Sweep {
    let mut r = rng(spec.seed);
    let mut items = Vec::new();
    // The main batch has k in {0, 1}. A 3-chromatic graph always needs two
    // fixed vertices, so a smaller batch with k = 2 covers the yes side.
    let extra = count.div_ceil(4);
    while items.len() < count + extra {
        let main = items.len() < count;
        let n = if main { r.gen_range(3..=6usize) } else { r.gen_range(3..=4usize) };
        let g = random_graph(&mut r, n, 0.5);
        let (chi, colorings) = oracle_colorings(&g)?;
        if chi != 3 {
            continue;
        }
        let c = Coloring::new(colorings.choose(&mut r).expect("3-colorable").clone());
        let k = if main { items.len() % 2 } else { 2 };
        items.push(HItem { g, c, k });
    }
    let dumps = items
        .iter()
        .map(|i| format!("{} c={:?} k={}", dump_graph(&i.g), i.c.colors(), i.k))
        .collect();
    let outcomes = run_checks(&items, spec.jobs, |item| {
        let inst = DefsetColorInstance::new(item.g.clone(), item.c.clone(), None, &cfg())?;
        let pair_min = min_defining_coloring_set(&inst, &cfg())?.size;
        let source = pair_min <= item.k;
        let h = build_h(&item.g, &item.c, item.k, &cfg())?;
        let target = coloring_family_within(&h.graph, item.k + 4, &cfg())?.is_some();
        let n = item.g.num_vertices();
        let mut o = Outcome::new(format!("pair-min={pair_min} family-within={}", yes_no(target)))
            .tag(yes_no(source))
            .tag(format!("k={}", item.k));
        o.expect(source == target, || "H law fails".into());
        o.expect(h.graph.num_vertices() == n + 3 + 2 * (item.k + 1) * n + 4, || "vertex count".into());
        o.expect(pair_min == oracle_min_defset_coloring(&inst)?, || "solver disagrees with oracle".into());
        Ok(o)
    });
    Ok((
        format!(
            "random: seed {}, chromatic number 3, edge probability 0.5; main batch vertices 3..=6 with k alternating 0 and 1; extra batch of a quarter the size with vertices 3..=4 and k = 2",
            spec.seed
        ),
        dumps,
        outcomes,
    ))
}

struct SatOracleItem {
    phi: CnfFormula,
    anchor: Option<PartialAssignment>,
    candidate: Option<PartialAssignment>,
    x: Vec<Var>,
}

fn sweep_sat_oracle(spec: &SweepSpec, count: usize) -> Sweep {
    let mut r = rng(spec.seed);
    let mut items = Vec::with_capacity(count);
    while items.len() < count {
        let n = r.gen_range(1..=8u32);
        let m = r.gen_range(1..=2 * n as usize + 2);
        let phi = random_formula(&mut r, n, m);
        let models = oracle_models(&phi)?;
        let anchor = models.choose(&mut r).map(|&b| bits_to_assignment(b, n));
        let candidate = anchor
            .as_ref()
            .map(|a| a.restricted_to((1..=n).filter(|_| r.gen_bool(0.5))));
        let x = (1..=n).filter(|_| r.gen_bool(0.5)).collect();
        items.push(SatOracleItem { phi, anchor, candidate, x });
    }
    let dumps = items
        .iter()
        .map(|i| {
            let anchor = i.anchor.as_ref().map_or("none".into(), |a| a.to_line());
            format!("{} anchor={anchor} x={:?}", dump_formula(&i.phi), i.x)
        })
        .collect();
    let outcomes = run_checks(&items, spec.jobs, |item| {
        let split = QuantifiedSplit::from_x_block(item.phi.clone(), item.x.clone(), None)?;
        let forall = exists_forall_check(&split, &cfg())?;
        let oracle_family = oracle_min_defset_sat_family(&item.phi)?;
        let mut o;
        match (&item.anchor, &item.candidate) {
            (Some(anchor), Some(candidate)) => {
                let inst = DefsetSatInstance::new(item.phi.clone(), anchor.clone(), None)?;
                let min = min_defining_set(&inst, &cfg())?;
                let fam = min_defining_set_family(&item.phi, &cfg())?;
                let q1 = is_defining_set(&inst, candidate, &cfg())?;
                o = Outcome::new(format!("min={} family={} q1={}", min.size, fam.size, yes_no(q1))).tag("satisfiable");
                o.expect(min.size == oracle_min_defset_sat(&inst)?, || "pair minimum".into());
                o.expect(Some(fam.size) == oracle_family, || "family minimum".into());
                o.expect(q1 == oracle_is_defining_sat(&item.phi, candidate)?, || "Q1 answer".into());
                o.expect(is_defining_set(&inst, &min.witness, &cfg())?, || "witness is not defining".into());
                o.expect(
                    defining_set_within(&inst, min.size.saturating_sub(1), &cfg())?.is_none() || min.size == 0,
                    || "a smaller defining set exists".into(),
                );
            }
            _ => {
                let unsat = matches!(min_defining_set_family(&item.phi, &cfg()), Err(Error::Unsatisfiable));
                o = Outcome::new("unsatisfiable".into()).tag("unsatisfiable");
                o.expect(unsat && oracle_family.is_none(), || "unsatisfiable formula not reported".into());
            }
        }
        o.expect(forall == oracle_exists_forall(&split)?, || "exists-forall".into());
        Ok(o)
    });
    Ok((
        format!("random: seed {}, vars 1..=8, clauses 1..=2n+2, width 1..=3", spec.seed),
        dumps,
        outcomes,
    ))
}

struct ColorOracleItem {
    g: Graph,
    anchor_pick: usize,
    mask: u32,
}

fn sweep_color_oracle(spec: &SweepSpec, count: usize) -> Sweep {
    let mut r = rng(spec.seed);
    let items: Vec<ColorOracleItem> = (0..count)
        .map(|_| {
            let n = r.gen_range(1..=8usize);
            let p = *[0.3, 0.5, 0.7].choose(&mut r).expect("non-empty");
            ColorOracleItem {
                g: random_graph(&mut r, n, p),
                anchor_pick: r.gen(),
                mask: r.gen_range(0..1u32 << n),
            }
        })
        .collect();
    let dumps = items.iter().map(|i| dump_graph(&i.g)).collect();
    let outcomes = run_checks(&items, spec.jobs, |item| {
        let g = &item.g;
        let (oracle_chi, all) = oracle_colorings(g)?;
        let anchor = Coloring::new(all[item.anchor_pick % all.len()].clone());
        let chi = chromatic_number(g, &cfg())?;
        let listed = enumerate_colorings(g, &PartialColoring::new(), usize::MAX, &cfg())?;
        let inst = DefsetColorInstance::new(g.clone(), anchor.clone(), None, &cfg())?;
        let min = min_defining_coloring_set(&inst, &cfg())?;
        let fam = min_defining_coloring_family(g, &cfg())?;
        let candidate = anchor.restricted_to((0..g.num_vertices()).filter(|v| item.mask >> v & 1 == 1));
        let q1 = is_defining_coloring_set(&inst, &candidate, &cfg())?;
        let empty_defines = is_defining_coloring_set(&inst, &PartialColoring::new(), &cfg())?;
        let mut o = Outcome::new(format!(
            "chi={chi} count={} min={} family={} q1={}",
            listed.len(),
            min.size,
            fam.size,
            yes_no(q1)
        ))
        .tag(format!("chi={chi}"));
        o.expect(chi == oracle_chi, || "chromatic number".into());
        let listed_vecs: Vec<Vec<usize>> = listed.iter().map(|c| c.colors().to_vec()).collect();
        o.expect(listed_vecs == all, || "enumeration differs from the oracle".into());
        o.expect(min.size == oracle_min_defset_coloring(&inst)?, || "pair minimum".into());
        o.expect(fam.size == oracle_min_defset_coloring_family(g)?, || "family minimum".into());
        o.expect(q1 == oracle_is_defining_coloring(g, &candidate)?, || "Q1 answer".into());
        o.expect(
            min.size == 0 || coloring_defining_set_within(&inst, min.size - 1, &cfg())?.is_none(),
            || "a smaller defining set exists".into(),
        );
        if chi >= 2 {
            o = o.tag("symmetry-floor");
            o.expect(min.size >= 1 && fam.size >= 1 && !empty_defines, || "empty set accepted".into());
        }
        Ok(o)
    });
    Ok((
        format!("random: seed {}, vertices 1..=8, edge probability 0.3/0.5/0.7", spec.seed),
        dumps,
        outcomes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names_round_trip() {
        for t in VerifyTarget::ALL {
            assert_eq!(t.name().parse::<VerifyTarget>().unwrap(), t);
        }
        assert!("nope".parse::<VerifyTarget>().is_err());
    }

    #[test]
    fn cprime_sweep_tally() {
        let report = verify_reduction(VerifyTarget::Cprime, &SweepSpec::default()).unwrap();
        assert_eq!(report.instances, 16);
        assert_eq!(report.mismatches, 0);
        assert_eq!(report.tally["unique"], 15);
        assert_eq!(report.tally["none"], 1);
        assert_eq!(report.summary_line(), "VERIFY cprime instances=16 mismatches=0");
    }

    #[test]
    fn small_random_sweeps_pass() {
        let spec = SweepSpec {
            count: Some(10),
            ..SweepSpec::default()
        };
        for t in [VerifyTarget::Q2, VerifyTarget::SatOracle, VerifyTarget::ColorOracle] {
            let report = verify_reduction(t, &spec).unwrap();
            assert!(report.passed(), "{}", report.to_text());
        }
    }
}
