//! `defset`: check, minimize and reduce defining sets from the command line.
//!
//! Exit status is 0 for success or a yes answer, 1 for a no answer (or a
//! verification mismatch), and 2 for any error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use defset_core::report::{assignment_value, coloring_count_hint, coloring_value, sat_count_hint};
use defset_core::{
    build_g_phi, build_h, coloring_defining_set_within, coloring_family_within, construct_mu, defining_set_within,
    family_defining_set_within, is_defining_coloring_set, is_defining_set, min_defining_coloring_family,
    min_defining_coloring_set, min_defining_set, min_defining_set_family, parse_assignment, parse_cnf, parse_coloring,
    parse_graph, reduce_q2_to_q3, reduce_unique_to_q2, split_to_3cnf, verify_reduction, with_pool, CnfFormula, Coloring,
    DefsetColorInstance, DefsetSatInstance, Graph, PartialAssignment, QuantifiedSplit, ReductionArtifact, ResultRecord,
    SearchConfig, SweepSpec, Var, VerifyTarget,
};

#[derive(Parser, Debug)]
#[command(name = "defset", version, about = "Defining sets of CNF models and optimal graph colorings")]
struct Cli {
    /// Refuse formulas with more variables than this.
    #[arg(long, global = true, default_value_t = defset_core::config::DEFAULT_MAX_VARS, value_parser = positive)]
    max_vars: usize,
    /// Refuse graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = defset_core::config::DEFAULT_MAX_VERTICES, value_parser = positive)]
    max_vertices: usize,
    /// Worker threads. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = positive)]
    jobs: usize,
    /// Output style for results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Defining sets of satisfying assignments.
    #[command(subcommand)]
    Sat(SatCommand),
    /// Defining sets of optimal colorings.
    #[command(subcommand)]
    Color(ColorCommand),
    /// Run one of the reductions and write its output.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Sweep a reduction law or a solver against the brute-force oracles.
    Verify {
        /// mu, cprime, q2, q3, gphi, h, sat-oracle or color-oracle.
        target: String,
        /// Number of random instances, for randomized targets.
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum SatCommand {
    /// Is the candidate a defining set of the anchor?
    Check {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        anchor: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Smallest defining set of the anchor, or with --k whether one of size
    /// at most k exists.
    Min {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        anchor: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Smallest defining set over all satisfying assignments, or with --k
    /// whether one of size at most k exists.
    FamilyMin {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum ColorCommand {
    /// Is the candidate a defining set of the coloring?
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Smallest defining set of the coloring, or with --k whether one of
    /// size at most k exists.
    Min {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Smallest defining set over all optimal colorings, or with --k
    /// whether one of size at most k exists.
    FamilyMin {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct Outputs {
    /// Where to write the constructed formula or graph (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the anchor assignment or coloring of the output.
    #[arg(long)]
    anchor_out: Option<PathBuf>,
    /// Where to write the provenance sidecar.
    #[arg(long)]
    provenance_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// Add the switch variable z to every clause.
    Mu {
        #[arg(long)]
        cnf: PathBuf,
        /// Comma-separated x block, e.g. `1,3`. The rest is the y block.
        #[arg(long, default_value = "")]
        x: String,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// The z-switched formula rewritten as a 3CNF.
    Split3 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, default_value = "")]
        x: String,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Exists-unique-exists instance to a pair instance with budget |x|.
    Q2 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, default_value = "")]
        x: String,
        /// Proper partial assignment over the y block.
        #[arg(long)]
        anchor: PathBuf,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Pair instance with budget k to a family instance with budget k.
    Q3 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        anchor: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// 3CNF with a proper assignment to a graph with an optimal coloring.
    Gphi {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        anchor: PathBuf,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// 3-chromatic graph with coloring and budget k to the graph H.
    H {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        outputs: Outputs,
    },
}

/// What a command produced: text for stdout and the exit status.
struct Outcome {
    text: String,
    status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    match with_pool(jobs, || run(&cli)) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_cnf(path: &Path) -> Result<CnfFormula> {
    parse_cnf(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_assignment(path: &Path) -> Result<PartialAssignment> {
    parse_assignment(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_coloring(path: &Path, n: usize) -> Result<Coloring> {
    let partial = parse_coloring(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(Coloring::from_partial(&partial, n)?)
}

fn parse_block(text: &str) -> Result<Vec<Var>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Var>().with_context(|| format!("bad variable `{s}` in --x")))
        .collect()
}

fn render(cli: &Cli, record: &ResultRecord) -> String {
    match cli.format {
        Format::Text => record.to_text(),
        Format::Record => record.to_record() + "\n",
    }
}

fn decided(cli: &Cli, record: ResultRecord) -> Outcome {
    let status = if record.answer == Some(false) { 1 } else { 0 };
    Outcome {
        text: render(cli, &record),
        status,
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = SearchConfig {
        max_vars: cli.max_vars,
        max_vertices: cli.max_vertices,
        jobs: cli.jobs,
    };
    match &cli.command {
        Command::Sat(cmd) => run_sat(cli, cmd, &cfg),
        Command::Color(cmd) => run_color(cli, cmd, &cfg),
        Command::Reduce(cmd) => run_reduce(cmd, &cfg),
        Command::Verify { target, count } => {
            let target: VerifyTarget = target.parse()?;
            let spec = SweepSpec {
                seed: cli.seed,
                count: *count,
                jobs: cli.jobs,
            };
            let report = verify_reduction(target, &spec)?;
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Record => report.to_record() + "\n",
            };
            Ok(Outcome {
                text,
                status: if report.passed() { 0 } else { 1 },
            })
        }
    }
}

fn run_sat(cli: &Cli, cmd: &SatCommand, cfg: &SearchConfig) -> Result<Outcome> {
    match cmd {
        SatCommand::Check { cnf, anchor, candidate } => {
            let formula = load_cnf(cnf)?;
            let inst = DefsetSatInstance::new(formula, load_assignment(anchor)?, None)?;
            let candidate = load_assignment(candidate)?;
            let mut r = ResultRecord::new("sat check");
            r.answer = Some(is_defining_set(&inst, &candidate, cfg)?);
            r.witness = Some(assignment_value(&candidate));
            r.model_count_hint = Some(sat_count_hint(inst.formula())?);
            Ok(decided(cli, r))
        }
        SatCommand::Min { cnf, anchor, k } => {
            let formula = load_cnf(cnf)?;
            let inst = DefsetSatInstance::new(formula, load_assignment(anchor)?, *k)?;
            let mut r = ResultRecord::new("sat min");
            r.model_count_hint = Some(sat_count_hint(inst.formula())?);
            match k {
                Some(k) => {
                    let hit = defining_set_within(&inst, *k, cfg)?;
                    r.answer = Some(hit.is_some());
                    r.min_size = hit.as_ref().map(PartialAssignment::len);
                    r.witness = hit.as_ref().map(assignment_value);
                }
                None => {
                    let min = min_defining_set(&inst, cfg)?;
                    r.min_size = Some(min.size);
                    r.witness = Some(assignment_value(&min.witness));
                }
            }
            Ok(decided(cli, r))
        }
        SatCommand::FamilyMin { cnf, k } => {
            let formula = load_cnf(cnf)?;
            let mut r = ResultRecord::new("sat family-min");
            let hit = match k {
                Some(k) => family_defining_set_within(&formula, *k, cfg)?,
                None => Some(min_defining_set_family(&formula, cfg)?),
            };
            if k.is_some() {
                r.answer = Some(hit.is_some());
            }
            if let Some(hit) = hit {
                r.min_size = Some(hit.size);
                r.witness = Some(assignment_value(&hit.witness));
                r.anchor = Some(assignment_value(&hit.anchor));
            }
            r.model_count_hint = Some(sat_count_hint(&formula)?);
            Ok(decided(cli, r))
        }
    }
}

fn run_color(cli: &Cli, cmd: &ColorCommand, cfg: &SearchConfig) -> Result<Outcome> {
    match cmd {
        ColorCommand::Check {
            graph,
            coloring,
            candidate,
        } => {
            let g = load_graph(graph)?;
            let c = load_coloring(coloring, g.num_vertices())?;
            let inst = DefsetColorInstance::new(g, c, None, cfg)?;
            let candidate = parse_coloring(&read(candidate)?)?;
            let mut r = ResultRecord::new("color check");
            r.answer = Some(is_defining_coloring_set(&inst, &candidate, cfg)?);
            r.witness = Some(coloring_value(&candidate));
            r.model_count_hint = Some(coloring_count_hint(inst.graph(), cfg)?);
            Ok(decided(cli, r))
        }
        ColorCommand::Min { graph, coloring, k } => {
            let g = load_graph(graph)?;
            let c = load_coloring(coloring, g.num_vertices())?;
            let inst = DefsetColorInstance::new(g, c, *k, cfg)?;
            let mut r = ResultRecord::new("color min");
            r.model_count_hint = Some(coloring_count_hint(inst.graph(), cfg)?);
            match k {
                Some(k) => {
                    let hit = coloring_defining_set_within(&inst, *k, cfg)?;
                    r.answer = Some(hit.is_some());
                    r.min_size = hit.as_ref().map(|h| h.len());
                    r.witness = hit.as_ref().map(coloring_value);
                }
                None => {
                    let min = min_defining_coloring_set(&inst, cfg)?;
                    r.min_size = Some(min.size);
                    r.witness = Some(coloring_value(&min.witness));
                }
            }
            Ok(decided(cli, r))
        }
        ColorCommand::FamilyMin { graph, k } => {
            let g = load_graph(graph)?;
            let mut r = ResultRecord::new("color family-min");
            let hit = match k {
                Some(k) => coloring_family_within(&g, *k, cfg)?,
                None => Some(min_defining_coloring_family(&g, cfg)?),
            };
            if k.is_some() {
                r.answer = Some(hit.is_some());
            }
            if let Some(hit) = hit {
                r.min_size = Some(hit.size);
                r.witness = Some(coloring_value(&hit.witness));
                r.anchor = Some(coloring_value(&Coloring::new(hit.anchor).to_partial()));
            }
            r.model_count_hint = Some(coloring_count_hint(&g, cfg)?);
            Ok(decided(cli, r))
        }
    }
}

/// Writes `body` to `--out` (or returns it for stdout) plus the optional
/// anchor and provenance files.
fn emit(outputs: &Outputs, body: String, anchor: Option<String>, provenance: String, summary: String) -> Result<Outcome> {
    if let Some(path) = &outputs.anchor_out {
        match &anchor {
            Some(a) => write(path, a)?,
            None => bail!("this reduction has no anchor to write"),
        }
    }
    if let Some(path) = &outputs.provenance_out {
        write(path, &provenance)?;
    }
    match &outputs.out {
        Some(path) => {
            write(path, &body)?;
            Ok(Outcome::ok(summary))
        }
        None => Ok(Outcome::ok(body)),
    }
}

fn emit_cnf(outputs: &Outputs, art: &ReductionArtifact) -> Result<Outcome> {
    let mut summary = format!(
        "vars: {}\nclauses: {}\n",
        art.output.num_vars(),
        art.output.num_clauses()
    );
    if let Some(b) = art.budget_out {
        summary += &format!("budget: {b}\n");
    }
    let anchor = art.anchor_out.as_ref().map(|a| a.to_line() + "\n");
    emit(outputs, art.output.to_dimacs(), anchor, art.provenance_sidecar(), summary)
}

fn run_reduce(cmd: &ReduceCommand, cfg: &SearchConfig) -> Result<Outcome> {
    match cmd {
        ReduceCommand::Mu { cnf, x, outputs } => {
            let split = QuantifiedSplit::from_x_block(load_cnf(cnf)?, parse_block(x)?, None)?;
            emit_cnf(outputs, &construct_mu(&split)?)
        }
        ReduceCommand::Split3 { cnf, x, outputs } => {
            let split = QuantifiedSplit::from_x_block(load_cnf(cnf)?, parse_block(x)?, None)?;
            emit_cnf(outputs, &split_to_3cnf(&construct_mu(&split)?)?)
        }
        ReduceCommand::Q2 { cnf, x, anchor, outputs } => {
            let split = QuantifiedSplit::from_x_block(load_cnf(cnf)?, parse_block(x)?, Some(load_assignment(anchor)?))?;
            emit_cnf(outputs, &reduce_unique_to_q2(&split)?.artifact)
        }
        ReduceCommand::Q3 { cnf, anchor, k, outputs } => {
            let inst = DefsetSatInstance::new(load_cnf(cnf)?, load_assignment(anchor)?, Some(*k))?;
            emit_cnf(outputs, &reduce_q2_to_q3(&inst, *k)?)
        }
        ReduceCommand::Gphi { cnf, anchor, outputs } => {
            let art = build_g_phi(&load_cnf(cnf)?, &load_assignment(anchor)?)?;
            let summary = format!("vertices: {}\nedges: {}\n", art.graph.num_vertices(), art.graph.num_edges());
            emit(outputs, art.graph.to_dimacs(), Some(art.coloring.to_text()), art.provenance_sidecar(), summary)
        }
        ReduceCommand::H {
            graph,
            coloring,
            k,
            outputs,
        } => {
            let g = load_graph(graph)?;
            let c = load_coloring(coloring, g.num_vertices())?;
            let art = build_h(&g, &c, *k, cfg)?;
            let summary = format!(
                "vertices: {}\nedges: {}\nbudget: {}\n",
                art.graph.num_vertices(),
                art.graph.num_edges(),
                k + 4
            );
            emit(outputs, art.graph.to_dimacs(), Some(art.coloring.to_text()), art.provenance_sidecar(), summary)
        }
    }
}
