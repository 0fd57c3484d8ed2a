//! Command-line front end.
//!
//! Exit status: 0 on success or a positive verdict, 1 when the input is
//! well formed but the answer is negative (for example a transition set that
//! does not connect the graph), 2 on unreadable or malformed input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::graph::{Family, Graph};
use crate::hypergraph::{hypergraph_to_transitions, validate_co_connecting, validate_connecting, Hypergraph};
use crate::sat::{
    build_formula_graph, configuration_min_cost, configuration_table, Configuration, verify_reduction, Assignment, CnfFormula, Semantics, TableOptions,
};
use crate::solvers::{lower_bound, solve, tau, tau_heuristic_hypergraph, CoverOptions, SolveMode};
use crate::transitions::{first_unconnected_pair, transitions_to_hypergraph, TransitionSet};

const SCHEMA: u32 = 1;
const DEFAULT_SOLVE_BUDGET: u64 = 20_000_000;

#[derive(Parser, Debug)]
#[command(name = "transitset", version, about = "Minimum connecting transition sets")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a small connecting transition set.
    Solve {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Node budget for the exact search.
        #[arg(long, default_value_t = DEFAULT_SOLVE_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Check a transition set or a hypergraph against a graph.
    Check {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        solution: SolutionInput,
        /// Validate the hypergraph as co-connecting instead of connecting.
        #[arg(long, requires = "hypergraph")]
        co: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Turn a transition set into a hypergraph or the other way round.
    Convert {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        solution: SolutionInput,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Print tau, the lower bound and the tau hypergraph.
    Tau {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Print a graph from a named family.
    Generate {
        /// path, cycle, complete, path_complement, spider_complement or random_tree.
        family: String,
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print DOT instead of the edge list.
        #[arg(long)]
        dot: bool,
    },
    /// Build the gadget graph of a 3-CNF formula.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        /// Write the label map (JSON) to this file.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Compute the minimum local cover cost of all 20 clause configurations.
    Table {
        /// Node budget per configuration.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Exact)]
        semantics: SemanticsArg,
        /// Also require hyperedges to induce connected subgraphs.
        #[arg(long)]
        connected_only: bool,
        /// Compute only these configurations (e.g. --only UUU --only SSS).
        #[arg(long)]
        only: Vec<String>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Build the cover for an assignment and check the 25m criterion.
    VerifyReduction {
        #[arg(long)]
        cnf: PathBuf,
        /// Signed variable list, e.g. "1 -2 3 0".
        #[arg(long)]
        assignment: PathBuf,
        /// Node budget per configuration.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        output: OutputArg,
    },
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph file: "n m" header, then one "u v" edge per line.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SolutionInput {
    /// Transition file, one "a b c" per line (middle vertex b).
    #[arg(long)]
    transitions: Option<PathBuf>,
    /// Hypergraph file, one hyperedge per line.
    #[arg(long)]
    hypergraph: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OutputArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Auto,
    Heuristic,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SemanticsArg {
    Exact,
    AtLeast,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command, out, err) {
        Ok(Verdict::Yes) => 0,
        Ok(Verdict::No) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    read(path)?
        .parse::<Graph>()
        .with_context(|| format!("invalid graph file {}", path.display()))
}

fn read_hypergraph(path: &Path, err: &mut dyn Write) -> Result<Hypergraph> {
    let (h, duplicates) =
        Hypergraph::parse(&read(path)?).with_context(|| format!("invalid hypergraph file {}", path.display()))?;
    if duplicates > 0 {
        writeln!(err, "warning: collapsed {duplicates} duplicate hyperedge(s)")?;
    }
    Ok(h)
}

fn read_transitions(g: &Graph, path: &Path) -> Result<TransitionSet> {
    TransitionSet::parse(g, &read(path)?).with_context(|| format!("invalid transition file {}", path.display()))
}

fn print_json(out: &mut dyn Write, mut value: serde_json::Value) -> Result<()> {
    if let Some(obj) = value.as_object_mut() {
        let mut with_schema = serde_json::Map::new();
        with_schema.insert("schema".into(), json!(SCHEMA));
        with_schema.extend(std::mem::take(obj));
        *obj = with_schema;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<Verdict> {
    match command {
        Command::Solve {
            input,
            mode,
            budget,
            output,
        } => {
            let g = read_graph(&input.input)?;
            let mode = match mode {
                ModeArg::Auto => SolveMode::Auto,
                ModeArg::Heuristic => SolveMode::Heuristic,
                ModeArg::Exact => SolveMode::Exact,
            };
            let report = solve(&g, mode, Some(budget))?;
            if output.output == Format::Json {
                print_json(out, serde_json::to_value(&report)?)?;
            } else {
                writeln!(out, "cost {}", report.cost)?;
                writeln!(out, "lower_bound {}", report.lower_bound)?;
                writeln!(out, "optimal {}", report.optimal)?;
                writeln!(out, "method {}", report.method.as_str())?;
                writeln!(out, "transitions")?;
                write!(out, "{}", report.transitions)?;
                writeln!(out, "hyperedges")?;
                write!(out, "{}", report.hypergraph)?;
            }
            Ok(Verdict::Yes)
        }
        Command::Check {
            input,
            solution,
            co,
            output,
        } => {
            let g = read_graph(&input.input)?;
            if let Some(path) = solution.transitions {
                let t = read_transitions(&g, &path)?;
                let missing = first_unconnected_pair(&g, &t);
                if output.output == Format::Json {
                    print_json(
                        out,
                        json!({ "connected": missing.is_none(), "unconnected_pair": missing.map(|(u, v)| [u, v]) }),
                    )?;
                } else {
                    match missing {
                        None => writeln!(out, "connected")?,
                        Some((u, v)) => writeln!(out, "not connected: no compatible walk between {u} and {v}")?,
                    }
                }
                return Ok(Verdict::from_bool(missing.is_none()));
            }
            let h = read_hypergraph(solution.hypergraph.as_deref().expect("clap group"), err)?;
            let report = if co {
                validate_co_connecting(&g, &h)
            } else {
                validate_connecting(&g, &h)
            };
            if output.output == Format::Json {
                print_json(out, serde_json::to_value(&report)?)?;
            } else {
                writeln!(out, "{} (cost {})", if report.valid { "valid" } else { "invalid" }, report.cost)?;
                for v in &report.violations {
                    writeln!(out, "  {v}")?;
                }
            }
            Ok(Verdict::from_bool(report.valid))
        }
        Command::Convert {
            input,
            solution,
            output,
        } => {
            let g = read_graph(&input.input)?;
            let json_out = output.output == Format::Json;
            if let Some(path) = solution.transitions {
                let t = read_transitions(&g, &path)?;
                let h = match transitions_to_hypergraph(&g, &t) {
                    Ok(h) => h,
                    Err(e) => {
                        writeln!(err, "{e}")?;
                        return Ok(Verdict::No);
                    }
                };
                if json_out {
                    print_json(out, json!({ "cost": h.cost(), "hyperedges": h }))?;
                } else {
                    write!(out, "{h}")?;
                }
            } else {
                let h = read_hypergraph(solution.hypergraph.as_deref().expect("clap group"), err)?;
                let t = match hypergraph_to_transitions(&g, &h) {
                    Ok(t) => t,
                    Err(e) => {
                        writeln!(err, "{e}")?;
                        return Ok(Verdict::No);
                    }
                };
                if json_out {
                    let list: Vec<[usize; 3]> = t.iter().map(|t| t.as_triple()).collect();
                    print_json(out, json!({ "size": t.len(), "transitions": list }))?;
                } else {
                    write!(out, "{t}")?;
                }
            }
            Ok(Verdict::Yes)
        }
        Command::Tau { input, output } => {
            let g = read_graph(&input.input)?;
            let t = tau(&g)?;
            let lb = lower_bound(&g)?;
            let h = tau_heuristic_hypergraph(&g)?;
            if output.output == Format::Json {
                print_json(out, json!({ "tau": t, "lower_bound": lb, "hyperedges": h }))?;
            } else {
                writeln!(out, "tau {t}")?;
                writeln!(out, "lower_bound {lb}")?;
                writeln!(out, "hyperedges")?;
                write!(out, "{h}")?;
            }
            Ok(Verdict::Yes)
        }
        Command::Generate {
            family,
            size,
            seed,
            dot,
        } => {
            let g = Family::from_name(&family, size, seed)?.build()?;
            if dot {
                write!(out, "{}", g.to_dot())?;
            } else {
                write!(out, "{g}")?;
            }
            Ok(Verdict::Yes)
        }
        Command::Reduce { cnf, labels, output } => {
            let f = CnfFormula::parse_dimacs(&read(&cnf)?).with_context(|| format!("invalid CNF {}", cnf.display()))?;
            let g = build_formula_graph(&f)?;
            let label_json = g.labels_json();
            if let Some(path) = &labels {
                fs::write(path, serde_json::to_string_pretty(&label_json)? + "\n")
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            if output.output == Format::Json {
                let edges: Vec<[usize; 2]> = g.graph.edges().map(|(u, v)| [u, v]).collect();
                print_json(
                    out,
                    json!({
                        "vertices": g.graph.vertex_count(),
                        "edges": edges,
                        "labels": label_json,
                    }),
                )?;
            } else {
                write!(out, "{}", g.graph)?;
            }
            Ok(Verdict::Yes)
        }
        Command::Table {
            budget,
            semantics,
            connected_only,
            only,
            output,
        } => {
            let options = TableOptions {
                semantics: match semantics {
                    SemanticsArg::Exact => Semantics::Exact,
                    SemanticsArg::AtLeast => Semantics::AtLeast,
                },
                connected_only,
                cover: CoverOptions {
                    node_budget: budget,
                    ..CoverOptions::default()
                },
            };
            let table = if only.is_empty() {
                configuration_table(&options)?
            } else {
                let mut configs = only
                    .iter()
                    .map(|s| s.parse::<Configuration>())
                    .collect::<Result<Vec<_>, _>>()?;
                configs.sort();
                configs.dedup();
                configs
                    .into_iter()
                    .map(|c| configuration_min_cost(c, &options).map(|s| (c, s)))
                    .collect::<Result<Vec<_>, _>>()?
            };
            if output.output == Format::Json {
                let rows: Vec<_> = table
                    .iter()
                    .map(|(c, s)| json!({ "configuration": c.to_string(), "cost": s.cost, "hyperedges": s.hyperedges }))
                    .collect();
                print_json(out, json!({ "rows": rows }))?;
            } else {
                for (c, s) in &table {
                    writeln!(out, "{c} {}", s.cost)?;
                }
            }
            Ok(Verdict::Yes)
        }
        Command::VerifyReduction {
            cnf,
            assignment,
            budget,
            output,
        } => {
            let f = CnfFormula::parse_dimacs(&read(&cnf)?).with_context(|| format!("invalid CNF {}", cnf.display()))?;
            let a = Assignment::parse(&read(&assignment)?, f.variable_count())
                .with_context(|| format!("invalid assignment {}", assignment.display()))?;
            let options = TableOptions {
                cover: CoverOptions {
                    node_budget: budget,
                    ..CoverOptions::default()
                },
                ..TableOptions::default()
            };
            let (_, cover, report) = verify_reduction(&f, &a, &options)?;
            if output.output == Format::Json {
                let mut value = serde_json::to_value(&report)?;
                value["hyperedges"] = serde_json::to_value(&cover.hypergraph)?;
                print_json(out, value)?;
            } else {
                writeln!(out, "graph {} vertices, {} edges", report.vertices, report.edges)?;
                for c in &report.per_clause {
                    writeln!(out, "clause {} {} {}", c.clause, c.configuration, c.cost)?;
                }
                writeln!(out, "satisfied {}", report.satisfied)?;
                writeln!(out, "cost {} (25m = {})", report.cost, report.target_cost)?;
                writeln!(out, "cover_valid {}", report.cover_valid)?;
                writeln!(out, "within_clause_gadgets {}", report.within_clause_gadgets)?;
                writeln!(out, "criterion_holds {}", report.criterion_holds)?;
                writeln!(out, "note: {}", report.note)?;
            }
            Ok(Verdict::from_bool(report.passed()))
        }
    }
}
