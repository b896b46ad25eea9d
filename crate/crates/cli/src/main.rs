//! Command-line front end. Graphs flow between subcommands as edge lists on
//! standard streams, so generation, operators and solvers compose in pipes.
//! Exit codes: 0 success, 1 invalid input, 2 size limit exceeded, 3 the run
//! finished but the property does not hold (invalid coloring, non-chordal
//! input, non-converged simulation); payloads print only on 0 and 3.

use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use grundy_core::chordal::{chordal_color, perfect_elimination_order};
use grundy_core::exact::{binomial_tree_with_limit, default_limit, exact_parameter_with_limit};
use grundy_core::graph::{cartesian_product, conormal_sum, power_graph, random_graph};
use grundy_core::io::{
    detect_format, parse_coloring_lines, parse_graph, serialize_coloring_lines, serialize_graph,
    GraphFormat,
};
use grundy_core::sim::{run, trace_csv, Scenario};
use grundy_core::{build_family, verify, ColoringKind, Error, FamilySpec, Graph};

#[derive(Parser)]
#[command(
    name = "grundykit",
    version,
    about = "Graph coloring toolkit: families, operators, exact grundy / partial grundy / \
             b-chromatic / chromatic numbers with certificates, witness verification, \
             chordal analysis, and an ad hoc network channel assignment simulator"
)]
struct Cli {
    /// Output format for graph payloads (dot is output-only).
    #[arg(long, global = true, default_value = "edge_list", value_parser = parse_format)]
    format: GraphFormat,

    /// Vertex limit for exact searches; overrides GRUNDY_KIT_LIMIT, which in
    /// turn overrides the per-parameter default.
    #[arg(long, global = true)]
    limit: Option<usize>,

    /// Seed for randomized generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

fn parse_format(text: &str) -> Result<GraphFormat, String> {
    text.parse()
        .map_err(|_| format!("unknown format {text:?} (expected edge_list, dimacs or dot)"))
}

#[derive(Subcommand)]
enum Command {
    /// Emit a graph from a named family.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Combine or transform graphs.
    Op {
        #[command(subcommand)]
        op: Op,
    },
    /// Compute a coloring parameter exactly, with the lexicographically
    /// smallest certificate coloring.
    Exact {
        /// proper, grundy, partial_grundy or b_coloring
        kind: String,
        /// Graph file; "-" or absent reads standard input.
        input: Option<String>,
    },
    /// Check a coloring against a parameter's witness conditions.
    Verify {
        /// proper, grundy, partial_grundy or b_coloring
        kind: String,
        /// Graph file, or "-" for standard input.
        graph: String,
        /// Coloring file with one "vertex color" pair per line.
        coloring: String,
    },
    /// Emit a graph that attains a requested parameter value.
    Witness {
        #[command(subcommand)]
        witness: Witness,
    },
    /// Chordal graph analysis.
    Chordal {
        #[command(subcommand)]
        analysis: Chordal,
    },
    /// Run a network scenario and report convergence.
    Sim {
        /// Scenario JSON file, or "-" for standard input.
        scenario: String,
        /// Also write per-round metrics to this CSV file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The graph on n vertices with no edges.
    Empty { n: usize },
    /// The path on n vertices.
    Path { n: usize },
    /// The cycle on n vertices (n at least 3).
    Cycle { n: usize },
    /// The complete graph on n vertices.
    Complete { n: usize },
    /// One hub adjacent to the given number of leaves.
    Star { leaves: usize },
    /// The complete bipartite graph on m + n vertices.
    Bipartite { m: usize, n: usize },
    /// The complete k-ary tree of the given depth.
    Kary { arity: usize, depth: usize },
    /// Each vertex pair joined with probability p, deterministic in --seed.
    Random { n: usize, p: f64 },
}

#[derive(Subcommand)]
enum Op {
    /// The k-th power: edges join vertices at hop distance up to k.
    Power {
        #[arg(long)]
        k: usize,
        /// Graph file; "-" or absent reads standard input.
        input: Option<String>,
    },
    /// Cartesian product of two graphs.
    Product { a: String, b: String },
    /// Conormal sum of two graphs.
    Conormal { a: String, b: String },
}

#[derive(Subcommand)]
enum Witness {
    /// Binomial tree whose grundy number is exactly k, canonically colored.
    Grundy {
        k: usize,
        /// Write the canonical coloring here as "vertex color" lines.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Chordal {
    /// Perfect elimination order, or a certificate of non-chordality.
    Peo {
        /// Graph file; "-" or absent reads standard input.
        input: Option<String>,
    },
    /// Greedy coloring along the elimination order; uses clique-number many
    /// colors.
    Color {
        /// Graph file; "-" or absent reads standard input.
        input: Option<String>,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::LimitExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(err) => write!(f, "{err}"),
            Failure::Usage(message) => write!(f, "{message}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Core(err)
    }
}

fn read_input(path: Option<&str>) -> Result<String, Failure> {
    match path {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|err| Failure::Usage(format!("cannot read standard input: {err}")))?;
            Ok(text)
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|err| Failure::Usage(format!("cannot read {path}: {err}"))),
    }
}

fn load_graph(path: Option<&str>) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    let format = detect_format(&text)?;
    Ok(parse_graph(format, &text)?)
}

fn load_operands(a: &str, b: &str) -> Result<(Graph, Graph), Failure> {
    if a == "-" && b == "-" {
        return Err(Failure::Usage(
            "at most one operand can come from standard input".to_string(),
        ));
    }
    Ok((load_graph(Some(a))?, load_graph(Some(b))?))
}

fn parse_kind(text: &str) -> Result<ColoringKind, Failure> {
    Ok(text.parse::<ColoringKind>()?)
}

fn effective_limit(flag: Option<usize>, kind: ColoringKind) -> Result<usize, Failure> {
    if let Some(limit) = flag {
        return Ok(limit);
    }
    match std::env::var("GRUNDY_KIT_LIMIT") {
        Ok(value) => value.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "GRUNDY_KIT_LIMIT must be a vertex count, got {value:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(default_limit(kind)),
        Err(err) => Err(Failure::Usage(format!("GRUNDY_KIT_LIMIT: {err}"))),
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|err| Failure::Usage(format!("cannot write {}: {err}", path.display())))
}

// A consumer closing the pipe ends output early; that is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(err) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {err}");
        std::process::exit(1);
    }
}

fn execute(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Gen { family } => {
            let g = match *family {
                Family::Empty { n } => build_family(FamilySpec::Empty { n })?,
                Family::Path { n } => build_family(FamilySpec::Path { n })?,
                Family::Cycle { n } => build_family(FamilySpec::Cycle { n })?,
                Family::Complete { n } => build_family(FamilySpec::Complete { n })?,
                Family::Star { leaves } => build_family(FamilySpec::Star { leaves })?,
                Family::Bipartite { m, n } => build_family(FamilySpec::CompleteBipartite { m, n })?,
                Family::Kary { arity, depth } => {
                    build_family(FamilySpec::KaryTree { arity, depth })?
                }
                Family::Random { n, p } => random_graph(n, p, cli.seed)?,
            };
            emit(&serialize_graph(cli.format, &g, None));
            Ok(0)
        }
        Command::Op { op } => {
            let g = match op {
                Op::Power { k, input } => power_graph(&load_graph(input.as_deref())?, *k)?,
                Op::Product { a, b } => {
                    let (ga, gb) = load_operands(a, b)?;
                    cartesian_product(&ga, &gb)?
                }
                Op::Conormal { a, b } => {
                    let (ga, gb) = load_operands(a, b)?;
                    conormal_sum(&ga, &gb)?
                }
            };
            emit(&serialize_graph(cli.format, &g, None));
            Ok(0)
        }
        Command::Exact { kind, input } => {
            let kind = parse_kind(kind)?;
            let g = load_graph(input.as_deref())?;
            let limit = effective_limit(cli.limit, kind)?;
            let solution = exact_parameter_with_limit(&g, kind, limit)?;
            let payload = serde_json::json!({
                "kind": kind.as_str(),
                "k": solution.k,
                "certificate": solution.certificate.colors(),
            });
            emit(&format!("{payload}\n"));
            Ok(0)
        }
        Command::Verify {
            kind,
            graph,
            coloring,
        } => {
            let kind = parse_kind(kind)?;
            if graph == "-" && coloring == "-" {
                return Err(Failure::Usage(
                    "graph and coloring cannot both come from standard input".to_string(),
                ));
            }
            let g = load_graph(Some(graph))?;
            let text = read_input(Some(coloring))?;
            let c = parse_coloring_lines(&text, g.vertex_count())?;
            let report = verify(&g, &c, kind)?;
            emit(&format!(
                "{}\n",
                serde_json::to_string(&report).expect("report serializes")
            ));
            Ok(if report.valid { 0 } else { 3 })
        }
        Command::Witness { witness } => {
            let Witness::Grundy { k, coloring_out } = witness;
            let limit = effective_limit(cli.limit, ColoringKind::Grundy)?;
            let (tree, coloring) = binomial_tree_with_limit(*k, limit)?;
            emit(&serialize_graph(cli.format, &tree, Some(&coloring)));
            if let Some(path) = coloring_out {
                write_file(path, &serialize_coloring_lines(&coloring))?;
            }
            Ok(0)
        }
        Command::Chordal { analysis } => {
            let input = match analysis {
                Chordal::Peo { input } | Chordal::Color { input } => input.as_deref(),
            };
            let g = load_graph(input)?;
            let order = match perfect_elimination_order(&g) {
                Err(cert) => {
                    let payload = serde_json::json!({
                        "chordal": false,
                        "vertex": cert.vertex,
                        "missing_edge": [cert.missing_edge.0, cert.missing_edge.1],
                    });
                    emit(&format!("{payload}\n"));
                    return Ok(3);
                }
                Ok(order) => order,
            };
            let payload = match analysis {
                Chordal::Peo { .. } => serde_json::json!({
                    "chordal": true,
                    "order": order.order,
                }),
                Chordal::Color { .. } => {
                    let colored = chordal_color(&g)?;
                    serde_json::json!({
                        "chordal": true,
                        "omega": colored.omega,
                        "k": colored.coloring.k(),
                        "grundy_valid": colored.grundy_valid,
                        "colors": colored.coloring.colors(),
                    })
                }
            };
            emit(&format!("{payload}\n"));
            Ok(0)
        }
        Command::Sim { scenario, trace } => {
            let text = read_input(Some(scenario))?;
            let scenario = Scenario::from_json(&text)?;
            let outcome = run(&scenario)?;
            if let Some(path) = trace {
                write_file(path, &trace_csv(&outcome.trace))?;
            }
            let payload = serde_json::json!({
                "converged": outcome.converged,
                "rounds": outcome.trace.len(),
                "state": outcome.state,
                "fixpoint": outcome.fixpoint,
            });
            emit(&format!("{payload}\n"));
            Ok(if outcome.converged { 0 } else { 3 })
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests exit 0; genuine usage errors exit 1
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match execute(&cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            std::process::exit(failure.exit_code());
        }
    }
}
