use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cutlocus_core::classify::{catalog, catalog_for_graph, generate_cubic_graphs};
use cutlocus_core::format::{parse_graph, parse_scheme, write_scheme};
use cutlocus_core::reduce::{expand_vertex, reduce_to_cubic, TreeShape};
use cutlocus_core::verify::{self, Level, VerifyConfig};
use cutlocus_core::{render, ClassifyError, ParseError, ReduceError, Realizability, Scheme, SearchConfig};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VERIFY: u8 = 4;

/// Cut-locus structures: signed rotation systems whose ribbon surface has one
/// boundary circle.
#[derive(Parser, Debug)]
#[command(name = "cutlocus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; not every verb supports every format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for exhaustive searches (0 = all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Largest number of (rotation, signs) pairs one search may examine.
    #[arg(long, global = true, default_value_t = SearchConfig::default().budget, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the connected cubic multigraphs with q generating cycles.
    Graphs {
        /// Number of generating cycles (cycle rank).
        #[arg(long)]
        q: usize,
    },
    /// Catalogue CL-structures up to equivalence, for all cubic graphs of rank q or one graph file.
    Structures {
        /// Catalogue every cubic graph of this cycle rank.
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        q: Option<usize>,
        /// Graph (or scheme) file; its cyclic part is catalogued.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Which rotations may witness a sign vector: any, or only planar drawings.
        #[arg(long, value_enum, default_value_t = Mode::AnyRotation)]
        mode: Mode,
    },
    /// Report boundary circles, switched edges and the surface type of a scheme.
    Trace {
        /// Scheme file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Expand every vertex of degree > 3 into a cubic tree.
    Reduce {
        /// Scheme file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Expand one vertex of degree > 3 into a cubic tree.
    Expand {
        /// Scheme file.
        #[arg(long)]
        input: PathBuf,
        /// Vertex to expand; must have degree > 3.
        #[arg(long)]
        vertex: usize,
        /// Tree shape over the vertex's last d-1 darts, e.g. "(.(..))"; default is the caterpillar.
        #[arg(long)]
        shape: Option<String>,
    },
    /// Draw a scheme with switched edges marked "x" and the others "=".
    Render {
        /// Scheme file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the self-check suites.
    Verify {
        /// How exhaustive the checks are.
        #[arg(long, value_enum, default_value_t = LevelArg::Standard)]
        level: LevelArg,
        /// Seed for the random-scheme checks.
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    AnyRotation,
    Planar,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Quick,
    Standard,
    Full,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: e.to_string(),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let code = match e {
            ClassifyError::BudgetExceeded { .. } | ClassifyError::RankTooLarge { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}

fn search_config(cli: &Cli, mode: Realizability) -> SearchConfig {
    SearchConfig {
        mode,
        budget: cli.budget,
        threads: cli.threads,
        ..SearchConfig::default()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn read_scheme(path: &Path) -> Result<Scheme, Failure> {
    let text = read(path)?;
    parse_scheme(&text)
        .map(|named| named.scheme)
        .map_err(|e| Failure::from(e).with_path(path))
}

impl Failure {
    fn with_path(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

fn only(cli: &Cli, verb: &str, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&cli.format) {
        Ok(())
    } else {
        let names: Vec<String> = allowed.iter().map(|f| format!("{f:?}").to_lowercase()).collect();
        Err(Failure::usage(format!("`{verb}` supports --format {}", names.join("|"))))
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Graphs { q } => {
            only(cli, "graphs", &[Format::Text, Format::Json])?;
            let graphs = generate_cubic_graphs(*q, &search_config(cli, Realizability::AnyRotation))?;
            if cli.format == Format::Json {
                let list: Vec<_> = graphs
                    .iter()
                    .map(|g| json!({ "vertex_count": g.vertex_count(), "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>() }))
                    .collect();
                return Ok(pretty(&json!({ "q": q, "count": graphs.len(), "graphs": list })));
            }
            let mut out = String::new();
            if graphs.is_empty() {
                let _ = writeln!(
                    out,
                    "q = {q}: no cubic graphs (a connected cubic graph with q generating cycles has 2(q-1) > 0 vertices)"
                );
                return Ok(out);
            }
            let _ = writeln!(out, "q = {q}: {} cubic graphs", graphs.len());
            for (i, g) in graphs.iter().enumerate() {
                let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
                let _ = writeln!(
                    out,
                    "graph {}: V={} E={} edges [{}]",
                    i + 1,
                    g.vertex_count(),
                    g.edge_count(),
                    edges.join(" ")
                );
            }
            Ok(out)
        }
        Command::Structures { q, input, mode } => {
            only(cli, "structures", &[Format::Text, Format::Json])?;
            let mode = match mode {
                Mode::AnyRotation => Realizability::AnyRotation,
                Mode::Planar => Realizability::Planar,
            };
            let config = search_config(cli, mode);
            let result = match (q, input) {
                (Some(q), _) => catalog(*q, &config)?,
                (None, Some(path)) => {
                    let text = read(path)?;
                    // a scheme file is a graph file with extra lines; only the graph matters here
                    let graph = match parse_graph(&text) {
                        Ok(named) => named.graph,
                        Err(graph_err) => parse_scheme(&text)
                            .map(|s| s.scheme.graph().clone())
                            .map_err(|_| Failure::from(graph_err).with_path(path))?,
                    };
                    catalog_for_graph(&graph, &config)?
                }
                (None, None) => return Err(Failure::usage("give --q or --input")),
            };
            Ok(match cli.format {
                Format::Json => result.to_json() + "\n",
                _ => result.table(),
            })
        }
        Command::Trace { input } => {
            only(cli, "trace", &[Format::Text, Format::Json])?;
            let scheme = read_scheme(input)?;
            let surface = scheme.surface_type();
            let strip = scheme.is_strip().ok();
            let switched: Vec<usize> = scheme.switched_edges().iter().collect();
            if cli.format == Format::Json {
                return Ok(pretty(&json!({
                    "boundary_count": surface.boundary,
                    "is_strip": strip,
                    "switched_edges": switched,
                    "euler_patch": surface.euler_patch,
                    "euler_closed": surface.euler_closed,
                    "orientable": surface.orientable,
                    "genus_or_crosscaps": surface.genus_or_crosscaps(),
                    "surface": surface.name(),
                })));
            }
            let mut out = String::new();
            let _ = writeln!(out, "boundary circles:          {}", surface.boundary);
            let _ = writeln!(
                out,
                "strip:                     {}",
                match strip {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "undefined (graph has a degree-1 vertex)",
                }
            );
            let _ = writeln!(out, "switched edges:            {switched:?}");
            let _ = writeln!(out, "euler characteristic:      {} (patch), {} (capped)", surface.euler_patch, surface.euler_closed);
            let _ = writeln!(out, "orientable:                {}", if surface.orientable { "yes" } else { "no" });
            let _ = writeln!(out, "capped surface:            {}", surface.name());
            Ok(out)
        }
        Command::Reduce { input } => {
            only(cli, "reduce", &[Format::Text, Format::Json])?;
            let scheme = read_scheme(input)?;
            let (cubic, steps) = reduce_to_cubic(&scheme)?;
            let text = write_scheme(None, &cubic);
            if cli.format == Format::Json {
                return Ok(pretty(&json!({ "scheme": text, "steps": steps })));
            }
            let mut out = String::new();
            for (i, step) in steps.iter().enumerate() {
                let _ = writeln!(out, "# step {}: {}", i + 1, serde_json::to_string(step).expect("steps serialize"));
            }
            out.push_str(&text);
            Ok(out)
        }
        Command::Expand { input, vertex, shape } => {
            only(cli, "expand", &[Format::Text])?;
            let scheme = read_scheme(input)?;
            let shape = shape
                .as_deref()
                .map(str::parse::<TreeShape>)
                .transpose()
                .map_err(|e| Failure::usage(format!("bad --shape: {e}")))?;
            let expanded = expand_vertex(&scheme, *vertex, shape.as_ref())?;
            Ok(write_scheme(None, &expanded))
        }
        Command::Render { input } => {
            only(cli, "render", &[Format::Text, Format::Dot, Format::Svg])?;
            let scheme = read_scheme(input)?;
            let name = input.file_stem().and_then(|s| s.to_str()).unwrap_or("scheme");
            Ok(match cli.format {
                Format::Dot => render::to_dot(&scheme, name),
                Format::Svg => render::to_svg(&scheme),
                _ => render::to_text(&scheme),
            })
        }
        Command::Verify { level, seed } => {
            only(cli, "verify", &[Format::Text, Format::Json])?;
            let config = VerifyConfig {
                level: match level {
                    LevelArg::Quick => Level::Quick,
                    LevelArg::Standard => Level::Standard,
                    LevelArg::Full => Level::Full,
                },
                seed: *seed,
                search: search_config(cli, Realizability::AnyRotation),
                ..VerifyConfig::default()
            };
            let report = verify::run(&config)?;
            let out = match cli.format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("reports serialize")),
                _ => format!("{report}\n"),
            };
            if report.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure {
                    code: EXIT_VERIFY,
                    message: String::new(),
                })
            }
        }
    }
}
