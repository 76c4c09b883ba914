use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use orthorep::delta::check_delta_ordering;
use orthorep::linalg::{float_eigenvalues, gram_matrix};
use orthorep::oracles::{check_delta_conjecture, msr_known};
use orthorep::sweep::{sweep, SweepOptions, SweepSummary, SWEEP_MAX_N, SWEEP_MIN_N};
use orthorep::{
    build_representation, circular_layout, classify, emit_dot, emit_svg, find_delta_ordering,
    fixtures, generate, graph6, repjson, verify_representation, DeltaCheck, Family, Graph,
    SeedVectorPolicy, SolverConfig, VertexOrdering,
};

#[derive(Parser)]
#[command(
    name = "orthorep",
    version,
    about = "Orthogonal representations and minimum semidefinite rank bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Dot,
    G6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Sparse,
    Dense,
    Generic,
}

impl From<Policy> for SeedVectorPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Sparse => SeedVectorPolicy::Sparse,
            Policy::Dense => SeedVectorPolicy::Dense,
            Policy::Generic => SeedVectorPolicy::Generic,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// graph6 input file, `-` for stdin
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph as graph6
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        /// Cartesian product with FAMILY:K (row-major numbering)
        #[arg(long)]
        product: Option<String>,
        /// Emit the complement
        #[arg(long)]
        complement: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Circular embedding as SVG or DOT
    Embed {
        #[command(flatten)]
        common: Common,
        /// `identity`, a comma-separated vertex list, or a file holding one
        #[arg(long, default_value = "identity")]
        order: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Radians; the first vertex sits at this angle
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
        start_angle: f64,
    },
    /// Report δ / C-δ classification for every graph in the input
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Build an orthogonal representation and emit it as JSON
    Solve {
        #[command(flatten)]
        common: Common,
        /// `auto`, `paper-rowmajor`, a comma-separated vertex list, or a file
        #[arg(long, default_value = "auto")]
        order: String,
        /// `auto` (n - δ) or an explicit dimension
        #[arg(long, default_value = "auto")]
        dim: String,
        #[arg(long)]
        max_backtracks: Option<usize>,
        /// Comma-separated nonzero integers, e.g. `1,-1,2,-2`
        #[arg(long, allow_hyphen_values = true)]
        seed_pool: Option<String>,
        #[arg(long, value_enum)]
        policy: Option<Policy>,
        /// Disable the fallback policy
        #[arg(long)]
        no_fallback: bool,
        /// Write the build trace (JSON) to this file
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Certify a representation JSON against a graph
    Verify {
        #[command(flatten)]
        common: Common,
        /// Representation JSON produced by `solve`
        #[arg(long)]
        rep: PathBuf,
    },
    /// Known msr value and the bound check for every graph in the input
    Oracle {
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive check on all graphs with G and its complement connected
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include per-graph runtime_ms (output is then not reproducible)
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    /// Exit 1: a check ran and did not pass.
    Check(String),
    /// Exit 2: bad invocation or unreadable input.
    Usage(String),
}

type CliResult<T = ()> = Result<T, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn read_graphs(common: &Common) -> CliResult<Vec<Graph>> {
    let path = common
        .graph
        .as_deref()
        .ok_or_else(|| usage("--graph is required"))?;
    let graphs = graph6::decode_lines(&read_input(path)?).map_err(usage)?;
    if graphs.is_empty() {
        return Err(usage(format!("{}: no graphs", path.display())));
    }
    Ok(graphs)
}

fn read_graph(common: &Common) -> CliResult<Graph> {
    let mut graphs = read_graphs(common)?;
    if graphs.len() > 1 {
        return Err(usage("expected exactly one graph in the input"));
    }
    Ok(graphs.remove(0))
}

fn write_output(common: &Common, text: &str) -> CliResult {
    match &common.out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("stdout: {e}"))),
    }
}

fn require_format(common: &Common, allowed: &[Format], default: Format) -> CliResult<Format> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage("--format is not supported by this subcommand"))
    }
}

fn parse_family(spec: &str, k: usize) -> CliResult<Graph> {
    let family: Family = spec.parse().map_err(usage)?;
    generate(family, k).map_err(usage)
}

fn parse_order(spec: &str, g: &Graph) -> CliResult<VertexOrdering> {
    let n = g.order();
    let list = match spec {
        "identity" => return Ok(VertexOrdering::identity(n)),
        "paper-rowmajor" => {
            if n != 12 {
                return Err(usage(
                    "paper-rowmajor applies to the 12-vertex worked example",
                ));
            }
            return Ok(fixtures::paper_rowmajor());
        }
        s if s.contains(',') || s.parse::<usize>().is_ok() => s.to_string(),
        path => read_input(Path::new(path))?,
    };
    let order: Vec<usize> = list
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| usage(format!("bad vertex `{t}` in ordering")))
        })
        .collect::<CliResult<_>>()?;
    let order = VertexOrdering::new(order).map_err(usage)?;
    if order.len() != n {
        return Err(usage(format!(
            "ordering has {} vertices, graph has {n}",
            order.len()
        )));
    }
    Ok(order)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen {
            family,
            k,
            product,
            complement,
            common,
        } => {
            let format = require_format(&common, &[Format::G6, Format::Json], Format::G6)?;
            let mut g = parse_family(&family, k)?;
            if let Some(p) = product {
                let (f, k2) = p
                    .split_once(':')
                    .ok_or_else(|| usage("--product expects FAMILY:K"))?;
                let k2: usize = k2
                    .parse()
                    .map_err(|_| usage("--product size must be an integer"))?;
                g = g.cartesian_product(&parse_family(f, k2)?);
            }
            if complement {
                g = g.complement();
            }
            let g6 = graph6::encode(&g).map_err(usage)?;
            let text = match format {
                Format::Json => to_json(&json!({
                    "graph6": g6,
                    "n": g.order(),
                    "edges": g.edges().collect::<Vec<_>>(),
                    "stats": g.stats(),
                })),
                _ => format!("{g6}\n"),
            };
            write_output(&common, &text)
        }
        Command::Embed {
            common,
            order,
            radius,
            start_angle,
        } => {
            let format = require_format(&common, &[Format::Svg, Format::Dot], Format::Svg)?;
            let g = read_graph(&common)?;
            let order = parse_order(&order, &g)?;
            let layout = circular_layout(&g, &order, radius, start_angle).map_err(usage)?;
            let text = match format {
                Format::Dot => emit_dot(&layout, &g),
                _ => emit_svg(&layout, &g),
            }
            .map_err(usage)?;
            write_output(&common, &text)
        }
        Command::Classify { common } => {
            require_format(&common, &[Format::Json], Format::Json)?;
            let mut out = String::new();
            for g in read_graphs(&common)? {
                let record = match classify(&g) {
                    Ok(class) => json!({
                        "graph6": graph6::encode(&g).map_err(usage)?,
                        "stats": g.stats(),
                        "bound": g.order() - g.min_degree(),
                        "class": class,
                    }),
                    Err(e) => json!({
                        "graph6": graph6::encode(&g).map_err(usage)?,
                        "stats": g.stats(),
                        "error": e.to_string(),
                    }),
                };
                out.push_str(&serde_json::to_string(&record).expect("serialisable"));
                out.push('\n');
            }
            write_output(&common, &out)
        }
        Command::Solve {
            common,
            order,
            dim,
            max_backtracks,
            seed_pool,
            policy,
            no_fallback,
            trace,
        } => {
            require_format(&common, &[Format::Json], Format::Json)?;
            let g = read_graph(&common)?;
            let order = if order == "auto" {
                find_delta_ordering(&g)
                    .map_err(usage)?
                    .ok_or_else(|| {
                        Failure::Check("no δ-ordering exists; pass --order explicitly".into())
                    })?
                    .order
            } else {
                parse_order(&order, &g)?
            };
            if g.order() >= 4 {
                if let Ok(DeltaCheck::Violated(v)) = check_delta_ordering(&g, &order) {
                    eprintln!(
                        "note: ordering is not a δ-ordering (vertex {} at position {})",
                        v.vertex, v.position
                    );
                }
            }
            let d = match dim.as_str() {
                "auto" => g.order() - g.min_degree(),
                s => s
                    .parse()
                    .map_err(|_| usage("--dim expects `auto` or an integer"))?,
            };
            let mut config = SolverConfig::default();
            if let Some(b) = max_backtracks {
                config.max_backtracks = b;
            }
            if let Some(pool) = seed_pool {
                config.value_pool = pool
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| usage(format!("bad pool value `{t}`")))
                    })
                    .collect::<CliResult<_>>()?;
            }
            if let Some(p) = policy {
                config.seed_vector_policy = p.into();
            }
            if no_fallback {
                config.fallback_policy = None;
            }
            let outcome = build_representation(&g, &order, d, &config).map_err(usage)?;
            if let Some(path) = trace {
                fs::write(&path, to_json(outcome.trace()))
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            let rep = outcome.representation().ok_or_else(|| {
                Failure::Check(format!(
                    "no representation found in dimension {d} after {} revisions (inconclusive)",
                    outcome.trace().backtracks
                ))
            })?;
            let report = verify_representation(&g, rep).map_err(usage)?;
            if !report.certifies() {
                return Err(Failure::Check(format!(
                    "built vectors failed verification: {report:?}"
                )));
            }
            write_output(
                &common,
                &format!("{}\n", repjson::to_json(rep).map_err(usage)?),
            )
        }
        Command::Verify { common, rep } => {
            require_format(&common, &[Format::Json], Format::Json)?;
            let rep = repjson::from_json(&read_input(&rep)?).map_err(usage)?;
            let g = match &common.graph {
                Some(_) => read_graph(&common)?,
                None => rep.graph.clone(),
            };
            let report = verify_representation(&g, &rep).map_err(usage)?;
            let gram = gram_matrix(&rep.rational_vectors()).map_err(usage)?;
            let eigen = float_eigenvalues(&gram).map_err(usage)?;
            let text = to_json(&json!({
                "certifies": report.certifies(),
                "report": report,
                "float_eigenvalues": eigen,
            }));
            write_output(&common, &text)?;
            if report.certifies() {
                Ok(())
            } else {
                let pairs: Vec<String> = report
                    .failures
                    .iter()
                    .map(|f| format!("({},{})", f.i, f.j))
                    .collect();
                Err(Failure::Check(format!(
                    "verification failed; pattern mismatches at {}",
                    if pairs.is_empty() {
                        "none".into()
                    } else {
                        pairs.join(" ")
                    }
                )))
            }
        }
        Command::Oracle { common } => {
            require_format(&common, &[Format::Json], Format::Json)?;
            let config = SolverConfig::default();
            let mut out = String::new();
            for g in read_graphs(&common)? {
                let record = json!({
                    "graph6": graph6::encode(&g).map_err(usage)?,
                    "msr": msr_known(&g).map_err(usage)?,
                    "conjecture": check_delta_conjecture(&g, &config).map_err(usage)?,
                });
                out.push_str(&serde_json::to_string(&record).expect("serialisable"));
                out.push('\n');
            }
            write_output(&common, &out)
        }
        Command::Sweep {
            max_n,
            jobs,
            timing,
            common,
        } => {
            require_format(&common, &[Format::Json], Format::Json)?;
            if !(SWEEP_MIN_N..=SWEEP_MAX_N).contains(&max_n) {
                return Err(usage(format!(
                    "--max-n must lie in {SWEEP_MIN_N}..={SWEEP_MAX_N}"
                )));
            }
            let options = SweepOptions {
                jobs,
                timing,
                ..SweepOptions::new(max_n)
            };
            let records = sweep(&options, &SolverConfig::default()).map_err(usage)?;
            let mut out = String::new();
            for r in &records {
                out.push_str(&serde_json::to_string(r).expect("serialisable"));
                out.push('\n');
            }
            write_output(&common, &out)?;
            eprintln!(
                "{}",
                serde_json::to_string(&SweepSummary::from_records(&records)).expect("serialisable")
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("orthorep: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("orthorep: {msg}");
            ExitCode::from(2)
        }
    }
}
