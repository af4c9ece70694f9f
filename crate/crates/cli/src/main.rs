use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use outerlabel::construct::{label_graph, LabelError, Mode, Strategy};
use outerlabel::dot::to_dot;
use outerlabel::generators::{enumerate_2conn_outerplanar, gen_gl, random_outerplanar};
use outerlabel::graph::Graph;
use outerlabel::graph6;
use outerlabel::labeling::{verify, Labeling};
use outerlabel::selftest::{self, SelftestConfig};
use outerlabel::solver::{
    k_feasible_with, lambda_exact_with, Feasibility, SolverConfig, SolverError, DEFAULT_BUDGET,
};

/// Exit statuses. Stable across releases.
mod status {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const UNSUPPORTED_GRAPH: u8 = 3;
    pub const NO_EXTENSION: u8 = 4;
    pub const BUDGET: u8 = 5;
}

#[derive(Parser)]
#[command(name = "outerlabel", version, about = "L(2,1)-labelings of outerplanar graphs with maximum degree 3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph given inline as graph6.
    #[arg(long, value_name = "STR")]
    graph6: Option<String>,
    /// Graph file (edge list or graph6).
    #[arg(short = 'f', long = "file", value_name = "PATH")]
    file: Option<PathBuf>,
    /// `-` reads the graph from standard input.
    #[arg(value_name = "-")]
    stdin: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Hand-derived case tables first, search on a miss.
    #[value(name = "paper")]
    Tables,
    /// Exact search only.
    Search,
    /// Exact search, with the case tables tracked in telemetry.
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// The ladder `G(l)`.
    Gl,
    /// Random outerplanar graph with maximum degree 3.
    Random,
    Cycle,
    Path,
}

#[derive(Subcommand)]
enum Command {
    /// Label a graph with labels in [0, 6].
    Label {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[arg(long, value_enum, default_value = "hybrid")]
        strategy: StrategyArg,
        /// Fail instead of falling back to exact search.
        #[arg(long)]
        strict: bool,
    },
    /// Exact λ, or k-feasibility with --k.
    Lambda {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        /// Search-node limit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Only decide whether labels in [0, k] suffice.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check a labeling; exits 1 when it has violations.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Labeling JSON file, or the JSON itself.
        #[arg(long, value_name = "PATH|JSON")]
        labeling: String,
        /// Upper label bound; defaults to the labeling's own `k`.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Generate a graph.
    Gen {
        #[arg(value_enum)]
        family: Family,
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "edges")]
        format: GraphFormat,
    },
    /// Stream every 2-connected outerplanar graph on n vertices as graph6.
    Enumerate { n: usize },
    /// Run the acceptance checks.
    Selftest {
        /// Smaller instance counts.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn parse_graph_text(text: &str) -> Result<Graph, Failure> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if first.split_whitespace().count() == 2 {
        Graph::parse_edge_list(text).map_err(|e| fail(status::PARSE, format!("edge list: {e}")))
    } else {
        graph6::decode(first).map_err(|e| fail(status::PARSE, format!("graph6: {e}")))
    }
}

fn read_graph(input: &Input) -> Result<Graph, Failure> {
    let given = [input.graph6.is_some(), input.file.is_some(), input.stdin.is_some()];
    if given.iter().filter(|&&x| x).count() != 1 {
        return Err(fail(status::PARSE, "give exactly one of --graph6, -f PATH, or -"));
    }
    if let Some(code) = &input.graph6 {
        return graph6::decode(code.trim()).map_err(|e| fail(status::PARSE, format!("graph6: {e}")));
    }
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| fail(status::PARSE, format!("{}: {e}", path.display())))?;
        return parse_graph_text(&text);
    }
    if input.stdin.as_deref() != Some("-") {
        return Err(fail(status::PARSE, "the only positional input is `-`"));
    }
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).map_err(|e| fail(status::PARSE, format!("stdin: {e}")))?;
    parse_graph_text(&text)
}

/// Accepts a bare labeling or any object with a `labeling` field.
fn read_labeling(arg: &str) -> Result<Labeling, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| fail(status::PARSE, format!("{arg}: {e}")))?
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| fail(status::PARSE, format!("labeling JSON: {e}")))?;
    let inner = value.get("labeling").cloned().unwrap_or(value);
    serde_json::from_value(inner).map_err(|e| fail(status::PARSE, format!("labeling JSON: {e}")))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn cmd_label(input: &Input, format: OutFormat, strategy: StrategyArg, strict: bool) -> Result<String, Failure> {
    let g = read_graph(input)?;
    let mode = match strategy {
        StrategyArg::Tables => Mode::CaseTables,
        StrategyArg::Search => Mode::CertifiedSearch,
        StrategyArg::Hybrid => Mode::Hybrid,
    };
    let out = label_graph(&g, &Strategy { mode, strict }).map_err(|e| match e {
        LabelError::NotOuterplanar(_) | LabelError::MaxDegreeExceeded(_) => fail(status::UNSUPPORTED_GRAPH, e.to_string()),
        LabelError::NoExtension(_) | LabelError::Solver(_) => fail(status::NO_EXTENSION, e.to_string()),
    })?;
    let span = out.labeling.span();
    Ok(match format {
        OutFormat::Json => pretty(&json!({ "labeling": out.labeling, "span": span, "telemetry": out.telemetry })),
        OutFormat::Dot => to_dot(&g, Some(&out.labeling), None),
        OutFormat::Text => {
            let labels: Vec<String> = out.labeling.values().iter().map(u32::to_string).collect();
            format!("span {span}\nlabels {}\n", labels.join(" "))
        }
    })
}

fn solver_failure(e: SolverError) -> Failure {
    match e {
        SolverError::BudgetExceeded(_) => fail(status::BUDGET, e.to_string()),
        _ => fail(status::PARSE, e.to_string()),
    }
}

fn cmd_lambda(input: &Input, format: OutFormat, budget: u64, k: Option<u32>, threads: usize) -> Result<String, Failure> {
    let g = read_graph(input)?;
    let cfg = SolverConfig { budget, threads, ..SolverConfig::default() };
    if let Some(k) = k {
        let res = k_feasible_with(&g, k, &cfg).map_err(solver_failure)?;
        let (feasible, witness, nodes) = match res {
            Feasibility::Feasible(w) => (true, Some(w), None),
            Feasibility::Infeasible { nodes } => (false, None, Some(nodes)),
        };
        return Ok(match format {
            OutFormat::Json => pretty(&json!({ "k": k, "feasible": feasible, "witness": witness, "nodes_explored": nodes })),
            OutFormat::Dot => to_dot(&g, witness.as_ref(), None),
            OutFormat::Text => format!("k {k} {}\n", if feasible { "feasible" } else { "infeasible" }),
        });
    }
    let r = lambda_exact_with(&g, &cfg).map_err(solver_failure)?;
    Ok(match format {
        OutFormat::Json => pretty(&json!(r)),
        OutFormat::Dot => to_dot(&g, Some(&r.witness), None),
        OutFormat::Text => {
            let mut s = format!("{}\n", r.lambda);
            if let Some(c) = &r.infeasibility_certificate {
                s += &format!("k = {} infeasible after {} nodes\n", c.k_tested, c.nodes_explored);
            }
            s
        }
    })
}

fn cmd_verify(input: &Input, labeling: &str, k: Option<u32>) -> Result<String, Failure> {
    let g = read_graph(input)?;
    let mut f = read_labeling(labeling)?;
    if let Some(k) = k {
        f.k = k;
    }
    let violations = verify(&g, &f, 2, 1).map_err(|e| fail(status::CHECK_FAILED, e.to_string()))?;
    if violations.is_empty() {
        return Ok("ok\n".into());
    }
    let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
    Err(fail(status::CHECK_FAILED, format!("{} violation(s)\n{}", violations.len(), lines.join("\n"))))
}

fn cmd_gen(family: Family, size: usize, seed: u64, format: GraphFormat) -> Result<String, Failure> {
    let (g, names) = match family {
        Family::Gl => {
            let gl = gen_gl(size).map_err(|e| fail(status::PARSE, e.to_string()))?;
            (gl.graph, Some(gl.names))
        }
        Family::Random => (random_outerplanar(size.max(1), seed), None),
        Family::Cycle if size >= 3 => (Graph::cycle(size), None),
        Family::Cycle => return Err(fail(status::PARSE, "a cycle needs at least 3 vertices")),
        Family::Path => (Graph::path(size), None),
    };
    match format {
        GraphFormat::Graph6 => graph6::encode(&g).map(|s| s + "\n").map_err(|e| fail(status::PARSE, e.to_string())),
        GraphFormat::Edges => Ok(g.to_edge_list()),
        GraphFormat::Dot => Ok(to_dot(&g, None, names.as_deref())),
    }
}

fn cmd_enumerate(n: usize) -> Result<String, Failure> {
    let graphs = enumerate_2conn_outerplanar(n).map_err(|e| fail(status::PARSE, e.to_string()))?;
    let mut out = String::new();
    for g in graphs {
        out += &graph6::encode(&g).expect("small graphs encode");
        out.push('\n');
    }
    Ok(out)
}

fn cmd_selftest(quick: bool, seed: u64, only: &[u8]) -> Result<String, Failure> {
    let mut cfg = if quick { SelftestConfig::quick() } else { SelftestConfig::full() };
    cfg.seed = seed;
    let checks: [fn(&SelftestConfig) -> selftest::CriterionReport; 8] = [
        selftest::criterion_1,
        selftest::criterion_2,
        selftest::criterion_3,
        selftest::criterion_4,
        selftest::criterion_5,
        selftest::criterion_6,
        selftest::criterion_7,
        selftest::criterion_8,
    ];
    let mut out = String::new();
    let mut all = true;
    for (i, check) in checks.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i as u8 + 1)) {
            continue;
        }
        let r = check(&cfg);
        all &= r.passed;
        out += &format!("{r}\n");
    }
    if all {
        Ok(out)
    } else {
        Err(fail(status::CHECK_FAILED, out.trim_end()))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Label { input, format, strategy, strict } => cmd_label(input, *format, *strategy, *strict),
        Command::Lambda { input, format, budget, k, threads } => cmd_lambda(input, *format, *budget, *k, *threads),
        Command::Verify { input, labeling, k } => cmd_verify(input, labeling, *k),
        Command::Gen { family, size, seed, format } => cmd_gen(*family, *size, *seed, *format),
        Command::Enumerate { n } => cmd_enumerate(*n),
        Command::Selftest { quick, seed, only } => cmd_selftest(*quick, *seed, only),
    };
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            if !out.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            ExitCode::from(status::OK)
        }
        Err(Failure { code, msg }) => {
            if code == status::CHECK_FAILED {
                println!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
