//! The `oddh` command line: products, constructions, verification, exact
//! search and bound tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or parameter
//! error, 3 search timeout, 4 certificate hash mismatch.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{
    best_lower_bound, cartesian_complete_model, cartesian_lift, direct_general_model,
    direct_k3_model, hamming_model, identity_model, star_model, strong_model, BaseModel, BestBound,
    ConstructionError, StrongKind,
};
use crate::graph::{
    complete, make_named_graph, parse_graph6, parse_graph_text, product, star, Family, Graph,
    ProductKind,
};
use crate::model::{
    parse_model, serialize_model, verify_with, OddExpansionModel, Verdict, VerifyOptions,
};
use crate::oracle::{odd_hadwiger, ExactStatus, SearchBudget};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_TIMEOUT: u8 = 3;
pub const EXIT_HASH: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "oddh",
    version,
    about = "Odd Hadwiger number lower bounds for graph products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a product graph and write it in the text format.
    Product {
        kind: ProductKind,
        /// First factor: a graph file or a family spec such as `cycle:5`.
        first: String,
        second: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a construction, write its certificate and host, and self-verify.
    Construct(ConstructArgs),
    /// Check a certificate against a graph.
    Verify {
        graph: String,
        certificate: PathBuf,
        /// Require stored connectors for every pair.
        #[arg(long)]
        strict: bool,
        /// Skip the graph hash comparison.
        #[arg(long)]
        ignore_hash: bool,
    },
    /// Compute the odd Hadwiger number by exhaustive search.
    Exact {
        graph: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Where to write the certificate of the value found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a construction family, optionally cross-checked by the oracle.
    Table {
        which: TableKind,
        /// First parameter range start (s, t or r depending on the table).
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        /// Second parameter range, for two-parameter tables.
        #[arg(long)]
        from2: Option<usize>,
        #[arg(long)]
        to2: Option<usize>,
        /// Add an oracle column for hosts within `--max-n` vertices.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Directory for per-row certificates and hosts.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Wall-clock limit in seconds.
    #[arg(long = "time", default_value_t = 60.0)]
    pub time: f64,
    /// Search-node limit.
    #[arg(long = "nodes", default_value_t = 100_000_000)]
    pub nodes: u64,
    /// Largest graph the search will take on.
    #[arg(long = "max-n", default_value_t = 16)]
    pub max_n: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Single worker and canonical certificates.
    #[arg(long)]
    pub strict: bool,
}

impl BudgetArgs {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_vertices: self.max_n,
            time_limit: Duration::from_secs_f64(self.time.max(0.0)),
            node_limit: self.nodes,
            jobs: self.jobs,
            strict: self.strict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    CartesianComplete,
    CartesianLift,
    Strong,
    Lex,
    Stars,
    DirectK3,
    DirectGeneral,
    Hamming,
    Best,
}

impl Theorem {
    fn id(self) -> &'static str {
        match self {
            Theorem::CartesianComplete => "cartesian-complete",
            Theorem::CartesianLift => "cartesian-lift",
            Theorem::Strong => "strong",
            Theorem::Lex => "lex",
            Theorem::Stars => "stars",
            Theorem::DirectK3 => "direct-k3",
            Theorem::DirectGeneral => "direct-general",
            Theorem::Hamming => "hamming",
            Theorem::Best => "best",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    CartesianComplete,
    DirectK3,
    DirectGeneral,
    Stars,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    pub theorem: Theorem,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// First factor for lift, strong, lex and best.
    #[arg(long)]
    pub first: Option<String>,
    #[arg(long)]
    pub second: Option<String>,
    /// Product for `best`.
    #[arg(long)]
    pub kind: Option<ProductKind>,
    /// Certificate path; the host goes to `<out>.host`.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Summary printed by `construct`, `exact` and `table`. Timings go to stderr
/// so that strict runs are byte-reproducible on stdout.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub outcome: Vec<(String, String)>,
    pub certificates: Vec<PathBuf>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for (k, v) in &self.inputs {
            writeln!(f, "input {k}: {v}")?;
        }
        for (k, v) in &self.outcome {
            writeln!(f, "{k}: {v}")?;
        }
        for p in &self.certificates {
            writeln!(f, "certificate: {}", p.display())?;
        }
        Ok(())
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type CliResult = Result<u8, CliError>;

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Product {
            kind,
            first,
            second,
            out,
        } => cmd_product(kind, &first, &second, out.as_deref()),
        Command::Construct(args) => cmd_construct(&args),
        Command::Verify {
            graph,
            certificate,
            strict,
            ignore_hash,
        } => cmd_verify(&graph, &certificate, strict, ignore_hash),
        Command::Exact { graph, budget, out } => cmd_exact(&graph, &budget, out.as_deref()),
        Command::Table {
            which,
            from,
            to,
            from2,
            to2,
            oracle,
            budget,
            out,
        } => cmd_table(
            which,
            (from, to),
            (from2, to2),
            oracle,
            &budget,
            out.as_deref(),
        ),
    }
}

/// Reads a graph file (graph6 for `.g6` or a `>>graph6<<` header, the text
/// format otherwise) or builds a family spec `name:p1,p2`.
pub fn load_graph(arg: &str) -> Result<Graph, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        let g6 = path.extension().is_some_and(|e| e == "g6") || text.starts_with(">>graph6<<");
        let parsed = if g6 {
            parse_graph6(text.trim())
        } else {
            parse_graph_text(&text)
        };
        return parsed.map_err(|e| CliError::input(format!("{arg}: {e}")));
    }
    let (name, params) = arg
        .split_once(':')
        .ok_or_else(|| CliError::input(format!("{arg}: no such file and not a family spec")))?;
    let family: Family = name.parse().map_err(CliError::input)?;
    let params = params
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::input(format!("{arg}: {e}")))?;
    make_named_graph(family, &params).map_err(|e| CliError::input(format!("{arg}: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn host_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".host");
    PathBuf::from(s)
}

pub fn cmd_product(kind: ProductKind, first: &str, second: &str, out: Option<&Path>) -> CliResult {
    let g = load_graph(first)?;
    let h = load_graph(second)?;
    let p = product(kind, &g, &h);
    let summary = format!("n={} m={} hash={}", p.order(), p.size(), p.content_hash());
    match out {
        Some(path) => {
            write_file(path, &p.to_text())?;
            println!("{summary}");
        }
        None => {
            print!("{}", p.to_text());
            eprintln!("{summary}");
        }
    }
    Ok(EXIT_OK)
}

fn need(v: Option<usize>, name: &str, theorem: Theorem) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::input(format!("{} needs --{name}", theorem.id())))
}

fn need_graph(v: &Option<String>, name: &str, theorem: Theorem) -> Result<Graph, CliError> {
    let arg = v
        .as_ref()
        .ok_or_else(|| CliError::input(format!("{} needs --{name}", theorem.id())))?;
    load_graph(arg)
}

/// A factor model: the identity for complete graphs, the oracle's
/// certificate otherwise.
fn factor_model(
    g: &Graph,
    budget: &SearchBudget,
    which: &str,
) -> Result<OddExpansionModel, CliError> {
    if g.is_complete() {
        return Ok(identity_model(g.order()));
    }
    let res =
        odd_hadwiger(g, budget).map_err(|e| CliError::input(format!("{which} factor: {e}")))?;
    Ok(res.certificate)
}

fn construction_error(theorem: Theorem, e: ConstructionError) -> CliError {
    CliError::input(format!("{} requires {e}", theorem.id()))
}

/// A construction result: certificate, host and extra report inputs.
pub type Built = (OddExpansionModel, Graph, Vec<(String, String)>);

/// Builds the certificate and host for a `construct` invocation.
pub fn build(args: &ConstructArgs) -> Result<Built, CliError> {
    let th = args.theorem;
    let budget = args.budget.budget();
    let err = |e| construction_error(th, e);
    let k = |n: usize| complete(n).map_err(|e| CliError::input(e.to_string()));
    let mut inputs = Vec::new();
    let (model, host) = match th {
        Theorem::CartesianComplete => {
            let (s, t) = (need(args.s, "s", th)?, need(args.t, "t", th)?);
            let base = cartesian_complete_model(s, t).map_err(err)?;
            (base.model().clone(), BaseModel::host(s, t))
        }
        Theorem::Stars => {
            let (r, t) = (need(args.r, "r", th)?, need(args.t, "t", th)?);
            let m = star_model(r, t).map_err(err)?;
            let sr = star(r).map_err(|e| CliError::input(e.to_string()))?;
            let st = star(t).map_err(|e| CliError::input(e.to_string()))?;
            (m, product(ProductKind::Strong, &sr, &st))
        }
        Theorem::DirectK3 => {
            let t = need(args.t, "t", th)?;
            let m = direct_k3_model(t).map_err(err)?;
            (m, product(ProductKind::Direct, &k(t)?, &k(3)?))
        }
        Theorem::DirectGeneral => {
            let (t, s) = (need(args.t, "t", th)?, need(args.s, "s", th)?);
            let m = direct_general_model(t, s).map_err(err)?;
            (m, product(ProductKind::Direct, &k(t)?, &k(s.max(1))?))
        }
        Theorem::Hamming => {
            let (n, d) = (need(args.n, "n", th)?, need(args.d, "d", th)?);
            let m = hamming_model(n, d).map_err(err)?;
            let host = make_named_graph(Family::Hamming, &[n, d])
                .map_err(|e| CliError::input(e.to_string()))?;
            (m, host)
        }
        Theorem::CartesianLift | Theorem::Strong | Theorem::Lex | Theorem::Best => {
            let g = need_graph(&args.first, "first", th)?;
            let h = need_graph(&args.second, "second", th)?;
            inputs.push(("first".to_string(), g.content_hash()));
            inputs.push(("second".to_string(), h.content_hash()));
            let mg = factor_model(&g, &budget, "first")?;
            let mh = factor_model(&h, &budget, "second")?;
            match th {
                Theorem::CartesianLift => {
                    let (s, t) = (mg.clique_order(), mh.clique_order());
                    let base = if s.min(t) >= 2 {
                        cartesian_complete_model(s, t)
                    } else {
                        BaseModel::trivial(s, t)
                    }
                    .map_err(err)?;
                    let m = cartesian_lift(&g, &mg, &h, &mh, &base).map_err(err)?;
                    (m, product(ProductKind::Cartesian, &g, &h))
                }
                Theorem::Strong | Theorem::Lex => {
                    let kind = if th == Theorem::Strong {
                        StrongKind::Strong
                    } else {
                        StrongKind::Lexicographic
                    };
                    let m = strong_model(&g, &mg, &h, &mh, kind).map_err(err)?;
                    (m, product(kind.product_kind(), &g, &h))
                }
                _ => {
                    let kind = args
                        .kind
                        .ok_or_else(|| CliError::input("best needs --kind"))?;
                    match best_lower_bound(&g, &mg, &h, &mh, kind).map_err(err)? {
                        BestBound::Constructed { model, via, .. } => {
                            inputs.push(("via".to_string(), via.to_string()));
                            (model, product(kind, &g, &h))
                        }
                        BestBound::NoConstruction { reason } => {
                            return Err(CliError::input(format!(
                                "no construction applies: {reason}"
                            )))
                        }
                    }
                }
            }
        }
    };
    Ok((model, host, inputs))
}

pub fn cmd_construct(args: &ConstructArgs) -> CliResult {
    let started = Instant::now();
    let (model, host, mut inputs) = build(args)?;
    let hash = host.content_hash();
    let text = serialize_model(&model, &hash);
    write_file(&args.out, &text)?;
    let host_file = host_path(&args.out);
    write_file(&host_file, &host.to_text())?;

    // Re-read what was written so the verdict covers the file on disk.
    let reread = fs::read(&args.out).map_err(|e| CliError::input(e.to_string()))?;
    let cert = parse_model(&reread).map_err(|e| CliError::input(e.to_string()))?;
    let verdict = verify_with(
        &host,
        &cert.model,
        VerifyOptions {
            require_connectors: cert.model.connectors.is_some(),
        },
    );
    inputs.insert(
        0,
        (
            "host".to_string(),
            format!("n={} m={} hash={hash}", host.order(), host.size()),
        ),
    );
    let mut outcome = vec![
        ("order".to_string(), model.clique_order().to_string()),
        ("verdict".to_string(), verdict.to_string()),
        ("host_file".to_string(), host_file.display().to_string()),
    ];
    if !model.flags.is_empty() {
        outcome.push(("flags".to_string(), model.flags.join(",")));
    }
    let report = RunReport {
        command: format!("construct {}", args.theorem.id()),
        inputs,
        outcome,
        certificates: vec![args.out.clone()],
    };
    print!("{report}");
    eprintln!("elapsed_ms: {}", started.elapsed().as_millis());
    Ok(if verdict.is_pass() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    })
}

pub fn cmd_verify(graph: &str, certificate: &Path, strict: bool, ignore_hash: bool) -> CliResult {
    let g = load_graph(graph)?;
    let bytes = fs::read(certificate)
        .map_err(|e| CliError::input(format!("{}: {e}", certificate.display())))?;
    let cert = parse_model(&bytes)
        .map_err(|e| CliError::input(format!("{}: {e}", certificate.display())))?;
    let hash = g.content_hash();
    if cert.graph_hash != hash && !ignore_hash {
        println!("HASH_MISMATCH certificate={} graph={hash}", cert.graph_hash);
        return Ok(EXIT_HASH);
    }
    let verdict = verify_with(
        &g,
        &cert.model,
        VerifyOptions {
            require_connectors: strict,
        },
    );
    println!("{verdict}");
    Ok(match verdict {
        Verdict::Pass { .. } => EXIT_OK,
        Verdict::Fail(_) => EXIT_VERIFY_FAIL,
    })
}

pub fn cmd_exact(graph: &str, budget: &BudgetArgs, out: Option<&Path>) -> CliResult {
    let started = Instant::now();
    let g = load_graph(graph)?;
    let res = odd_hadwiger(&g, &budget.budget()).map_err(|e| CliError::input(e.to_string()))?;
    let line = match res.status {
        ExactStatus::Exact => format!("EXACT {}", res.value),
        ExactStatus::LowerBoundOnly => format!("LOWER_BOUND {}", res.value),
        ExactStatus::Timeout => format!("TIMEOUT best={}", res.value),
    };
    println!("{line}");
    let mut outcome = vec![
        ("status".to_string(), res.status.to_string()),
        ("value".to_string(), res.value.to_string()),
        ("nodes".to_string(), res.nodes.to_string()),
    ];
    if let Some(r) = res.refutation_order {
        outcome.push(("refuted".to_string(), format!("K_{r}")));
    }
    let mut report = RunReport {
        command: "exact".to_string(),
        inputs: vec![(
            "graph".to_string(),
            format!("n={} m={} hash={}", g.order(), g.size(), g.content_hash()),
        )],
        outcome,
        certificates: Vec::new(),
    };
    if let Some(path) = out {
        write_file(path, &serialize_model(&res.certificate, &g.content_hash()))?;
        report.certificates.push(path.to_path_buf());
    }
    print!("{report}");
    eprintln!("elapsed_ms: {}", started.elapsed().as_millis());
    Ok(if res.status == ExactStatus::Timeout {
        EXIT_TIMEOUT
    } else {
        EXIT_OK
    })
}

/// One table row: parameters, construction output, expected order.
struct Row {
    label: String,
    model: OddExpansionModel,
    host: Graph,
    expected: usize,
}

fn table_rows(
    which: TableKind,
    first: (Option<usize>, Option<usize>),
    second: (Option<usize>, Option<usize>),
) -> Result<Vec<Row>, CliError> {
    let range = |r: (Option<usize>, Option<usize>), lo: usize, hi: usize| {
        r.0.unwrap_or(lo)..=r.1.unwrap_or(hi)
    };
    let k = |n: usize| complete(n).map_err(|e| CliError::input(e.to_string()));
    let fail = |th: Theorem| move |e| construction_error(th, e);
    let mut rows = Vec::new();
    match which {
        TableKind::CartesianComplete => {
            for s in range(first, 2, 6) {
                for t in range(second, 2, 6) {
                    let b =
                        cartesian_complete_model(s, t).map_err(fail(Theorem::CartesianComplete))?;
                    rows.push(Row {
                        label: format!("s={s} t={t}"),
                        model: b.model().clone(),
                        host: BaseModel::host(s, t),
                        expected: s + t - 2,
                    });
                }
            }
        }
        TableKind::DirectK3 => {
            for t in range(first, 6, 10) {
                rows.push(Row {
                    label: format!("t={t}"),
                    model: direct_k3_model(t).map_err(fail(Theorem::DirectK3))?,
                    host: product(ProductKind::Direct, &k(t)?, &k(3)?),
                    expected: t + 2,
                });
            }
        }
        TableKind::DirectGeneral => {
            for t in range(first, 4, 8) {
                for s in range(second, 3, 9) {
                    rows.push(Row {
                        label: format!("t={t} s={s}"),
                        model: direct_general_model(t, s).map_err(fail(Theorem::DirectGeneral))?,
                        host: product(ProductKind::Direct, &k(t)?, &k(s)?),
                        expected: t * (s / 3),
                    });
                }
            }
        }
        TableKind::Stars => {
            for r in range(first, 1, 4) {
                for t in range(second, 1, 4) {
                    let sr = star(r).map_err(|e| CliError::input(e.to_string()))?;
                    let st = star(t).map_err(|e| CliError::input(e.to_string()))?;
                    rows.push(Row {
                        label: format!("r={r} t={t}"),
                        model: star_model(r, t).map_err(fail(Theorem::Stars))?,
                        host: product(ProductKind::Strong, &sr, &st),
                        expected: if r == t { r + 1 } else { r.min(t) + 2 },
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn cmd_table(
    which: TableKind,
    first: (Option<usize>, Option<usize>),
    second: (Option<usize>, Option<usize>),
    oracle: bool,
    budget: &BudgetArgs,
    out: Option<&Path>,
) -> CliResult {
    let started = Instant::now();
    let rows = table_rows(which, first, second)?;
    let search = budget.budget();
    let name = which
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let mut all_pass = true;
    let mut timed_out = false;
    let mut header = "params\torder\texpected\tverdict".to_string();
    if oracle {
        header.push_str("\toracle");
    }
    println!("{header}");
    for row in rows {
        let verdict = verify_with(
            &row.host,
            &row.model,
            VerifyOptions {
                require_connectors: true,
            },
        );
        all_pass &= verdict.is_pass() && row.model.clique_order() == row.expected;
        let mut line = format!(
            "{}\t{}\t{}\t{}",
            row.label,
            row.model.clique_order(),
            row.expected,
            verdict
        );
        if oracle {
            let cell = if row.host.order() > search.max_vertices {
                "-".to_string()
            } else {
                match odd_hadwiger(&row.host, &search) {
                    Ok(res) => match res.status {
                        ExactStatus::Exact => format!("exact={}", res.value),
                        ExactStatus::LowerBoundOnly => format!(">={}", res.value),
                        ExactStatus::Timeout => {
                            timed_out = true;
                            format!(">={} timeout", res.value)
                        }
                    },
                    Err(e) => format!("error: {e}"),
                }
            };
            line.push('\t');
            line.push_str(&cell);
        }
        println!("{line}");
        if let Some(dir) = out {
            let stem = format!("{name}-{}", row.label.replace([' ', '='], "_"));
            let cert = dir.join(format!("{stem}.cert"));
            write_file(
                &cert,
                &serialize_model(&row.model, &row.host.content_hash()),
            )?;
            write_file(&host_path(&cert), &row.host.to_text())?;
        }
    }
    eprintln!("elapsed_ms: {}", started.elapsed().as_millis());
    Ok(if !all_pass {
        EXIT_VERIFY_FAIL
    } else if timed_out {
        EXIT_TIMEOUT
    } else {
        EXIT_OK
    })
}
