//! `qgraph`: expansions, identity verification, jet dimensions and
//! asymptotics from the command line.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or
//! operational error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qgraph_core::asymptotics::{self, AsymptoticCase, Verdict};
use qgraph_core::catalog;
use qgraph_core::graph::{self, builtin, builtin_names, parse_graph_file, GraphSeriesSpec, Method};
use qgraph_core::jets::{self, JetPresentation, Mode};
use qgraph_core::registry::{self, Report, Status};
use qgraph_core::Series;

#[derive(Parser)]
#[command(name = "qgraph", version, about = "Graph series and q-series identities")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads (default: QGRAPH_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for prime selection.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Enumerate,
    TreeDp,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Enumerate => Method::Enumerate,
            MethodArg::TreeDp => Method::TreeDp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    SinglePrime,
    DualPrime,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::SinglePrime => Mode::SinglePrime,
            ModeArg::DualPrime => Mode::DualPrime,
            ModeArg::Exact => Mode::ExactRational,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ListWhat {
    Identities,
    Graphs,
    Series,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a catalog series or a graph series.
    Expand {
        /// Catalog name, e.g. D, G, chi0, A(1,2).
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        series: Option<String>,
        /// `builtin:NAME` or a graph file.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value_t = 20)]
        order: i64,
    },
    /// Graph series of a builtin or a graph file.
    GraphSeries {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 20)]
        order: i64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Verify registered identities.
    Verify {
        /// Identity id, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        /// Restrict `all` to entries with any of these tags.
        #[arg(long)]
        tag: Vec<String>,
        /// Truncation order, or `default`.
        #[arg(long, default_value = "default")]
        order: String,
        /// Write the structured report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Record wall time per identity (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Graded dimensions of the arc algebra.
    Jets {
        /// `builtin:NAME` or a graph file; its edges are the relations.
        #[arg(long, conflicts_with_all = ["vars", "relations"])]
        graph: Option<String>,
        /// Number of variables for an explicit presentation.
        #[arg(long, requires = "relations")]
        vars: Option<usize>,
        /// Relations `i*j` (1-indexed), comma separated, e.g. `1*1` or `1*2,2*3`.
        #[arg(long, requires = "vars")]
        relations: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::DualPrime)]
        mode: ModeArg,
        /// Compare with the graph series (needs --graph).
        #[arg(long, requires = "graph")]
        compare: bool,
    },
    /// Residuals of the prefactored path series at q = e^-t.
    Asym {
        /// A2..A8, or `all`.
        #[arg(long, default_value = "all")]
        case: String,
        /// Decreasing list of t values.
        #[arg(long, value_delimiter = ',', default_values_t = asymptotics::DEFAULT_GRID)]
        t: Vec<f64>,
        /// Also print least-squares constants (no verdict).
        #[arg(long)]
        fit: bool,
    },
    /// List identities, builtin graphs or catalog series.
    List {
        #[arg(value_enum, default_value_t = ListWhat::Identities)]
        what: ListWhat,
    },
}

struct Failure(String);

impl<E: std::error::Error + std::fmt::Debug> From<E> for Failure {
    fn from(e: E) -> Failure {
        let debug = format!("{e:?}");
        let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        Failure(format!("{name}: {e}"))
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(format!("usage: {}", msg.into()))
}

/// What a command produced: text and whether every check held.
struct Output {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("QGRAPH_THREADS").ok().and_then(|v| v.trim().parse().ok())
    });
    if let Some(n) = threads.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Expand {
            series,
            graph,
            order,
        } => {
            check_order(*order)?;
            let (label, s) = match (series, graph) {
                (Some(name), _) => (name.clone(), catalog::named_series(name, *order)?),
                (None, Some(g)) => (g.clone(), graph::evaluate(&load_graph(g)?, *order, Method::Auto)?),
                (None, None) => return Err(usage("give --series or --graph")),
            };
            Ok(ok(series_output(&label, &s, structured)))
        }
        Command::GraphSeries {
            graph,
            order,
            method,
        } => {
            check_order(*order)?;
            let s = graph::evaluate(&load_graph(graph)?, *order, (*method).into())?;
            Ok(ok(series_output(graph, &s, structured)))
        }
        Command::Verify {
            identity,
            tag,
            order,
            report,
            timings,
        } => verify(identity, tag, order, report.as_ref(), *timings, structured),
        Command::Jets {
            graph,
            vars,
            relations,
            max_degree,
            mode,
            compare,
        } => jets_cmd(
            graph.as_deref(),
            *vars,
            relations.as_deref(),
            *max_degree,
            (*mode).into(),
            *compare,
            cli.seed,
            structured,
        ),
        Command::Asym { case, t, fit } => asym(case, t, *fit, structured),
        Command::List { what } => Ok(ok(list(*what, structured))),
    }
}

fn ok(text: String) -> Output {
    Output { text, ok: true }
}

fn check_order(order: i64) -> Result<(), Failure> {
    if order < 0 {
        return Err(usage(format!("--order must be non-negative, got {order}")));
    }
    Ok(())
}

fn load_graph(arg: &str) -> Result<GraphSeriesSpec, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| usage(format!("cannot read graph file `{arg}`: {e} (use builtin:NAME for builtins)")))?;
    Ok(parse_graph_file(&text)?)
}

fn json_text(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn ratio(c: &num_rational::BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn series_output(label: &str, s: &Series, structured: bool) -> String {
    let terms: Vec<(String, String)> = s
        .terms()
        .map(|(e, c)| (e.to_string(), ratio(c)))
        .collect();
    if structured {
        return json_text(&json!({
            "series": label,
            "order": s.order().to_string(),
            "terms": terms
                .iter()
                .map(|(e, c)| json!({"exponent": e, "coefficient": c}))
                .collect::<Vec<_>>(),
        }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "series {label}  order {}", s.order());
    let _ = writeln!(out, "{s}");
    let _ = writeln!(out, "{:>10}  coefficient", "exponent");
    for (e, c) in &terms {
        let c = c.strip_suffix("/1").unwrap_or(c);
        let _ = writeln!(out, "{e:>10}  {c}");
    }
    out
}

fn status_detail(r: &Report) -> String {
    match &r.status {
        Status::Pass => String::new(),
        Status::ResolvedVariant { selected, rejected } => {
            let mut s = format!("selected: {selected}");
            for rej in rejected {
                let _ = write!(s, "; rejected {}", rej.candidate);
                if let Some(m) = &rej.failure.mismatch {
                    let _ = write!(s, " at q^{} ({} vs {})", m.exponent, m.lhs, m.rhs);
                }
            }
            s
        }
        Status::Fail {
            failures,
            matching_candidates,
        } => {
            let mut parts: Vec<String> = failures
                .iter()
                .map(|f| match (&f.mismatch, &f.error) {
                    (Some(m), _) => format!("{}: q^{} ({} vs {})", f.case, m.exponent, m.lhs, m.rhs),
                    (None, Some(e)) => format!("{}: {e}", f.case),
                    (None, None) => f.case.clone(),
                })
                .collect();
            if !matching_candidates.is_empty() {
                parts.push(format!("matching: {}", matching_candidates.join(", ")));
            }
            parts.join("; ")
        }
    }
}

fn verify(
    identity: &str,
    tags: &[String],
    order: &str,
    report: Option<&PathBuf>,
    timings: bool,
    structured: bool,
) -> Result<Output, Failure> {
    let order = match order {
        "default" => None,
        o => {
            let n: i64 = o
                .parse()
                .map_err(|_| usage(format!("--order takes an integer or `default`, got `{o}`")))?;
            check_order(n)?;
            Some(n)
        }
    };
    let reports = if identity.eq_ignore_ascii_case("all") {
        let rs = registry::verify_all(tags, order, timings);
        if rs.is_empty() {
            return Err(usage(format!("no identity carries any of the tags {tags:?}")));
        }
        rs
    } else {
        if !tags.is_empty() {
            return Err(usage("--tag only applies to --identity all"));
        }
        let rec = registry::find(identity)?;
        registry::verify_records(&[rec], order, timings)
    };
    if let Some(path) = report {
        std::fs::write(path, json_text(&reports))
            .map_err(|e| Failure(format!("cannot write report `{}`: {e}", path.display())))?;
    }
    let all_pass = reports.iter().all(|r| r.status.is_pass());
    for r in reports.iter().filter(|r| matches!(r.status, Status::ResolvedVariant { .. })) {
        eprintln!("warning: {} resolved to a variant ({})", r.id, status_detail(r));
    }
    let text = if structured {
        json_text(&reports)
    } else {
        let mut out = String::new();
        for r in &reports {
            let _ = write!(out, "{:<16} {:<17} order {:<3} cases {:<3}", r.id, r.status.label(), r.order, r.cases);
            if let Some(ms) = r.wall_ms {
                let _ = write!(out, " {ms:>9.1} ms");
            }
            let detail = status_detail(r);
            if !detail.is_empty() {
                let _ = write!(out, "  {detail}");
            }
            out.push('\n');
        }
        let passed = reports.iter().filter(|r| r.status.is_pass()).count();
        let _ = writeln!(out, "{passed}/{} passed", reports.len());
        out
    };
    Ok(Output { text, ok: all_pass })
}

fn parse_relations(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let bad = || usage(format!("relation `{s}` should look like `1*2`"));
            let (i, j) = s.split_once('*').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if i == 0 || j == 0 {
                return Err(bad());
            }
            Ok((i - 1, j - 1))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn jets_cmd(
    graph: Option<&str>,
    vars: Option<usize>,
    relations: Option<&str>,
    max_degree: usize,
    mode: Mode,
    compare: bool,
    seed: u64,
    structured: bool,
) -> Result<Output, Failure> {
    let spec = graph.map(load_graph).transpose()?;
    let (pres, label) = match (&spec, vars, relations) {
        (Some(s), _, _) => (JetPresentation::from_graph(&s.graph, max_degree)?, graph.unwrap_or_default().to_string()),
        (None, Some(v), Some(r)) => (JetPresentation::new(v, &parse_relations(r)?, max_degree)?, format!("{v} vars: {r}")),
        _ => return Err(usage("give --graph, or --vars with --relations")),
    };
    if compare {
        let g = &spec.as_ref().expect("clap enforces --graph").graph;
        let cmp = jets::compare_with_graph_series(g, max_degree, mode, seed)?;
        let text = if structured {
            json_text(&json!({
                "presentation": label,
                "table": cmp.table,
                "graph_coefficients": cmp.graph_coeffs,
                "mismatch": cmp.mismatch,
                "verdict": if cmp.matches() { "match" } else { "mismatch" },
            }))
        } else {
            let mut out = format!("{label}  mode {}\n", mode_name(cmp.table.certification));
            let _ = writeln!(out, "{:>6}  {:>10}  {:>10}", "degree", "jet", "graph");
            for (d, (j, g)) in cmp.table.dims.iter().zip(&cmp.graph_coeffs).enumerate() {
                let _ = writeln!(out, "{d:>6}  {j:>10}  {g:>10}");
            }
            match &cmp.mismatch {
                None => out.push_str("verdict: match\n"),
                Some(m) => {
                    let _ = writeln!(out, "verdict: mismatch at degree {} ({} vs {})", m.degree, m.jet, m.graph);
                }
            }
            out
        };
        return Ok(Output {
            text,
            ok: cmp.matches(),
        });
    }
    let table = jets::hilbert_series(&pres, mode, seed)?;
    let text = if structured {
        json_text(&json!({"presentation": label, "table": table}))
    } else {
        let mut out = format!("{label}  mode {}\n", mode_name(table.certification));
        if !table.primes.is_empty() {
            let ps: Vec<String> = table.primes.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "primes {}", ps.join(", "));
        }
        let _ = writeln!(out, "{:>6}  {:>10}", "degree", "dim");
        for (d, v) in table.dims.iter().enumerate() {
            let _ = writeln!(out, "{d:>6}  {v:>10}");
        }
        out
    };
    Ok(ok(text))
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::SinglePrime => "single-prime",
        Mode::DualPrime => "dual-prime",
        Mode::ExactRational => "exact",
    }
}

/// Decimal with 15 significant digits.
fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        return format!("{x:.14e}");
    }
    let decimals = (14 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn asym(case: &str, grid: &[f64], fit: bool, structured: bool) -> Result<Output, Failure> {
    let cases: Vec<AsymptoticCase> = if case.eq_ignore_ascii_case("all") {
        AsymptoticCase::ALL.to_vec()
    } else {
        case.split(',')
            .map(|c| c.parse::<AsymptoticCase>())
            .collect::<Result<_, _>>()?
    };
    let mut reports = Vec::new();
    let mut fits = Vec::new();
    for c in &cases {
        reports.push(asymptotics::check_case(*c, grid)?);
        if fit {
            fits.push(asymptotics::fit_case(*c, grid)?);
        }
    }
    let all_pass = reports.iter().all(|r| r.verdict == Verdict::Pass);
    let text = if structured {
        let items: Vec<_> = reports
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = json!({
                    "case": r.case,
                    "prefactor": r.prefactor,
                    "model": r.model.to_string(),
                    "rows": r.rows.iter().map(|row| json!({
                        "t": sig15(row.t),
                        "value": sig15(row.value),
                        "residual": sig15(row.residual),
                        "ratio": row.ratio.map(sig15),
                    })).collect::<Vec<_>>(),
                    "verdict": r.verdict.to_string(),
                });
                if let Some(f) = fits.get(i) {
                    v["fit"] = json!({
                        "form": f.form,
                        "constants": f.constants.iter().map(|(n, c)| json!({"name": n, "value": sig15(*c)})).collect::<Vec<_>>(),
                    });
                }
                v
            })
            .collect();
        json_text(&items)
    } else {
        let mut out = String::new();
        for (i, r) in reports.iter().enumerate() {
            let _ = writeln!(out, "{}  (q)_inf^{} H  ~  {}", r.case, r.prefactor, r.model);
            let _ = writeln!(out, "{:>8}  {:>22}  {:>22}  {:>18}", "t", "value", "residual", "ratio");
            for row in &r.rows {
                let ratio = row.ratio.map(sig15).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    out,
                    "{:>8}  {:>22}  {:>22}  {:>18}",
                    row.t,
                    sig15(row.value),
                    sig15(row.residual),
                    ratio
                );
            }
            let _ = writeln!(out, "verdict: {}", r.verdict);
            if let Some(f) = fits.get(i) {
                let cs: Vec<String> = f.constants.iter().map(|(n, c)| format!("{n} = {}", sig15(*c))).collect();
                let _ = writeln!(out, "fit {}: {}", f.form, cs.join(", "));
            }
            out.push('\n');
        }
        out
    };
    Ok(Output { text, ok: all_pass })
}

fn list(what: ListWhat, structured: bool) -> String {
    match what {
        ListWhat::Identities => {
            let items = registry::list_identities();
            if structured {
                return json_text(&items);
            }
            let mut out = String::new();
            for i in items {
                let _ = writeln!(out, "{:<16} order {:<3} [{}]  {}", i.id, i.default_order, i.tags.join(", "), i.claim);
            }
            out
        }
        ListWhat::Graphs => {
            let names = builtin_names();
            if structured {
                return json_text(&names);
            }
            let mut out = String::new();
            for n in names {
                let _ = writeln!(out, "builtin:{n}");
            }
            out.push_str("builtin:A<k>, builtin:C<k>, builtin:X<l> for other sizes\n");
            out
        }
        ListWhat::Series => {
            let items: Vec<_> = catalog::CATALOG
                .iter()
                .map(|e| json!({"name": e.name, "description": e.description}))
                .collect();
            if structured {
                return json_text(&items);
            }
            let mut out = String::new();
            for e in catalog::CATALOG {
                let _ = writeln!(out, "{:<8} {}", e.name, e.description);
            }
            out.push_str("A(a,b)   two-node framing closed form\n");
            out
        }
    }
}
