//! Command line front end: analyze single graphs, search the pattern
//! catalog, run the structural coloring, and batch-verify the library's
//! theorems over exhaustive enumerations.
//!
//! Exit codes: 0 success, 2 a verified statement failed, 3 the open-problem
//! hunt found a candidate, 64 usage error, 65 unreadable or invalid input.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chibound::catalog::Catalog;
use chibound::codec;
use chibound::coloring::{self, Step};
use chibound::divisibility;
use chibound::harness::{self, GraphClass, VerificationReport, VerifyOptions};
use chibound::patterns::{self, PatternId, PatternWitness};
use chibound::perfection;
use chibound::simplicial;
use chibound::{Error, Graph};

const EXIT_OK: i32 = 0;
const EXIT_VIOLATION: i32 = 2;
const EXIT_OPEN_PROBLEM: i32 = 3;
const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;

#[derive(Parser)]
#[command(
    name = "chibound",
    version,
    about = "Structural analysis of fork-free graphs and their chromatic bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clique number, chromatic number, perfection, perfect divisibility,
    /// and the trisimplicial vertices of each input graph
    Analyze(GraphArgs),
    /// List induced occurrences of the built-in pattern catalog
    Patterns(GraphArgs),
    /// Color a graph through the structural recursion and print the log
    Color(GraphArgs),
    /// Check one theorem (or all) against every graph up to an order
    Verify(VerifyArgs),
    /// Scan fork-free graphs for one that is neither perfectly divisible
    /// nor equipped with a trisimplicial vertex
    Hunt(ScanArgs),
    /// Tabulate the largest chromatic number per clique number in a class
    Table(TableArgs),
    /// Re-encode graphs between graph6, edge lists, JSON, and DOT
    Convert(GraphArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    /// Fork-free and odd-parachute-free graphs that are not perfectly
    /// divisible have a trisimplicial vertex
    Main,
    /// Claw-free graphs that are not perfectly divisible have a
    /// trisimplicial vertex
    Claw,
    /// Fork-free and odd-parachute-free graphs satisfy
    /// chi <= omega(omega + 1) / 2
    ChiBound,
    /// Fork-free and odd-balloon-free graphs are perfectly divisible
    Balloon,
    /// Fork-free and odd-parachute-free graphs with omega <= 3 and no
    /// trisimplicial vertex are perfectly divisible
    W3,
    /// Every theorem above, in that order
    All,
}

#[derive(Args)]
struct GraphArgs {
    /// Inline graph6 or sparse6 text for a single graph
    #[arg(value_name = "GRAPH6")]
    graph: Option<String>,
    /// File of graph6 lines or a numeric edge list; - reads stdin
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    /// Largest order to enumerate; ignored when --input is given
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=10))]
    n: u8,
    /// Scan worker threads; 0 uses the default pool, 1 is sequential
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Verify these graphs instead of an enumeration
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Largest order to enumerate; ignored when --input is given
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=10))]
    n: u8,
    /// Scan worker threads; 0 uses the default pool, 1 is sequential
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Scan these graphs instead of an enumeration
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Graph class to restrict to, e.g. 3p1-free or fork-free
    #[arg(long, value_parser = parse_class)]
    class: GraphClass,
    /// Largest order to enumerate; ignored when --input is given
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=10))]
    n: u8,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse().map_err(|err: Error| err.to_string())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Patterns(args) => cmd_patterns(&args),
        Command::Color(args) => cmd_color(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Hunt(args) => cmd_hunt(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Convert(args) => cmd_convert(&args),
    };
    std::process::exit(code);
}

// ---------------------------------------------------------------- input

fn read_source(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
    }
}

/// Decide between the two file formats: an edge list opens with a bare
/// vertex count, which no graph6 or sparse6 line can start with.
fn parse_graph_text(text: &str) -> chibound::Result<Vec<Graph>> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with(">>"));
    match first {
        Some(line) if line.chars().all(|c| c.is_ascii_digit()) => {
            Ok(vec![codec::from_edge_list_text(text)?])
        }
        _ => harness::ingest_graph6_text(text),
    }
}

fn load_graphs(args: &GraphArgs) -> Result<Vec<Graph>, i32> {
    match (&args.graph, &args.input) {
        (Some(_), Some(_)) => {
            eprintln!("error: give either an inline graph or --input, not both");
            Err(EXIT_USAGE)
        }
        (None, None) => {
            eprintln!("error: no input; pass a graph6 string or --input FILE (- for stdin)");
            Err(EXIT_USAGE)
        }
        (Some(line), None) => match codec::from_g6_line(line.trim()) {
            Ok(g) => Ok(vec![g]),
            Err(err) => {
                eprintln!("error: {err}");
                Err(EXIT_DATA)
            }
        },
        (None, Some(path)) => {
            let text = match read_source(path) {
                Ok(text) => text,
                Err(err) => {
                    eprintln!("error: {path}: {err}");
                    return Err(EXIT_DATA);
                }
            };
            match parse_graph_text(&text) {
                Ok(graphs) if graphs.is_empty() => {
                    eprintln!("error: {path}: no graphs found");
                    Err(EXIT_DATA)
                }
                Ok(graphs) => Ok(graphs),
                Err(err) => {
                    eprintln!("error: {err}");
                    Err(EXIT_DATA)
                }
            }
        }
    }
}

fn load_input_file(path: &str) -> Result<Vec<Graph>, i32> {
    let text = match read_source(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: {path}: {err}");
            return Err(EXIT_DATA);
        }
    };
    match parse_graph_text(&text) {
        Ok(graphs) => Ok(graphs),
        Err(err) => {
            eprintln!("error: {err}");
            Err(EXIT_DATA)
        }
    }
}

// --------------------------------------------------------------- output

fn emit(out: &Option<PathBuf>, content: &str) -> i32 {
    match out {
        None => {
            print!("{content}");
            if !content.is_empty() && !content.ends_with('\n') {
                println!();
            }
            EXIT_OK
        }
        Some(path) => match fs::write(path, content) {
            Ok(()) => EXIT_OK,
            Err(err) => {
                eprintln!("error: {}: {err}", path.display());
                EXIT_DATA
            }
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

fn fmt_verts(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", inner.join(","))
}

fn reject_dot(format: Format) -> Option<i32> {
    if format == Format::Dot {
        eprintln!("error: dot output is not available for this subcommand");
        Some(EXIT_USAGE)
    } else {
        None
    }
}

// -------------------------------------------------------------- analyze

#[derive(Serialize)]
struct AnalyzeRecord {
    graph6: String,
    n: usize,
    m: usize,
    omega: usize,
    omega_witness: Vec<usize>,
    chi: usize,
    perfect: bool,
    odd_hole: Option<Vec<usize>>,
    odd_antihole: Option<Vec<usize>>,
    /// None when the graph is too large for the exact divisibility check.
    perfectly_divisible: Option<bool>,
    trisimplicial: Vec<usize>,
}

fn analyze_graph(g: &Graph, catalog: &mut Catalog) -> chibound::Result<AnalyzeRecord> {
    let (omega, witness) = perfection::clique_number(g);
    let (chi, _) = perfection::chromatic_number(g);
    let odd_hole = patterns::find_odd_hole(g);
    let odd_antihole = patterns::find_odd_antihole(g);
    let perfectly_divisible = if g.n() <= divisibility::MAX_DIVISIBILITY_VERTICES {
        Some(divisibility::is_perfectly_divisible(g, catalog)?)
    } else {
        None
    };
    let mut trisimplicial = Vec::new();
    for v in g.vertices() {
        if simplicial::is_k_simplicial(g, v, 3)? {
            trisimplicial.push(v);
        }
    }
    Ok(AnalyzeRecord {
        graph6: codec::to_graph6(g),
        n: g.n(),
        m: g.edge_count(),
        omega,
        omega_witness: witness.to_vec(),
        chi,
        perfect: odd_hole.is_none() && odd_antihole.is_none(),
        odd_hole,
        odd_antihole,
        perfectly_divisible,
        trisimplicial,
    })
}

fn analyze_text(records: &[AnalyzeRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let perfect = if r.perfect { "perfect" } else { "imperfect" };
        let divisible = match r.perfectly_divisible {
            Some(true) => "perfectly-divisible",
            Some(false) => "not-perfectly-divisible",
            None => "divisibility-unchecked",
        };
        out.push_str(&format!(
            "{}: n={} m={} omega={} chi={} {} {} trisimplicial={}\n",
            r.graph6,
            r.n,
            r.m,
            r.omega,
            r.chi,
            perfect,
            divisible,
            fmt_verts(&r.trisimplicial)
        ));
        if let Some(hole) = &r.odd_hole {
            out.push_str(&format!("  odd-hole={}\n", fmt_verts(hole)));
        }
        if let Some(anti) = &r.odd_antihole {
            out.push_str(&format!("  odd-antihole={}\n", fmt_verts(anti)));
        }
    }
    out
}

fn analyze_csv(records: &[AnalyzeRecord]) -> String {
    let mut out = String::from("graph6,n,m,omega,chi,perfect,perfectly_divisible,trisimplicial\n");
    for r in records {
        let divisible = match r.perfectly_divisible {
            Some(v) => v.to_string(),
            None => String::new(),
        };
        let tri: Vec<String> = r.trisimplicial.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.graph6,
            r.n,
            r.m,
            r.omega,
            r.chi,
            r.perfect,
            divisible,
            tri.join(" ")
        ));
    }
    out
}

fn cmd_analyze(args: &GraphArgs) -> i32 {
    let graphs = match load_graphs(args) {
        Ok(graphs) => graphs,
        Err(code) => return code,
    };
    let mut catalog = Catalog::new();
    let mut records = Vec::new();
    for g in &graphs {
        match analyze_graph(g, &mut catalog) {
            Ok(record) => records.push(record),
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_DATA;
            }
        }
    }
    let content = match args.format {
        Format::Text => analyze_text(&records),
        Format::Json => to_json(&records),
        Format::Csv => analyze_csv(&records),
        Format::Dot => {
            let mut out = String::new();
            for (i, (g, r)) in graphs.iter().zip(&records).enumerate() {
                let mut highlight = BTreeMap::new();
                for &v in &r.trisimplicial {
                    highlight.insert(v, String::from("trisimplicial"));
                }
                out.push_str(&codec::to_dot(g, &format!("g{i}"), &highlight));
            }
            out
        }
    };
    emit(&args.out, &content)
}

// ------------------------------------------------------------- patterns

#[derive(Serialize)]
struct PatternsRecord {
    graph6: String,
    found: Vec<PatternWitness>,
}

/// Everything worth searching in an n-vertex host: the fixed shapes, the
/// odd selectors, and each parameterized family size that can fit.
fn pattern_menu(n: usize) -> Vec<PatternId> {
    let mut ids = vec![
        PatternId::Claw,
        PatternId::Fork,
        PatternId::Paw,
        PatternId::CoDart,
        PatternId::Bull,
        PatternId::Gem,
        PatternId::Dart,
        PatternId::ThreeP1,
        PatternId::OddHole,
        PatternId::OddAntihole,
        PatternId::OddBalloon,
        PatternId::OddParachute,
    ];
    for i in 4..n {
        ids.push(PatternId::Wheel(i));
    }
    for i in 4..=n.saturating_sub(2) {
        ids.push(PatternId::Balloon(i));
        ids.push(PatternId::Parachute(i));
    }
    ids
}

fn patterns_text(records: &[PatternsRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!("{}:\n", r.graph6));
        if r.found.is_empty() {
            out.push_str("  (no catalog patterns found)\n");
            continue;
        }
        for w in &r.found {
            let roles: Vec<String> = w
                .roles
                .iter()
                .map(|(name, verts)| format!("{}={}", name, fmt_verts(verts)))
                .collect();
            out.push_str(&format!(
                "  {}: vertices={} {}\n",
                w.pattern,
                fmt_verts(&w.vertices),
                roles.join(" ")
            ));
        }
    }
    out
}

fn patterns_csv(records: &[PatternsRecord]) -> String {
    let mut out = String::from("graph6,pattern,vertices\n");
    for r in records {
        for w in &r.found {
            let verts: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", r.graph6, w.pattern, verts.join(" ")));
        }
    }
    out
}

fn cmd_patterns(args: &GraphArgs) -> i32 {
    let graphs = match load_graphs(args) {
        Ok(graphs) => graphs,
        Err(code) => return code,
    };
    let mut records = Vec::new();
    for g in &graphs {
        let mut found = Vec::new();
        for id in pattern_menu(g.n()) {
            match patterns::find_induced(g, id) {
                Ok(Some(witness)) => found.push(witness),
                Ok(None) => {}
                Err(err) => {
                    eprintln!("error: {err}");
                    return EXIT_DATA;
                }
            }
        }
        records.push(PatternsRecord {
            graph6: codec::to_graph6(g),
            found,
        });
    }
    let content = match args.format {
        Format::Text => patterns_text(&records),
        Format::Json => to_json(&records),
        Format::Csv => patterns_csv(&records),
        Format::Dot => {
            let mut out = String::new();
            for (i, (g, r)) in graphs.iter().zip(&records).enumerate() {
                let mut highlight = BTreeMap::new();
                if let Some(w) = r.found.first() {
                    for (name, verts) in &w.roles {
                        for &v in verts {
                            highlight.insert(v, name.clone());
                        }
                    }
                }
                out.push_str(&codec::to_dot(g, &format!("g{i}"), &highlight));
            }
            out
        }
    };
    emit(&args.out, &content)
}

// ---------------------------------------------------------------- color

#[derive(Serialize)]
struct ColorRecord {
    graph6: String,
    omega: usize,
    bound: usize,
    chi: usize,
    trace: coloring::ColoringTrace,
}

fn step_text(step: &Step) -> String {
    match step {
        Step::BaseCase => String::from("base-case"),
        Step::PerfectDivision { a, b } => format!(
            "perfect-division(a={},b={})",
            fmt_verts(&a.to_vec()),
            fmt_verts(&b.to_vec())
        ),
        Step::TrisimplicialElimination { vertex } => format!("eliminate({vertex})"),
    }
}

fn color_text(records: &[ColorRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!(
            "{}: palette={} chi={} omega={} bound={}\n",
            r.graph6, r.trace.coloring.palette, r.chi, r.omega, r.bound
        ));
        let steps: Vec<String> = r.trace.steps.iter().map(step_text).collect();
        out.push_str(&format!("  steps: {}\n", steps.join(" -> ")));
        out.push_str(&format!("  colors={}\n", fmt_verts(&r.trace.coloring.colors)));
    }
    out
}

fn color_csv(records: &[ColorRecord]) -> String {
    let mut out = String::from("graph6,vertex,color\n");
    for r in records {
        for (v, c) in r.trace.coloring.colors.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", r.graph6, v, c));
        }
    }
    out
}

fn cmd_color(args: &GraphArgs) -> i32 {
    let graphs = match load_graphs(args) {
        Ok(graphs) => graphs,
        Err(code) => return code,
    };
    let mut records = Vec::new();
    for g in &graphs {
        let trace = match coloring::color_structurally(g) {
            Ok(trace) => trace,
            Err(err @ Error::Counterexample { .. }) => {
                eprintln!("error: {err}");
                return EXIT_VIOLATION;
            }
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_DATA;
            }
        };
        let (omega, _) = perfection::clique_number(g);
        let (chi, _) = perfection::chromatic_number(g);
        records.push(ColorRecord {
            graph6: codec::to_graph6(g),
            omega,
            bound: coloring::binom_bound(omega),
            chi,
            trace,
        });
    }
    let content = match args.format {
        Format::Text => color_text(&records),
        Format::Json => to_json(&records),
        Format::Csv => color_csv(&records),
        Format::Dot => {
            let mut out = String::new();
            for (i, (g, r)) in graphs.iter().zip(&records).enumerate() {
                let mut highlight = BTreeMap::new();
                for (v, c) in r.trace.coloring.colors.iter().enumerate() {
                    highlight.insert(v, format!("c{c}"));
                }
                out.push_str(&codec::to_dot(g, &format!("g{i}"), &highlight));
            }
            out
        }
    };
    emit(&args.out, &content)
}

// --------------------------------------------------------------- verify

fn report_text(report: &VerificationReport) -> String {
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let mut out = format!(
        "theorem={} n={}..{} {} violations={} seconds={:.3}\n",
        report.theorem,
        report.n_range[0],
        report.n_range[1],
        verdict,
        report.violations.len(),
        report.seconds
    );
    for c in &report.counts {
        let vacuous = report
            .vacuous_per_n
            .iter()
            .find(|(n, _)| *n == c.n)
            .map(|(_, v)| *v)
            .unwrap_or(false);
        out.push_str(&format!(
            "  n={} scanned={} class={} hypothesis={}{}\n",
            c.n,
            c.scanned,
            c.class_members,
            c.hypothesis_members,
            if vacuous { " vacuous" } else { "" }
        ));
    }
    for v in &report.violations {
        out.push_str(&format!("  violation {}: {}\n", v.graph6, v.detail));
    }
    out
}

fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("theorem,n,scanned,class_members,hypothesis_members,vacuous\n");
    for report in reports {
        for c in &report.counts {
            let vacuous = report
                .vacuous_per_n
                .iter()
                .find(|(n, _)| *n == c.n)
                .map(|(_, v)| *v)
                .unwrap_or(false);
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                report.theorem, c.n, c.scanned, c.class_members, c.hypothesis_members, vacuous
            ));
        }
    }
    out
}

fn call_theorem(
    theorem: Theorem,
    graphs: &[Graph],
    opts: &VerifyOptions,
) -> chibound::Result<VerificationReport> {
    match theorem {
        Theorem::Main => harness::verify_main_theorem(graphs, opts),
        Theorem::Claw => harness::verify_claw_corollary(graphs, opts),
        Theorem::ChiBound => harness::verify_chi_bound(graphs, opts),
        Theorem::Balloon => harness::verify_balloon_theorem(graphs, opts),
        Theorem::W3 => harness::verify_w3_theorem(graphs, opts),
        Theorem::All => unreachable!("expanded by the caller"),
    }
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    if let Some(code) = reject_dot(args.format) {
        return code;
    }
    let opts = VerifyOptions {
        workers: args.workers,
        ..VerifyOptions::default()
    };
    let theorems = match args.theorem {
        Theorem::All => vec![
            Theorem::Main,
            Theorem::Claw,
            Theorem::ChiBound,
            Theorem::Balloon,
            Theorem::W3,
        ],
        t => vec![t],
    };
    let input_graphs = match &args.input {
        Some(path) => match load_input_file(path) {
            Ok(graphs) => Some(graphs),
            Err(code) => return code,
        },
        None => None,
    };
    let max_n = usize::from(args.n);
    let mut full: Option<Vec<Graph>> = None;
    let mut reports = Vec::new();
    for theorem in theorems {
        // The balloon statement quantifies over its own class, so its
        // enumeration is pruned to class members; everything else scans
        // the unrestricted enumeration.
        let graphs = if let Some(graphs) = &input_graphs {
            graphs.clone()
        } else if matches!(theorem, Theorem::Balloon) {
            match harness::enumerate_class_up_to(GraphClass::ForkOddBalloonFree, max_n) {
                Ok(tiers) => harness::all_graphs(&tiers),
                Err(err) => {
                    eprintln!("error: {err}");
                    return EXIT_DATA;
                }
            }
        } else {
            if full.is_none() {
                match harness::enumerate_up_to(max_n) {
                    Ok(tiers) => full = Some(harness::all_graphs(&tiers)),
                    Err(err) => {
                        eprintln!("error: {err}");
                        return EXIT_DATA;
                    }
                }
            }
            full.clone().expect("cached enumeration")
        };
        match call_theorem(theorem, &graphs, &opts) {
            Ok(report) => reports.push(report),
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_DATA;
            }
        }
    }
    let content = match args.format {
        Format::Text => reports.iter().map(report_text).collect::<String>(),
        Format::Json => {
            if reports.len() == 1 {
                to_json(&reports[0])
            } else {
                to_json(&reports)
            }
        }
        Format::Csv => reports_csv(&reports),
        Format::Dot => unreachable!("rejected above"),
    };
    let code = emit(&args.out, &content);
    if code != EXIT_OK {
        return code;
    }
    if reports.iter().all(VerificationReport::passed) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

// ----------------------------------------------------------------- hunt

#[derive(Serialize)]
struct HuntRecord {
    report: VerificationReport,
    /// Per violation: did a fresh check confirm all three conditions?
    revalidated: Vec<bool>,
}

fn revalidate_hunt_hit(g: &Graph) -> chibound::Result<bool> {
    let fork_free = patterns::is_free(g, &[PatternId::Fork])?;
    let mut catalog = Catalog::new();
    let divisible = divisibility::is_perfectly_divisible(g, &mut catalog)?;
    let trisimplicial = simplicial::find_trisimplicial(g).is_some();
    Ok(fork_free && !divisible && !trisimplicial)
}

fn cmd_hunt(args: &ScanArgs) -> i32 {
    if let Some(code) = reject_dot(args.format) {
        return code;
    }
    let opts = VerifyOptions {
        workers: args.workers,
        ..VerifyOptions::default()
    };
    let graphs = match &args.input {
        Some(path) => match load_input_file(path) {
            Ok(graphs) => graphs,
            Err(code) => return code,
        },
        None => match harness::enumerate_class_up_to(GraphClass::ForkFree, usize::from(args.n)) {
            Ok(tiers) => harness::all_graphs(&tiers),
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_DATA;
            }
        },
    };
    let report = match harness::hunt_counterexample(&graphs, &opts) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_DATA;
        }
    };
    let mut revalidated = Vec::new();
    for v in &report.violations {
        let confirmed = codec::from_g6_line(&v.graph6)
            .and_then(|g| revalidate_hunt_hit(&g))
            .unwrap_or(false);
        revalidated.push(confirmed);
    }
    let record = HuntRecord {
        report,
        revalidated,
    };
    let content = match args.format {
        Format::Text => {
            let mut out = report_text(&record.report);
            if record.report.passed() {
                out.push_str(&format!(
                    "no counterexample below {} vertices\n",
                    record.report.n_range[1] + 1
                ));
            } else {
                for (v, ok) in record.report.violations.iter().zip(&record.revalidated) {
                    out.push_str(&format!(
                        "candidate {} revalidated={}\n",
                        v.graph6,
                        if *ok { "yes" } else { "no" }
                    ));
                }
            }
            out
        }
        Format::Json => to_json(&record),
        Format::Csv => reports_csv(std::slice::from_ref(&record.report)),
        Format::Dot => unreachable!("rejected above"),
    };
    let code = emit(&args.out, &content);
    if code != EXIT_OK {
        return code;
    }
    if record.report.passed() {
        EXIT_OK
    } else {
        EXIT_OPEN_PROBLEM
    }
}

// ---------------------------------------------------------------- table

fn cmd_table(args: &TableArgs) -> i32 {
    if let Some(code) = reject_dot(args.format) {
        return code;
    }
    let graphs = match &args.input {
        Some(path) => match load_input_file(path) {
            Ok(graphs) => graphs,
            Err(code) => return code,
        },
        None => match harness::enumerate_up_to(usize::from(args.n)) {
            Ok(tiers) => harness::all_graphs(&tiers),
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_DATA;
            }
        },
    };
    let table = match harness::chi_binding_table(&graphs, args.class, args.workers) {
        Ok(table) => table,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_DATA;
        }
    };
    let content = match args.format {
        Format::Text => {
            let mut out = format!("class={}\n", table.class);
            out.push_str("omega  max_chi  graphs\n");
            for row in &table.rows {
                out.push_str(&format!(
                    "{:<5}  {:<7}  {}\n",
                    row.omega, row.max_chi, row.graphs
                ));
            }
            out
        }
        Format::Json => to_json(&table),
        Format::Csv => table.to_csv(),
        Format::Dot => unreachable!("rejected above"),
    };
    emit(&args.out, &content)
}

// -------------------------------------------------------------- convert

#[derive(Serialize)]
struct ConvertRecord {
    graph6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn cmd_convert(args: &GraphArgs) -> i32 {
    let graphs = match load_graphs(args) {
        Ok(graphs) => graphs,
        Err(code) => return code,
    };
    let content = match args.format {
        Format::Text => {
            // graph6 is the compact single-line interchange form, so
            // "convert to text" normalizes everything to it.
            let mut out = String::new();
            for g in &graphs {
                out.push_str(&codec::to_graph6(g));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<ConvertRecord> = graphs
                .iter()
                .map(|g| ConvertRecord {
                    graph6: codec::to_graph6(g),
                    n: g.n(),
                    edges: g.edges(),
                })
                .collect();
            to_json(&records)
        }
        Format::Csv => {
            let mut out = String::from("graph,u,v\n");
            for (i, g) in graphs.iter().enumerate() {
                for (u, v) in g.edges() {
                    out.push_str(&format!("{i},{u},{v}\n"));
                }
            }
            out
        }
        Format::Dot => {
            let empty = BTreeMap::new();
            let mut out = String::new();
            for (i, g) in graphs.iter().enumerate() {
                out.push_str(&codec::to_dot(g, &format!("g{i}"), &empty));
            }
            out
        }
    };
    emit(&args.out, &content)
}
