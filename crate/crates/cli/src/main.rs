//! `madkit`: exact maximum average degree, densest subgraphs, and
//! mad-lowering vertex decompositions over edge-list files.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 verification
//! failure (a bug trap; decompositions are proven correct), 3 size-guard
//! violation on the exhaustive commands.

use clap::{Parser, Subcommand};
use madkit_cli::document::{FindingRecord, GraphStats, LevelDoc, ResultDocument, SCHEMA_VERSION};
use madkit_cli::edgelist::{parse_edge_list, write_edge_list, LabeledGraph};
use madkit_cli::gen;
use madkit_core::{
    brute_force_mad, conjecture_search, decompose_by_k, mad_exact, verify_vertex_set,
    ConjectureOutcome, Rational, VertexSet,
};
use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

const EXIT_USAGE: i32 = 1;
const EXIT_VERIFICATION: i32 = 2;
const EXIT_GUARD: i32 = 3;

#[derive(Parser)]
#[command(name = "madkit", version, about = "Exact maximum average degree toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact mad of an edge-list graph as p/q (or -inf)
    Mad { file: PathBuf },
    /// Print the exact mad and a maximum-density vertex set
    Densest { file: PathBuf },
    /// Remove S with G[S] (k-1)-degenerate and mad(G - S) <= mad(G) - k
    Decompose {
        file: PathBuf,
        /// Decomposition level: how much mad must drop
        #[arg(long)]
        k: usize,
        /// Apply the decomposition repeatedly to the remainder
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// Write the result document to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// k = 1 decomposition: S is an independent set
    IndependentSet {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// k = 2 decomposition: G[S] is a forest
    Forest {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Brute-force mad by subset enumeration (at most 20 vertices)
    Oracle { file: PathBuf },
    /// Exhaustive search for a bipartition with mad(G[A]) < c1 and
    /// mad(G[B]) < c2 (at most 16 vertices)
    Conjecture {
        file: PathBuf,
        /// Threshold for side A, as p/q
        #[arg(long)]
        c1: String,
        /// Threshold for side B, as p/q
        #[arg(long)]
        c2: String,
        /// Findings file receiving one JSON record per counterexample
        #[arg(long, default_value = "madkit-findings.jsonl")]
        findings: PathBuf,
    },
    /// Re-check an externally supplied vertex set against the k contract
    Verify {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// File of whitespace-separated vertex labels
        #[arg(long)]
        set: PathBuf,
    },
    /// Write a generated edge list to stdout
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run decompose + verify over a directory of edge lists into a CSV
    Batch {
        dir: PathBuf,
        /// Comma-separated k values, or "auto" for 1..=floor(mad)
        #[arg(long)]
        k: String,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniform random graph with exactly M edges
    Gnm {
        n: usize,
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cycle on N vertices
    Cycle { n: usize },
    /// Complete graph on N vertices
    Complete { n: usize },
    /// Grid graph on ROWS x COLS vertices
    Grid { rows: usize, cols: usize },
    /// Random recursive tree on N vertices
    Tree {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_VERIFICATION,
            message: message.into(),
        }
    }
}

impl From<madkit_core::Error> for CliError {
    fn from(e: madkit_core::Error) -> CliError {
        let code = match e {
            madkit_core::Error::SizeGuard(_) => EXIT_GUARD,
            madkit_core::Error::ContractViolation(_) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli.command) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Mad { file } => cmd_mad(&file),
        Command::Densest { file } => cmd_densest(&file),
        Command::Decompose {
            file,
            k,
            levels,
            json,
        } => cmd_decompose("decompose", &file, k, levels, json.as_deref()),
        Command::IndependentSet { file, json } => {
            cmd_decompose("independent-set", &file, 1, 1, json.as_deref())
        }
        Command::Forest { file, json } => cmd_decompose("forest", &file, 2, 1, json.as_deref()),
        Command::Oracle { file } => cmd_oracle(&file),
        Command::Conjecture {
            file,
            c1,
            c2,
            findings,
        } => cmd_conjecture(&file, &c1, &c2, &findings),
        Command::Verify { file, k, set } => cmd_verify(&file, k, &set),
        Command::Gen { kind } => cmd_gen(kind),
        Command::Batch { dir, k, out } => cmd_batch(&dir, &k, &out),
    }
}

fn load_graph(path: &Path) -> Result<LabeledGraph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn cmd_mad(file: &Path) -> CliResult {
    let lg = load_graph(file)?;
    println!("{}", mad_exact(&lg.graph)?.value);
    Ok(())
}

fn cmd_densest(file: &Path) -> CliResult {
    let lg = load_graph(file)?;
    if lg.graph.edge_count() == 0 {
        return Err(CliError::usage(
            "graph has no edges; no positive-density subgraph exists",
        ));
    }
    let result = mad_exact(&lg.graph)?;
    println!("{}", result.value);
    println!("{}", lg.sorted_labels(&result.witness).join(" "));
    Ok(())
}

fn cmd_decompose(
    operation: &str,
    file: &Path,
    k: usize,
    levels: usize,
    json: Option<&Path>,
) -> CliResult {
    if k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    if levels == 0 {
        return Err(CliError::usage("--levels must be at least 1"));
    }
    let start = Instant::now();
    let lg = load_graph(file)?;
    let stats = GraphStats::compute(&lg.graph)?;
    println!(
        "graph: n={} m={} mad={} degeneracy={}",
        stats.n, stats.m, stats.mad, stats.degeneracy
    );
    let mut doc = ResultDocument::new(operation, &file.display().to_string(), stats);
    doc.k = Some(k);

    let mut current = lg.graph.clone();
    let mut to_original: Vec<usize> = (0..current.vertex_count()).collect();
    let mut all_passed = true;
    for level in 1..=levels {
        let d = decompose_by_k(&current, k)?;
        let report = d.report.as_ref().expect("pipeline attaches a report");
        let set_labels = {
            let mut labels: Vec<String> = d
                .set
                .iter()
                .map(|v| lg.labels[to_original[v]].clone())
                .collect();
            labels.sort();
            labels
        };
        let (remainder, rem_map) = current.without_vertices(&d.set)?;
        let rem_original: Vec<usize> = rem_map.iter().map(|&v| to_original[v]).collect();
        let rem_labels = {
            let mut labels: Vec<String> =
                rem_original.iter().map(|&v| lg.labels[v].clone()).collect();
            labels.sort();
            labels
        };
        println!(
            "level {level}: |S|={} remainder={} mad(G-S)={} verification={}",
            d.set.len(),
            remainder.vertex_count(),
            report.mad_remainder,
            if report.passed() { "PASS" } else { "FAIL" }
        );
        println!("  S: {}", set_labels.join(" "));
        println!("  remainder: {}", rem_labels.join(" "));
        if !report.passed() {
            all_passed = false;
            for failure in &report.failures {
                eprintln!("  verification failure: {failure}");
            }
        }
        doc.levels.push(LevelDoc {
            level,
            k,
            set: set_labels,
            remainder: rem_labels,
            report: report.into(),
        });
        current = remainder;
        to_original = rem_original;
    }
    doc.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Some(path) = json {
        fs::write(path, doc.to_json())?;
    }
    if !all_passed {
        return Err(CliError::verification("decomposition verification failed"));
    }
    Ok(())
}

fn cmd_oracle(file: &Path) -> CliResult {
    let lg = load_graph(file)?;
    println!("{}", brute_force_mad(&lg.graph)?);
    Ok(())
}

fn parse_threshold(name: &str, value: &str) -> Result<Rational, CliError> {
    let r: Rational = value
        .parse()
        .map_err(|_| CliError::usage(format!("--{name} must be a rational like 9/5, got {value:?}")))?;
    if r <= Rational::ZERO {
        return Err(CliError::usage(format!("--{name} must be positive")));
    }
    Ok(r)
}

fn cmd_conjecture(file: &Path, c1: &str, c2: &str, findings: &Path) -> CliResult {
    let c1 = parse_threshold("c1", c1)?;
    let c2 = parse_threshold("c2", c2)?;
    let lg = load_graph(file)?;
    match conjecture_search(&lg.graph, &c1, &c2)? {
        ConjectureOutcome::Witness { a, b } => {
            println!("witness");
            println!("A: {}", lg.sorted_labels(&a).join(" "));
            println!("B: {}", lg.sorted_labels(&b).join(" "));
        }
        ConjectureOutcome::HypothesisViolated { mad } => {
            println!("outside hypothesis: mad = {mad} >= c1 + c2 = {}", c1 + c2);
        }
        ConjectureOutcome::Counterexample => {
            println!("COUNTEREXAMPLE: no bipartition bounds mad below {c1} and {c2}");
            let record = FindingRecord {
                schema: SCHEMA_VERSION,
                event: "counterexample".into(),
                input: file.display().to_string(),
                c1: c1.to_string(),
                c2: c2.to_string(),
                mad: brute_force_mad(&lg.graph)?.to_string(),
                n: lg.graph.vertex_count(),
                edges: lg
                    .graph
                    .edges()
                    .iter()
                    .map(|&(u, v)| (lg.labels[u].clone(), lg.labels[v].clone()))
                    .collect(),
            };
            let mut out = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(findings)?;
            writeln!(
                out,
                "{}",
                serde_json::to_string(&record).expect("record serializes")
            )?;
            println!("recorded in {}", findings.display());
        }
    }
    Ok(())
}

fn cmd_verify(file: &Path, k: usize, set_path: &Path) -> CliResult {
    if k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    let lg = load_graph(file)?;
    let text = fs::read_to_string(set_path)
        .map_err(|e| CliError::usage(format!("{}: {e}", set_path.display())))?;
    let mut indices = BTreeSet::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        for token in trimmed.split_whitespace() {
            let v = lg
                .label_index(token)
                .ok_or_else(|| CliError::usage(format!("unknown vertex label {token:?}")))?;
            indices.insert(v);
        }
    }
    let s = VertexSet::from_indices(lg.graph.vertex_count(), indices)?;
    let report = verify_vertex_set(&lg.graph, &s, k);
    println!("mad(G) = {}", report.mad_original);
    println!("mad(G - S) = {}", report.mad_remainder);
    println!(
        "degeneracy check: {}",
        if report.degeneracy_ok { "ok" } else { "FAILED" }
    );
    println!(
        "mad drop check: {}",
        if report.mad_drop_ok { "ok" } else { "FAILED" }
    );
    for failure in &report.failures {
        println!("failure: {failure}");
    }
    if report.passed() {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(CliError::verification("supplied set violates the contract"))
    }
}

fn cmd_gen(kind: GenKind) -> CliResult {
    let lg = match kind {
        GenKind::Gnm { n, m, seed } => gen::gnm(n, m, seed),
        GenKind::Cycle { n } => gen::cycle(n),
        GenKind::Complete { n } => gen::complete(n),
        GenKind::Grid { rows, cols } => gen::grid(rows, cols),
        GenKind::Tree { n, seed } => gen::tree(n, seed),
    }
    .map_err(CliError::usage)?;
    print!("{}", write_edge_list(&lg));
    Ok(())
}

enum KSpec {
    Auto,
    List(Vec<usize>),
}

fn parse_k_spec(spec: &str) -> Result<KSpec, CliError> {
    if spec == "auto" {
        return Ok(KSpec::Auto);
    }
    let ks = spec
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| {
                    CliError::usage(format!("--k must be \"auto\" or positive integers, got {part:?}"))
                })
        })
        .collect::<Result<Vec<usize>, CliError>>()?;
    if ks.is_empty() {
        return Err(CliError::usage("--k lists at least one value"));
    }
    Ok(KSpec::List(ks))
}

fn batch_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("MADKIT_THREADS") {
        let threads: usize = value.parse().ok().filter(|&t| t >= 1).ok_or_else(|| {
            CliError::usage(format!("MADKIT_THREADS must be a positive integer, got {value:?}"))
        })?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))
}

struct BatchOutcome {
    rows: Vec<[String; 8]>,
    parse_failed: bool,
    verify_failed: bool,
}

fn batch_file(path: &Path, spec: &KSpec) -> BatchOutcome {
    let name = path.display().to_string();
    let error_row = |msg: String| BatchOutcome {
        rows: vec![[
            name.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            format!("error: {msg}"),
        ]],
        parse_failed: true,
        verify_failed: false,
    };
    let lg = match fs::read_to_string(path) {
        Ok(text) => match parse_edge_list(&text) {
            Ok(lg) => lg,
            Err(e) => return error_row(e.to_string()),
        },
        Err(e) => return error_row(e.to_string()),
    };
    let g = &lg.graph;
    let mad = match mad_exact(g) {
        Ok(r) => r.value,
        Err(e) => return error_row(e.to_string()),
    };
    let ks: Vec<usize> = match spec {
        KSpec::List(ks) => ks.clone(),
        KSpec::Auto => (1..=mad.floor().unwrap_or(0).max(1) as usize).collect(),
    };
    let mut rows = Vec::new();
    let mut verify_failed = false;
    for k in ks {
        match decompose_by_k(g, k) {
            Ok(d) => {
                let report = d.report.as_ref().expect("pipeline attaches a report");
                if !report.passed() {
                    verify_failed = true;
                }
                rows.push([
                    name.clone(),
                    g.vertex_count().to_string(),
                    g.edge_count().to_string(),
                    mad.to_string(),
                    k.to_string(),
                    d.set.len().to_string(),
                    report.mad_remainder.to_string(),
                    report.passed().to_string(),
                ]);
            }
            Err(e) => {
                verify_failed = true;
                rows.push([
                    name.clone(),
                    g.vertex_count().to_string(),
                    g.edge_count().to_string(),
                    mad.to_string(),
                    k.to_string(),
                    String::new(),
                    String::new(),
                    format!("error: {e}"),
                ]);
            }
        }
    }
    BatchOutcome {
        rows,
        parse_failed: false,
        verify_failed,
    }
}

fn cmd_batch(dir: &Path, kspec: &str, out: &Path) -> CliResult {
    let spec = parse_k_spec(kspec)?;
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok())
        .filter(|entry| entry.file_type().map(|t| t.is_file()).unwrap_or(false))
        .map(|entry| entry.path())
        .collect();
    files.sort();

    let pool = batch_pool()?;
    let outcomes: Vec<BatchOutcome> = pool.install(|| {
        use rayon::prelude::*;
        files.par_iter().map(|path| batch_file(path, &spec)).collect()
    });

    let mut writer = csv::Writer::from_path(out)
        .map_err(|e| CliError::usage(format!("{}: {e}", out.display())))?;
    writer
        .write_record(["file", "n", "m", "mad", "k", "set_size", "mad_remainder", "pass"])
        .map_err(|e| CliError::usage(e.to_string()))?;
    let mut parse_failed = false;
    let mut verify_failed = false;
    let mut row_count = 0usize;
    for outcome in &outcomes {
        parse_failed |= outcome.parse_failed;
        verify_failed |= outcome.verify_failed;
        for row in &outcome.rows {
            writer
                .write_record(row)
                .map_err(|e| CliError::usage(e.to_string()))?;
            row_count += 1;
        }
    }
    writer.flush().map_err(|e| CliError::usage(e.to_string()))?;
    println!("wrote {row_count} rows for {} files to {}", files.len(), out.display());
    if verify_failed {
        return Err(CliError::verification("at least one decomposition failed"));
    }
    if parse_failed {
        return Err(CliError::usage("at least one input failed to parse"));
    }
    Ok(())
}
