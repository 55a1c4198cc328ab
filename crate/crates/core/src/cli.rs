//! Command-line front end: family construction, classification, quotients,
//! certificate search, construction verification and the corpus harness.
//!
//! Exit codes: 0 success/PASS, 1 usage or I/O error, 2 theorem or lemma
//! violation (CI-fatal), 3 inconclusive (an enumeration cap was hit).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::constructions::{build_lemma41, build_lemma42, verify_lemma41, verify_lemma42};
use crate::corpus::{aggregate_exit_code, load_graph_file, load_manifest, run_manifest};
use crate::families::{complete_bipartite, subdivided_double, subdivision, wreath};
use crate::graph::Graph;
use crate::group::GeneratedGroup;
use crate::quotient::{normal_subgroup, quotient_by};
use crate::report::RunReport;
use crate::semireg::{corollary_part_preserving, semiregular_outcome, ClassificationOutcome, SemiregError};
use crate::symmetry::{automorphism_group, classify};
use crate::DEFAULT_CAP;

#[derive(Parser)]
#[command(name = "etsemi", version, about = "semiregular automorphisms of edge-transitive graphs: constructions, classification and exhaustive verification")]
struct Cli {
    /// Emit compact single-line JSON instead of pretty-printed JSON
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration cap for exhaustive scans (env: ETSEMI_CAP)
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph family and emit it with its labeling
    Construct(ConstructArgs),
    /// Classify how a group acts on a graph (vertex/edge/arc transitivity)
    Classify(ClassifyArgs),
    /// Quotient a graph by the orbits of a normal subgroup
    Quotient(QuotientArgs),
    /// Search for a semiregular automorphism certificate or a witness
    Semireg(SemiregArgs),
    /// Verify every claim of one of the built-in group constructions
    Verify(VerifyArgs),
    /// Run a corpus manifest and report one JSON line per entry
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Family: wreath | dd | subdivision | complete-bipartite |
    /// lemma41-graph | lemma42-sigma
    family: String,
    /// Ring length (wreath), part size (complete-bipartite), or exponent
    /// (lemma41-graph, lemma42-sigma)
    #[arg(long)]
    n: Option<usize>,
    /// First part size for complete-bipartite
    #[arg(long)]
    m: Option<usize>,
    /// Base graph file for dd and subdivision
    #[arg(long)]
    base: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Group file; the full automorphism group when absent
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Args)]
struct QuotientArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Generators of the normal subgroup (group JSON file)
    #[arg(long)]
    normal_gens: PathBuf,
    /// Ambient group file; the full automorphism group when absent
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Args)]
struct SemiregArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Group file; the full automorphism group when absent
    #[arg(long)]
    group: Option<PathBuf>,
    /// Search for a certificate preserving each part of the bipartition
    #[arg(long)]
    parts: bool,
    /// Seed (reserved for sampled searches; recorded in the output)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Target: lemma41 | lemma42
    target: String,
    #[arg(long)]
    n: u32,
    /// Compare the report (timing masked) against a stored golden file
    #[arg(long)]
    golden: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    manifest: PathBuf,
    /// Fallback seed for entries without one
    #[arg(long)]
    seed: Option<u64>,
    /// Compare reports (timing masked) against a stored golden JSONL file
    #[arg(long)]
    golden: Option<PathBuf>,
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit codes
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cap = cli
        .cap
        .or_else(|| {
            std::env::var("ETSEMI_CAP")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_CAP);
    let emit = |value: &dyn erased::Emit| {
        if cli.json {
            println!("{}", value.compact());
        } else {
            println!("{}", value.pretty());
        }
    };
    let result = match &cli.command {
        Command::Construct(args) => cmd_construct(args, cli.json),
        Command::Classify(args) => cmd_classify(args, &emit),
        Command::Quotient(args) => cmd_quotient(args, cap, &emit),
        Command::Semireg(args) => cmd_semireg(args, cap, &emit),
        Command::Verify(args) => cmd_verify(args, cap, cli.json),
        Command::Corpus(args) => cmd_corpus(args, cap),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

/// Object-safe serialization shim so commands can share one emitter.
mod erased {
    use serde::Serialize;

    pub trait Emit {
        fn compact(&self) -> String;
        fn pretty(&self) -> String;
    }

    impl<T: Serialize> Emit for T {
        fn compact(&self) -> String {
            serde_json::to_string(self).expect("serializable")
        }
        fn pretty(&self) -> String {
            serde_json::to_string_pretty(self).expect("serializable")
        }
    }
}

#[derive(Serialize)]
struct ConstructOutput {
    family: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    vertex_labels: Vec<String>,
}

fn cmd_construct(args: &ConstructArgs, compact: bool) -> Result<u8, String> {
    let need_n = || args.n.ok_or_else(|| "--n is required".to_string());
    let need_base = || -> Result<Graph, String> {
        let path = args.base.as_ref().ok_or("--base is required")?;
        load_graph_file(path).map_err(|e| e.to_string())
    };
    let (graph, labels) = match args.family.as_str() {
        "wreath" => {
            let (g, labeling) = wreath(need_n()?).map_err(|e| e.to_string())?;
            let labels = labeling.vertex_labels();
            (g, labels)
        }
        "dd" => {
            let base = need_base()?;
            let (g, labeling) = subdivided_double(&base).map_err(|e| e.to_string())?;
            let labels = labeling.vertex_labels();
            (g, labels)
        }
        "subdivision" => {
            let base = need_base()?;
            let g = subdivision(&base);
            let mut labels: Vec<String> = (0..base.vertex_count()).map(|v| v.to_string()).collect();
            labels.extend(base.edges().iter().map(|&(u, v)| format!("e{{{u},{v}}}")));
            (g, labels)
        }
        "complete-bipartite" => {
            let m = args.m.ok_or("--m is required")?;
            let n = need_n()?;
            if m == 0 || n == 0 {
                return Err("part sizes must be positive".into());
            }
            let g = complete_bipartite(m, n);
            let labels = (0..m)
                .map(|i| format!("a{i}"))
                .chain((0..n).map(|i| format!("b{i}")))
                .collect();
            (g, labels)
        }
        "lemma41-graph" => {
            let inst = build_lemma41(need_n()? as u32).map_err(|e| e.to_string())?;
            let labels = inst.labeling.vertex_labels();
            (inst.graph, labels)
        }
        "lemma42-sigma" => {
            let inst = build_lemma42(need_n()? as u32).map_err(|e| e.to_string())?;
            let labels = inst.vertex_labels();
            (inst.sigma_graph, labels)
        }
        other => return Err(format!("unknown family `{other}`")),
    };
    let output = ConstructOutput {
        family: args.family.clone(),
        n: graph.vertex_count(),
        edges: graph.edges(),
        vertex_labels: labels,
    };
    let text = if compact {
        serde_json::to_string(&output)
    } else {
        serde_json::to_string_pretty(&output)
    }
    .expect("serializable");
    match &args.output {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string())?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn load_group_or_aut(graph: &Graph, path: &Option<PathBuf>) -> Result<GeneratedGroup, String> {
    match path {
        Some(p) => {
            let data = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
            serde_json::from_str(&data).map_err(|e| e.to_string())
        }
        None => Ok(automorphism_group(graph)),
    }
}

fn cmd_classify(args: &ClassifyArgs, emit: &dyn Fn(&dyn erased::Emit)) -> Result<u8, String> {
    let graph = load_graph_file(&args.graph).map_err(|e| e.to_string())?;
    let group = load_group_or_aut(&graph, &args.group)?;
    let report = classify(&graph, &group).map_err(|e| e.to_string())?;
    emit(&report);
    Ok(0)
}

#[derive(Serialize)]
struct QuotientOutput {
    blocks: Vec<Vec<usize>>,
    quotient: Graph,
    kernel: GeneratedGroup,
    induced: GeneratedGroup,
    kernel_order: u128,
    induced_order: u128,
}

fn cmd_quotient(
    args: &QuotientArgs,
    cap: u64,
    emit: &dyn Fn(&dyn erased::Emit),
) -> Result<u8, String> {
    let graph = load_graph_file(&args.graph).map_err(|e| e.to_string())?;
    let ambient = load_group_or_aut(&graph, &args.group)?;
    let data = std::fs::read_to_string(&args.normal_gens).map_err(|e| e.to_string())?;
    let raw: GeneratedGroup = serde_json::from_str(&data).map_err(|e| e.to_string())?;
    let normal =
        normal_subgroup(&ambient, raw.generators().to_vec()).map_err(|e| e.to_string())?;
    let qr = quotient_by(&graph, &ambient, &normal, cap).map_err(|e| e.to_string())?;
    let output = QuotientOutput {
        kernel_order: qr.kernel.order(),
        induced_order: qr.induced.order(),
        blocks: qr.blocks,
        quotient: qr.quotient,
        kernel: qr.kernel,
        induced: qr.induced,
    };
    emit(&output);
    Ok(0)
}

#[derive(Serialize)]
struct SemiregOutput {
    outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<crate::perm::SemiregularCertificate>,
    detail: serde_json::Value,
    seed: u64,
}

fn cmd_semireg(
    args: &SemiregArgs,
    cap: u64,
    emit: &dyn Fn(&dyn erased::Emit),
) -> Result<u8, String> {
    let graph = load_graph_file(&args.graph).map_err(|e| e.to_string())?;
    if args.parts {
        return match corollary_part_preserving(&graph, cap) {
            Ok(cert) => {
                let output = SemiregOutput {
                    outcome: format!("part-preserving-semiregular:{}", cert.cycle_length),
                    detail: serde_json::json!({"part_preserving": true}),
                    certificate: Some(cert),
                    seed: args.seed,
                };
                emit(&output);
                Ok(0)
            }
            Err(SemiregError::TheoremViolation { .. }) => {
                eprintln!("theorem violation: exhaustive scan found no part-preserving certificate");
                Ok(2)
            }
            Err(SemiregError::Inconclusive { order, cap }) => {
                eprintln!("inconclusive: group order {order} exceeds cap {cap}");
                Ok(3)
            }
            Err(e) => Err(e.to_string()),
        };
    }
    let group = load_group_or_aut(&graph, &args.group)?;
    match semiregular_outcome(&graph, &group, cap) {
        Ok(result) => {
            // theorem violation only when the hypotheses actually hold
            let in_hypotheses = graph.is_connected()
                && matches!(graph.regular_valency(), Some(3) | Some(4))
                && classify(&graph, &group)
                    .map(|r| r.edge_transitive)
                    .unwrap_or(false);
            let refuted = matches!(result.outcome, ClassificationOutcome::Refuted { .. });
            let outcome = match &result.outcome {
                ClassificationOutcome::Semiregular(cert) => {
                    format!("semiregular:{}", cert.cycle_length)
                }
                ClassificationOutcome::WreathWitness { n } => format!("wreath:{n}"),
                ClassificationOutcome::DoubleWitness { base_order, .. } => {
                    format!("double:{base_order}")
                }
                ClassificationOutcome::Refuted { .. } => "no-semiregular".into(),
            };
            let certificate = match &result.outcome {
                ClassificationOutcome::Semiregular(cert) => Some(cert.clone()),
                _ => None,
            };
            let output = SemiregOutput {
                outcome,
                certificate,
                detail: serde_json::to_value(&result).expect("serializable"),
                seed: args.seed,
            };
            emit(&output);
            Ok(if refuted && in_hypotheses { 2 } else { 0 })
        }
        Err(SemiregError::Inconclusive { order, cap }) => {
            eprintln!("inconclusive: group order {order} exceeds cap {cap}");
            Ok(3)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_verify(args: &VerifyArgs, cap: u64, compact: bool) -> Result<u8, String> {
    let report = match args.target.as_str() {
        "lemma41" => {
            let inst = build_lemma41(args.n).map_err(|e| e.to_string())?;
            verify_lemma41(&inst, cap)
        }
        "lemma42" => {
            let inst = build_lemma42(args.n).map_err(|e| e.to_string())?;
            verify_lemma42(&inst, cap)
        }
        other => return Err(format!("unknown verify target `{other}`")),
    };
    println!(
        "{}",
        if compact {
            report.to_json_line()
        } else {
            report.to_json_pretty()
        }
    );
    if let Some(golden) = &args.golden {
        return compare_golden(std::slice::from_ref(&report), golden);
    }
    Ok(report.exit_code())
}

fn cmd_corpus(args: &CorpusArgs, cap: u64) -> Result<u8, String> {
    let mut entries = load_manifest(&args.manifest).map_err(|e| e.to_string())?;
    if let Some(seed) = args.seed {
        for entry in &mut entries {
            if entry.seed == 0 {
                entry.seed = seed;
            }
        }
    }
    let base_dir = args
        .manifest
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let reports = run_manifest(&entries, cap, &base_dir);
    for report in &reports {
        println!("{}", report.to_json_line());
    }
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for report in &reports {
        let key = match report.exit_code() {
            0 => "pass",
            2 => "fail",
            _ => "inconclusive",
        };
        *tally.entry(key).or_default() += 1;
    }
    eprintln!(
        "corpus: {} entries ({})",
        reports.len(),
        tally
            .iter()
            .map(|(k, v)| format!("{v} {k}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    if let Some(golden) = &args.golden {
        return compare_golden(&reports, golden);
    }
    Ok(aggregate_exit_code(&reports))
}

/// Golden comparison: reports are re-serialized with timing masked and
/// compared line by line against the stored file.
fn compare_golden(reports: &[RunReport], golden: &Path) -> Result<u8, String> {
    let stored = std::fs::read_to_string(golden).map_err(|e| e.to_string())?;
    let stored_lines: Vec<&str> = stored.lines().filter(|l| !l.trim().is_empty()).collect();
    if stored_lines.len() != reports.len() {
        eprintln!(
            "golden mismatch: {} stored reports, {} produced",
            stored_lines.len(),
            reports.len()
        );
        return Ok(2);
    }
    for (i, (line, report)) in stored_lines.iter().zip(reports).enumerate() {
        let stored_report: RunReport = serde_json::from_str(line)
            .map_err(|e| format!("golden line {}: {e}", i + 1))?;
        let expected = stored_report.masked_timing().to_json_line();
        let actual = report.masked_timing().to_json_line();
        if expected != actual {
            eprintln!("golden mismatch at entry {} ({})", i + 1, report.target);
            eprintln!("  expected: {expected}");
            eprintln!("  actual:   {actual}");
            return Ok(2);
        }
    }
    eprintln!("golden comparison: {} reports match", reports.len());
    Ok(0)
}
