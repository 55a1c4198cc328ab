//! The corpus regression harness: manifest-driven runs of the valency-3
//! and valency-4 results over named graphs, with per-entry machine-readable
//! reports in manifest order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{build_lemma41, build_lemma42, ConstructionError};
use crate::families::{complete_bipartite, subdivided_double, wreath};
use crate::graph::{Graph, GraphError};
use crate::group::GeneratedGroup;
use crate::named;
use crate::perm::Permutation;
use crate::report::{digest, CheckVerdict, RunReport};
use crate::semireg::{
    find_semiregular, theorem_3valent, theorem_4valent, ClassificationOutcome, SemiregError,
};
use crate::symmetry::{automorphism_group, random_edge_transitive_subgroups};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown graph source `{0}`")]
    UnknownGraph(String),
    #[error("unknown group source `{0}`")]
    UnknownGroup(String),
    #[error("unknown expectation `{0}`")]
    UnknownExpectation(String),
    #[error("group source `{spec}` does not act on the entry's graph")]
    GraphGroupMismatch { spec: String },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Family(#[from] crate::families::FamilyError),
}

/// One manifest row. Graph and group sources are compact strings:
/// builtin names (`petersen`, `wreath-8`, `dd-k44`, …), `lemma41-graph:N`,
/// `lemma42-sigma:N`, or `file:PATH`; groups are `aut` (default),
/// `lemma41:N`, `lemma42:N`, `lemma42-on-k44:2`, or `file:PATH`.
/// Expectations: `certificate`, `wreath:N`, `double`, `no-semiregular`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: String,
    #[serde(default = "default_group")]
    pub group: String,
    pub expect: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub sample_subgroups: usize,
}

fn default_group() -> String {
    "aut".into()
}

pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let data = std::fs::read_to_string(path)?;
    serde_json::from_str(&data).map_err(|e| CorpusError::Manifest(e.to_string()))
}

pub fn resolve_graph(source: &str, base_dir: &Path) -> Result<Graph, CorpusError> {
    if let Some(path) = source.strip_prefix("file:") {
        return Ok(load_graph_file(&base_dir.join(path))?);
    }
    if let Some(n) = source.strip_prefix("lemma41-graph:") {
        let n: u32 = n
            .parse()
            .map_err(|_| CorpusError::UnknownGraph(source.into()))?;
        return Ok(build_lemma41(n)?.graph);
    }
    if let Some(n) = source.strip_prefix("lemma42-sigma:") {
        let n: u32 = n
            .parse()
            .map_err(|_| CorpusError::UnknownGraph(source.into()))?;
        return Ok(build_lemma42(n)?.sigma_graph);
    }
    named::by_name(source).ok_or_else(|| CorpusError::UnknownGraph(source.into()))
}

pub fn load_graph_file(path: &Path) -> Result<Graph, GraphError> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| GraphError::Parse(format!("{}: {e}", path.display())))?;
    if data.trim_start().starts_with('{') {
        Graph::from_json(&data)
    } else {
        Graph::from_text(&data)
    }
}

pub fn resolve_group(
    source: &str,
    graph: &Graph,
    base_dir: &Path,
) -> Result<GeneratedGroup, CorpusError> {
    let group = if source == "aut" {
        automorphism_group(graph)
    } else if let Some(path) = source.strip_prefix("file:") {
        let data = std::fs::read_to_string(base_dir.join(path))?;
        serde_json::from_str(&data).map_err(|e| CorpusError::Manifest(e.to_string()))?
    } else if let Some(n) = source.strip_prefix("lemma41:") {
        let n: u32 = n
            .parse()
            .map_err(|_| CorpusError::UnknownGroup(source.into()))?;
        let inst = build_lemma41(n)?;
        if &inst.graph != graph {
            return Err(CorpusError::GraphGroupMismatch {
                spec: source.into(),
            });
        }
        inst.group
    } else if let Some(n) = source.strip_prefix("lemma42:") {
        let n: u32 = n
            .parse()
            .map_err(|_| CorpusError::UnknownGroup(source.into()))?;
        let inst = build_lemma42(n)?;
        if &inst.sigma_graph != graph {
            return Err(CorpusError::GraphGroupMismatch {
                spec: source.into(),
            });
        }
        inst.group
    } else if source == "lemma42-on-k44:2" {
        let (dd_k44, transported) = lemma42_group_on_dd_k44()?;
        if &dd_k44 != graph {
            return Err(CorpusError::GraphGroupMismatch {
                spec: source.into(),
            });
        }
        transported
    } else {
        return Err(CorpusError::UnknownGroup(source.into()));
    };
    if group.domain_size() != graph.vertex_count() {
        return Err(CorpusError::GraphGroupMismatch {
            spec: source.into(),
        });
    }
    Ok(group)
}

/// The vertex bijection DD(W(4,2)) → DD(K_{4,4}) induced by reading the
/// ring positions of W(4,2) as the two parts of K_{4,4} (they are the same
/// graph in different labelings).
pub fn dd_w42_to_dd_k44_relabeling() -> Result<Permutation, CorpusError> {
    let (w4, wl) = wreath(4)?;
    let k44 = complete_bipartite(4, 4);
    // ring position i: evens to part {0..3}, odds to part {4..7}
    let psi: Vec<usize> = (0..8)
        .map(|v| {
            let (i, u) = wl.position(v);
            if i % 2 == 0 {
                2 * (i / 2) + u
            } else {
                4 + 2 * (i / 2) + u
            }
        })
        .collect();
    for &(a, b) in &w4.edges() {
        debug_assert!(k44.has_edge(psi[a], psi[b]));
    }
    let (dd_w4, l_w4) = subdivided_double(&w4)?;
    let (_, l_k44) = subdivided_double(&k44)?;
    let mut images = vec![0usize; dd_w4.vertex_count()];
    for (k, &(a, b)) in l_w4.base_edges.iter().enumerate() {
        let target = l_k44
            .edge_index(psi[a], psi[b])
            .expect("ψ maps edges to edges");
        images[l_w4.edge_vertex(k)] = l_k44.edge_vertex(target);
    }
    for v in 0..8 {
        for i in 0..2 {
            images[l_w4.pair_vertex(v, i)] = l_k44.pair_vertex(psi[v], i);
        }
    }
    Ok(Permutation::from_images(images).expect("ψ lifts to a bijection"))
}

/// The second construction at n = 2 lives on DD(W(4,2)); the group
/// transports to DD(K_{4,4}) along the induced relabeling.
pub fn lemma42_group_on_dd_k44() -> Result<(Graph, GeneratedGroup), CorpusError> {
    let inst = build_lemma42(2)?;
    let (dd_k44, _) = subdivided_double(&complete_bipartite(4, 4))?;
    let phi = dd_w42_to_dd_k44_relabeling()?;
    let gens: Vec<Permutation> = inst
        .group
        .generators()
        .iter()
        .map(|g| g.conjugate_by(&phi).expect("same degree"))
        .collect();
    for g in &gens {
        debug_assert!(dd_k44.is_automorphism(g));
    }
    let group = GeneratedGroup::new(dd_k44.vertex_count(), gens)
        .expect("transported generators share the domain");
    Ok((dd_k44, group))
}

fn outcome_tag(outcome: &ClassificationOutcome) -> String {
    match outcome {
        ClassificationOutcome::Semiregular(cert) => format!("semiregular:{}", cert.cycle_length),
        ClassificationOutcome::WreathWitness { n } => format!("wreath:{n}"),
        ClassificationOutcome::DoubleWitness { base_order, .. } => {
            format!("double:{base_order}")
        }
        ClassificationOutcome::Refuted { .. } => "refuted".into(),
    }
}

fn expectation_matches(expect: &str, actual: &str) -> bool {
    match expect {
        "certificate" => actual.starts_with("semiregular:"),
        "double" => actual.starts_with("double:"),
        other => other == actual,
    }
}

/// Runs one manifest row and reports every check it implies.
pub fn run_entry(entry: &CorpusEntry, cap: u64, base_dir: &Path) -> RunReport {
    let start = std::time::Instant::now();
    let input_digest = digest(&[
        &entry.name,
        &entry.graph,
        &entry.group,
        &entry.expect,
        &entry.seed.to_string(),
        &entry.sample_subgroups.to_string(),
    ]);
    let mut report = RunReport::new(entry.name.clone(), input_digest);

    let graph = match resolve_graph(&entry.graph, base_dir) {
        Ok(g) => g,
        Err(e) => {
            report.push(CheckVerdict::fail("load_inputs", e.to_string()));
            report.timing_ms = start.elapsed().as_millis();
            return report;
        }
    };
    let group = match resolve_group(&entry.group, &graph, base_dir) {
        Ok(g) => g,
        Err(e) => {
            report.push(CheckVerdict::fail("load_inputs", e.to_string()));
            report.timing_ms = start.elapsed().as_millis();
            return report;
        }
    };
    report.count("vertices", graph.vertex_count() as u128);
    report.count("group_order", group.order());

    let actual = match run_route(&graph, &group, entry, cap, &mut report) {
        Ok(tag) => tag,
        Err(SemiregError::Inconclusive { order, cap }) => {
            report.push(CheckVerdict::inconclusive(
                "outcome",
                format!("group order {order} exceeds cap"),
                cap,
            ));
            report.timing_ms = start.elapsed().as_millis();
            return report;
        }
        Err(e) => {
            report.push(CheckVerdict::fail("outcome", e.to_string()));
            report.timing_ms = start.elapsed().as_millis();
            return report;
        }
    };
    report.push(CheckVerdict::of(
        "outcome_matches_expectation",
        expectation_matches(&entry.expect, &actual),
        format!("expected {}, got {}", entry.expect, actual),
    ));
    report.timing_ms = start.elapsed().as_millis();
    report
}

fn run_route(
    graph: &Graph,
    group: &GeneratedGroup,
    entry: &CorpusEntry,
    cap: u64,
    report: &mut RunReport,
) -> Result<String, SemiregError> {
    if entry.expect == "no-semiregular" {
        let scan = find_semiregular(group, &[], cap)?;
        report.count("prime_order_scanned", scan.prime_order_scanned as u128);
        return Ok(match scan.certificate {
            Some(cert) => format!("semiregular:{}", cert.cycle_length),
            None => "no-semiregular".into(),
        });
    }
    match graph.regular_valency() {
        Some(3) => {
            let cert = theorem_3valent(graph, group, cap)?;
            report.push(CheckVerdict::of(
                "certificate_validates",
                cert.validate().unwrap_or(false),
                format!("cycle length {}", cert.cycle_length),
            ));
            if entry.sample_subgroups > 0 {
                sample_check(graph, group, entry, cap, report)?;
            }
            Ok(format!("semiregular:{}", cert.cycle_length))
        }
        Some(4) => {
            let result = theorem_4valent(graph, group, cap)?;
            report.push(CheckVerdict::of(
                "full_aut_scan_certificate",
                result.aut_scan.certificate.is_some(),
                format!(
                    "full automorphism group of order {}",
                    result.aut_scan.group_order
                ),
            ));
            if let ClassificationOutcome::Semiregular(cert) = &result.outcome {
                report.push(CheckVerdict::of(
                    "certificate_validates",
                    cert.validate().unwrap_or(false),
                    format!("cycle length {}", cert.cycle_length),
                ));
            }
            Ok(outcome_tag(&result.outcome))
        }
        _ => {
            let scan = find_semiregular(group, &[], cap)?;
            Ok(match scan.certificate {
                Some(cert) => format!("semiregular:{}", cert.cycle_length),
                None => "no-semiregular".into(),
            })
        }
    }
}

fn sample_check(
    graph: &Graph,
    group: &GeneratedGroup,
    entry: &CorpusEntry,
    cap: u64,
    report: &mut RunReport,
) -> Result<(), SemiregError> {
    let subgroups =
        random_edge_transitive_subgroups(graph, group, entry.sample_subgroups, entry.seed)?;
    let mut certified = 0usize;
    let mut first_failure = None;
    for sub in &subgroups {
        match theorem_3valent(graph, sub, cap) {
            Ok(cert) if cert.validate().unwrap_or(false) => certified += 1,
            Ok(_) => first_failure = first_failure.or(Some("certificate failed revalidation")),
            Err(_) => first_failure = first_failure.or(Some("subgroup run failed")),
        }
    }
    report.count("sampled_subgroups", subgroups.len() as u128);
    report.push(CheckVerdict::of(
        "sampled_subgroups_all_certified",
        first_failure.is_none() && subgroups.len() >= entry.sample_subgroups,
        format!(
            "{certified}/{} sampled edge-transitive subgroups certified (requested {}){}",
            subgroups.len(),
            entry.sample_subgroups,
            first_failure.map(|f| format!("; {f}")).unwrap_or_default()
        ),
    ));
    Ok(())
}

/// Runs every row, reports in manifest order.
pub fn run_manifest(entries: &[CorpusEntry], cap: u64, base_dir: &Path) -> Vec<RunReport> {
    entries
        .iter()
        .map(|entry| run_entry(entry, cap, base_dir))
        .collect()
}

/// Exit-code aggregation over rows: FAIL dominates INCONCLUSIVE.
pub fn aggregate_exit_code(reports: &[RunReport]) -> u8 {
    reports.iter().map(|r| r.exit_code()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 1_000_000;

    fn entry(name: &str, graph: &str, group: &str, expect: &str) -> CorpusEntry {
        CorpusEntry {
            name: name.into(),
            graph: graph.into(),
            group: group.into(),
            expect: expect.into(),
            seed: 5,
            sample_subgroups: 0,
        }
    }

    #[test]
    fn k34_row_passes_no_semiregular() {
        let report = run_entry(
            &entry("k34", "k34", "aut", "no-semiregular"),
            CAP,
            Path::new("."),
        );
        assert!(report.all_passed(), "{:#?}", report.checks);
        assert_eq!(report.counters["group_order"], 144);
    }

    #[test]
    fn petersen_row_with_sampling() {
        let mut e = entry("petersen", "petersen", "aut", "certificate");
        e.sample_subgroups = 5;
        let report = run_entry(&e, CAP, Path::new("."));
        assert!(report.all_passed(), "{:#?}", report.checks);
        assert!(report.counters["sampled_subgroups"] >= 5);
    }

    #[test]
    fn w8_with_first_construction_is_a_wreath_witness() {
        let report = run_entry(
            &entry("w8-first", "lemma41-graph:3", "lemma41:3", "wreath:8"),
            CAP,
            Path::new("."),
        );
        assert!(report.all_passed(), "{:#?}", report.checks);
    }

    #[test]
    fn transported_group_acts_on_dd_k44() {
        let (dd_k44, group) = lemma42_group_on_dd_k44().unwrap();
        assert_eq!(group.order(), 128);
        for g in group.generators() {
            assert!(dd_k44.is_automorphism(g));
        }
        let report = crate::symmetry::classify(&dd_k44, &group).unwrap();
        assert!(report.edge_transitive);
    }

    #[test]
    fn shipped_witness_groups_have_no_semiregular_element() {
        // the order-256 edge-transitive 2-subgroups shipped for the DD
        // corpus rows: every involution fixes a vertex, so the trichotomy
        // lands on the subdivided-double witness
        let corpus = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"));
        for (graph_source, file) in [
            ("dd-k44", "file:witness-dd-k44.json"),
            ("dd-wreath-4", "file:witness-dd-w42.json"),
        ] {
            let graph = resolve_graph(graph_source, corpus).unwrap();
            let group = resolve_group(file, &graph, corpus).unwrap();
            assert_eq!(group.order(), 256);
            for g in group.generators() {
                assert!(graph.is_automorphism(g));
            }
            let fpf = group
                .elements(CAP)
                .unwrap()
                .filter(|p| p.order() == 2 && p.fixed_points().is_empty())
                .count();
            assert_eq!(fpf, 0, "{file}: fixed-point-free involution found");
            let result = theorem_4valent(&graph, &group, CAP).unwrap();
            match result.outcome {
                ClassificationOutcome::DoubleWitness { base_order, .. } => {
                    assert_eq!(base_order, 8)
                }
                other => panic!("{file}: expected a double witness, got {other:?}"),
            }
            assert!(result.aut_scan.certificate.is_some());
        }
    }

    #[test]
    fn witness_files_are_relabelings_of_each_other() {
        let corpus = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"));
        let k44_graph = resolve_graph("dd-k44", corpus).unwrap();
        let w42_graph = resolve_graph("dd-wreath-4", corpus).unwrap();
        let on_k44 = resolve_group("file:witness-dd-k44.json", &k44_graph, corpus).unwrap();
        let on_w42 = resolve_group("file:witness-dd-w42.json", &w42_graph, corpus).unwrap();
        let phi = dd_w42_to_dd_k44_relabeling().unwrap();
        let phi_inv = phi.inverse();
        for (a, b) in on_k44.generators().iter().zip(on_w42.generators()) {
            assert_eq!(&a.conjugate_by(&phi_inv).unwrap(), b);
        }
    }

    #[test]
    fn mismatched_graph_and_group_sources_are_rejected() {
        let report = run_entry(
            &entry("bad", "petersen", "lemma41:3", "certificate"),
            CAP,
            Path::new("."),
        );
        assert!(report.has_failure());
    }

    #[test]
    fn expectation_matching() {
        assert!(expectation_matches("certificate", "semiregular:5"));
        assert!(expectation_matches("wreath:8", "wreath:8"));
        assert!(!expectation_matches("wreath:8", "wreath:4"));
        assert!(expectation_matches("double:8", "double:8"));
        assert!(expectation_matches("double", "double:8"));
        assert!(!expectation_matches("no-semiregular", "semiregular:2"));
    }
}
