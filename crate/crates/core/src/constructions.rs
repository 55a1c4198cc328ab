//! Two explicit families of edge-transitive 2-groups in which every
//! involution fixes a vertex, so neither group contains a semiregular
//! element. The first acts edge-regularly on W(2^n,2); the second acts
//! edge-transitively on the subdivided double of W(2^n,2).
//!
//! Generator arithmetic follows the printed formulas symbol for symbol,
//! each family in its native indexing: ring positions 0…2^n−1 for the
//! first, labels 1,1',…,2^n,(2^n)' for the second. The twin-swap maps are
//! built as explicit transpositions from the labeling so a labeling bug
//! fails loudly at the build-time identity checks.

use thiserror::Error;

use crate::families::{subdivided_double, wreath, DoubleLabeling, FamilyError, WreathLabeling};
use crate::graph::Graph;
use crate::group::GeneratedGroup;
use crate::perm::Permutation;
use crate::report::{digest, CheckVerdict, RunReport};
use crate::semireg::find_semiregular;
use crate::symmetry::classify;

#[derive(Debug, Error, Clone)]
pub enum ConstructionError {
    #[error("{family} needs n ≥ {min}, got {got}")]
    ParameterTooSmall {
        family: &'static str,
        min: u32,
        got: u32,
    },
    #[error("build-time identity failed: {0}")]
    IdentityFailed(&'static str),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// First construction: G = ⟨x, τ, z⟩ ≤ Aut(W(2^n,2)) of order 2^(n+2),
/// with x = α₁σ, τ: i ↦ −i+4, and z the product of all αᵢ with
/// i ≢ 1 (mod 4).
#[derive(Debug, Clone)]
pub struct Lemma41Instance {
    pub n: u32,
    pub graph: Graph,
    pub labeling: WreathLabeling,
    pub x: Permutation,
    pub tau: Permutation,
    pub z: Permutation,
    pub sigma: Permutation,
    pub group: GeneratedGroup,
}

/// The twin swap at ring position i.
fn alpha(labeling: &WreathLabeling, i: usize) -> Permutation {
    Permutation::transposition(
        2 * labeling.n,
        labeling.vertex_of(i, 0),
        labeling.vertex_of(i, 1),
    )
    .expect("twin slots are distinct")
}

/// A ring map i ↦ f(i) acting on the first coordinate.
fn on_ring(labeling: &WreathLabeling, f: impl Fn(usize) -> usize) -> Permutation {
    let images = (0..2 * labeling.n)
        .map(|v| {
            let (i, u) = labeling.position(v);
            labeling.vertex_of(f(i) % labeling.n, u)
        })
        .collect();
    Permutation::from_images(images).expect("ring maps are bijective")
}

fn identity_check(cond: bool, label: &'static str) -> Result<(), ConstructionError> {
    if cond {
        Ok(())
    } else {
        Err(ConstructionError::IdentityFailed(label))
    }
}

pub fn build_lemma41(n: u32) -> Result<Lemma41Instance, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::ParameterTooSmall {
            family: "first construction",
            min: 3,
            got: n,
        });
    }
    let m = 1usize << n; // ring length 2^n
    let (graph, labeling) = wreath(m)?;
    let sigma = on_ring(&labeling, |i| (i + 2) % m);
    let tau = on_ring(&labeling, |i| (m + 4 - (i % m)) % m);
    let x = alpha(&labeling, 1).then(&sigma);
    let z = (0..m)
        .filter(|i| i % 4 != 1)
        .fold(Permutation::identity(2 * m), |acc, i| {
            acc.then(&alpha(&labeling, i))
        });
    let group = GeneratedGroup::new(2 * m, vec![x.clone(), tau.clone(), z.clone()])
        .expect("generators share the domain");

    identity_check(x.order() == m as u64, "|x| = 2^n")?;
    identity_check(tau.order() == 2, "|τ| = 2")?;
    identity_check(z.order() == 2, "|z| = 2")?;
    identity_check(tau.then(&x).order() == 2, "(τx)² = 1")?;
    let z_sigma = z.conjugate_by(&sigma).expect("same degree");
    let z_tau = z.conjugate_by(&tau).expect("same degree");
    identity_check(z_sigma == z_tau, "z^σ = z^τ")?;
    identity_check(
        z.then(&z_tau) == x.pow((m / 2) as i64),
        "z·z^τ = x^(2^(n-1))",
    )?;

    Ok(Lemma41Instance {
        n,
        graph,
        labeling,
        x,
        tau,
        z,
        sigma,
        group,
    })
}

/// (count, fixed-point-free count, sample of (involution, fixed vertex)).
type InvolutionSurvey = (u64, u64, Vec<(String, usize)>);

/// Exhaustive involution scan.
fn involution_survey(
    group: &GeneratedGroup,
    cap: u64,
) -> Result<InvolutionSurvey, crate::group::GroupError> {
    let mut count = 0u64;
    let mut without_fixed = 0u64;
    let mut sample = Vec::new();
    for p in group.elements(cap)? {
        if p.order() != 2 {
            continue;
        }
        count += 1;
        match p.fixed_points().first() {
            Some(&v) => {
                if sample.len() < 6 {
                    sample.push((p.to_string(), v));
                }
            }
            None => without_fixed += 1,
        }
    }
    Ok((count, without_fixed, sample))
}

pub fn verify_lemma41(inst: &Lemma41Instance, cap: u64) -> RunReport {
    let start = std::time::Instant::now();
    let input_digest = digest(&[
        "lemma41",
        &inst.n.to_string(),
        &serde_json::to_string(&inst.group).unwrap(),
    ]);
    let mut report = RunReport::new(format!("lemma41 n={}", inst.n), input_digest);
    let expected_order = 1u128 << (inst.n + 2);
    let edge_count = inst.graph.edge_count() as u128;

    let gens_ok = inst
        .group
        .generators()
        .iter()
        .all(|p| inst.graph.is_automorphism(p));
    report.push(CheckVerdict::of(
        "generators_are_automorphisms",
        gens_ok,
        format!("{} generators", inst.group.generators().len()),
    ));

    let order = inst.group.order();
    report.count("group_order", order);
    report.push(CheckVerdict::of(
        "group_order_is_2_pow_n_plus_2",
        order == expected_order,
        format!("|G| = {order}, expected {expected_order}"),
    ));

    report.count("edge_count", edge_count);
    match classify(&inst.graph, &inst.group) {
        Ok(tr) => {
            report.push(CheckVerdict::of(
                "edge_transitive",
                tr.edge_transitive,
                format!("{:?}", tr.get_case),
            ));
            report.push(CheckVerdict::of(
                "edge_regular",
                tr.edge_transitive && order == edge_count,
                format!("|G| = {order}, |E| = {edge_count}"),
            ));
            report.count("vertex_orbits", tr.vertex_orbit_count as u128);
            report.push(CheckVerdict::of(
                "two_vertex_orbits",
                tr.vertex_orbit_count == 2,
                format!("{} orbits", tr.vertex_orbit_count),
            ));
            report.push(CheckVerdict::of(
                "locally_arc_transitive",
                tr.locally_arc_transitive,
                "every vertex stabilizer transitive on its neighbourhood",
            ));
        }
        Err(e) => report.push(CheckVerdict::fail("edge_transitive", e.to_string())),
    }

    match involution_survey(&inst.group, cap) {
        Ok((count, without_fixed, sample)) => {
            report.count("involutions", count as u128);
            let table: Vec<String> = sample
                .iter()
                .map(|(p, v)| format!("{p} fixes {v}"))
                .collect();
            report.push(CheckVerdict::of(
                "every_involution_fixes_a_vertex",
                without_fixed == 0,
                format!(
                    "{count} involutions, {without_fixed} fixed-point-free; {}",
                    table.join("; ")
                ),
            ));
        }
        Err(e) => report.push(CheckVerdict::inconclusive(
            "every_involution_fixes_a_vertex",
            e.to_string(),
            cap,
        )),
    }

    match find_semiregular(&inst.group, &[], cap) {
        Ok(scan) => {
            report.count("prime_order_scanned", scan.prime_order_scanned as u128);
            report.push(CheckVerdict::of(
                "no_semiregular_element",
                scan.certificate.is_none(),
                format!("{} prime-order elements scanned", scan.prime_order_scanned),
            ));
        }
        Err(e) => report.push(CheckVerdict::inconclusive(
            "no_semiregular_element",
            e.to_string(),
            cap,
        )),
    }

    report.timing_ms = start.elapsed().as_millis();
    report
}

/// Second construction: G = ⟨x, τ, z⟩ ≤ Aut(DD(W(2^n,2))) of order
/// 2^(n+5), with ω = α₁α₃…, x = α₁α₁'σ and z = ωt, everything written in
/// the primed labeling 1,1',…,2^n,(2^n)'.
#[derive(Debug, Clone)]
pub struct Lemma42Instance {
    pub n: u32,
    /// The base graph in the primed labeling; label (i, primed) sits at
    /// index 2(i−1) + primed.
    pub base: Graph,
    pub base_labeling: WreathLabeling,
    pub sigma_graph: Graph,
    pub labeling: DoubleLabeling,
    pub t: Permutation,
    pub sigma: Permutation,
    pub tau: Permutation,
    pub omega: Permutation,
    pub x: Permutation,
    pub z: Permutation,
    pub group: GeneratedGroup,
}

impl Lemma42Instance {
    /// Base-graph vertex index of the label `i` (1-based) or `i'`.
    pub fn base_vertex(&self, i: usize, primed: bool) -> usize {
        let m = 1usize << self.n;
        2 * ((i - 1) % m) + usize::from(primed)
    }

    /// The primed name of a base-graph vertex index.
    pub fn base_label(&self, v: usize) -> String {
        let (pos, primed) = self.base_labeling.position(v);
        format!("{}{}", pos + 1, if primed == 1 { "'" } else { "" })
    }

    /// Σ-vertex carrying the base edge {i, j} (both unprimed labels).
    pub fn sigma_edge_vertex(&self, a: usize, b: usize) -> Option<usize> {
        self.labeling.edge_index(a, b).map(|k| self.labeling.edge_vertex(k))
    }

    /// Human-readable Σ-vertex labels in the primed naming.
    pub fn vertex_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = self
            .labeling
            .base_edges
            .iter()
            .map(|&(u, v)| format!("e{{{},{}}}", self.base_label(u), self.base_label(v)))
            .collect();
        for v in 0..self.labeling.base_vertex_count {
            for i in 0..2 {
                labels.push(format!("({},{i})", self.base_label(v)));
            }
        }
        labels
    }
}

pub fn build_lemma42(n: u32) -> Result<Lemma42Instance, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::ParameterTooSmall {
            family: "second construction",
            min: 2,
            got: n,
        });
    }
    let m = 1usize << n;
    let (base, base_labeling) = wreath(m)?;
    let (sigma_graph, labeling) = subdivided_double(&base)?;
    let total = sigma_graph.vertex_count();

    // base-graph maps in the primed labeling: label i ↦ ring position i−1
    let base_vertex = |i: usize, primed: bool| 2 * ((i - 1) % m) + usize::from(primed);
    // t swaps i ↔ i' for odd labels i
    let t_base = {
        let mut images: Vec<usize> = (0..2 * m).collect();
        for i in (1..=m).step_by(2) {
            images.swap(base_vertex(i, false), base_vertex(i, true));
        }
        Permutation::from_images(images).expect("t is an involution")
    };
    // σ shifts labels by one, preserving primes
    let sigma_base = {
        let images = (0..2 * m)
            .map(|v| {
                let (pos, primed) = base_labeling.position(v);
                base_labeling.vertex_of((pos + 1) % m, primed)
            })
            .collect();
        Permutation::from_images(images).expect("σ is bijective")
    };
    // τ: i ↦ −i+3 on labels, i.e. ring position a ↦ 1−a
    let tau_base = {
        let images = (0..2 * m)
            .map(|v| {
                let (pos, primed) = base_labeling.position(v);
                base_labeling.vertex_of((m + 1 - (pos % m)) % m, primed)
            })
            .collect();
        Permutation::from_images(images).expect("τ is bijective")
    };

    let embed = |g: &Permutation| -> Permutation {
        labeling
            .induce_automorphism(g)
            .expect("base automorphisms lift to the double")
    };
    let alpha_v = |v: usize| labeling.twin_flip(v);

    let t = embed(&t_base);
    let sigma = embed(&sigma_base);
    let tau = embed(&tau_base);
    let omega = (1..=m)
        .step_by(2)
        .fold(Permutation::identity(total), |acc, i| {
            acc.then(&alpha_v(base_vertex(i, false)))
        });
    let x = alpha_v(base_vertex(1, false))
        .then(&alpha_v(base_vertex(1, true)))
        .then(&sigma);
    let z = omega.then(&t);
    let group = GeneratedGroup::new(total, vec![x.clone(), tau.clone(), z.clone()])
        .expect("generators share the domain");

    identity_check(x.order() == 2 * m as u64, "|x| = 2^(n+1)")?;
    identity_check(tau.order() == 2, "|τ| = 2")?;
    identity_check(z.order() == 4, "|z| = 4")?;
    identity_check(x.then(&tau).order() == 2, "(xτ)² = 1")?;
    let z_tau = z.conjugate_by(&tau).expect("same degree");
    identity_check(z.then(&z_tau) == z_tau.then(&z), "z·z^τ = z^τ·z")?;
    identity_check(
        x.pow(m as i64) == z.pow(2).then(&z_tau.pow(2)),
        "x^(2^n) = z²(z^τ)²",
    )?;
    let z_pair = GeneratedGroup::new(total, vec![z.clone(), z_tau.clone()])
        .expect("generators share the domain");
    identity_check(z_pair.order() == 16, "⟨z, z^τ⟩ ≅ C₄ × C₄")?;

    Ok(Lemma42Instance {
        n,
        base,
        base_labeling,
        sigma_graph,
        labeling,
        t,
        sigma,
        tau,
        omega,
        x,
        z,
        group,
    })
}

pub fn verify_lemma42(inst: &Lemma42Instance, cap: u64) -> RunReport {
    let start = std::time::Instant::now();
    let input_digest = digest(&[
        "lemma42",
        &inst.n.to_string(),
        &serde_json::to_string(&inst.group).unwrap(),
    ]);
    let mut report = RunReport::new(format!("lemma42 n={}", inst.n), input_digest);
    let m = 1usize << inst.n;
    let expected_order = 1u128 << (inst.n + 5);

    let gens_ok = inst
        .group
        .generators()
        .iter()
        .all(|p| inst.sigma_graph.is_automorphism(p));
    report.push(CheckVerdict::of(
        "generators_are_automorphisms",
        gens_ok,
        format!("{} generators on {} vertices", inst.group.generators().len(), inst.sigma_graph.vertex_count()),
    ));

    let order = inst.group.order();
    report.count("group_order", order);
    report.push(CheckVerdict::of(
        "group_order_is_2_pow_n_plus_5",
        order == expected_order,
        format!("|G| = {order}, expected {expected_order}"),
    ));

    // the four printed identities, re-checked at verify time
    let z_tau = inst.z.conjugate_by(&inst.tau).expect("same degree");
    report.push(CheckVerdict::of(
        "x_order_is_2_pow_n_plus_1",
        inst.x.order() == 2 * m as u64,
        format!("|x| = {}", inst.x.order()),
    ));
    report.push(CheckVerdict::of(
        "z_order_is_4",
        inst.z.order() == 4,
        format!("|z| = {}", inst.z.order()),
    ));
    report.push(CheckVerdict::of(
        "z_commutes_with_z_tau",
        inst.z.then(&z_tau) == z_tau.then(&inst.z),
        "z·z^τ = z^τ·z",
    ));
    report.push(CheckVerdict::of(
        "x_pow_2n_is_z2_ztau2",
        inst.x.pow(m as i64) == inst.z.pow(2).then(&z_tau.pow(2)),
        "x^(2^n) = z²(z^τ)²",
    ));

    match classify(&inst.sigma_graph, &inst.group) {
        Ok(tr) => report.push(CheckVerdict::of(
            "edge_transitive_on_sigma",
            tr.edge_transitive,
            format!("{:?}", tr.get_case),
        )),
        Err(e) => report.push(CheckVerdict::fail("edge_transitive_on_sigma", e.to_string())),
    }

    match involution_survey(&inst.group, cap) {
        Ok((count, without_fixed, sample)) => {
            report.count("involutions", count as u128);
            report.push(CheckVerdict::of(
                "every_involution_fixes_a_vertex",
                without_fixed == 0,
                format!(
                    "{count} involutions, {without_fixed} fixed-point-free; {}",
                    sample
                        .iter()
                        .map(|(p, v)| format!("{p} fixes {v}"))
                        .collect::<Vec<_>>()
                        .join("; ")
                ),
            ));
        }
        Err(e) => report.push(CheckVerdict::inconclusive(
            "every_involution_fixes_a_vertex",
            e.to_string(),
            cap,
        )),
    }

    match find_semiregular(&inst.group, &[], cap) {
        Ok(scan) => {
            report.count("prime_order_scanned", scan.prime_order_scanned as u128);
            report.push(CheckVerdict::of(
                "no_semiregular_element",
                scan.certificate.is_none(),
                format!("{} prime-order elements scanned", scan.prime_order_scanned),
            ));
        }
        Err(e) => report.push(CheckVerdict::inconclusive(
            "no_semiregular_element",
            e.to_string(),
            cap,
        )),
    }

    // the six involution-class representatives fix the printed vertices
    let edge_vertex_count = inst.labeling.base_edges.len();
    let fixes_all_edge_vertices =
        |p: &Permutation| (0..edge_vertex_count).all(|v| p.image(v) == v);
    let z2 = inst.z.pow(2);
    let x_2n = inst.x.pow(m as i64);
    let x_tau = inst.x.then(&inst.tau);
    let rep_pair = |i: usize| inst.labeling.pair_vertex(inst.base_vertex(i, false), 0);
    let tau_fixed_edge = inst
        .sigma_edge_vertex(inst.base_vertex(1, false), inst.base_vertex(2, false))
        .map(|v| inst.tau.image(v) == v)
        .unwrap_or(false);
    let half = m / 2 + 1;
    let reps_ok = [
        ("z²", fixes_all_edge_vertices(&z2)),
        ("x^(2^n)", fixes_all_edge_vertices(&x_2n)),
        ("τ", tau_fixed_edge),
        ("xτ", x_tau.image(rep_pair(half)) == rep_pair(half)),
        (
            "z²xτ",
            z2.then(&x_tau).image(rep_pair(1)) == rep_pair(1),
        ),
        (
            "(z^τ)²xτ",
            z_tau
                .pow(2)
                .then(&x_tau)
                .image(rep_pair(half))
                == rep_pair(half),
        ),
    ];
    let failures: Vec<&str> = reps_ok
        .iter()
        .filter_map(|&(name, ok)| (!ok).then_some(name))
        .collect();
    report.push(CheckVerdict::of(
        "involution_representatives_fix_printed_vertices",
        failures.is_empty(),
        if failures.is_empty() {
            "z², x^(2^n), τ, xτ, z²xτ, (z^τ)²xτ all fix their printed vertices".to_string()
        } else {
            format!("failing representatives: {}", failures.join(", "))
        },
    ));

    report.timing_ms = start.elapsed().as_millis();
    report
}
