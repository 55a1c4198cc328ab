//! Quotients of graphs by normal subgroups of automorphisms: the quotient
//! graph on orbits, the kernel of the induced action, valency bookkeeping,
//! and coprime lifting of semiregular elements from the quotient.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::group::{GeneratedGroup, GroupError};
use crate::perm::{PermError, Permutation};
use crate::symmetry::{is_two_transitive, local_action, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("normal generator {index} is not contained in the ambient group")]
    NotASubgroup { index: usize },
    #[error("subgroup is not normalized by ambient generator {ambient} (conjugate of {normal} escapes)")]
    NotNormal { ambient: usize, normal: usize },
    #[error("domain sizes differ: ambient {ambient}, normal {normal}")]
    DomainMismatch { ambient: usize, normal: usize },
    #[error("group domain {group} does not match vertex count {graph}")]
    GraphMismatch { group: usize, graph: usize },
    #[error("orders r = {r} and |K| = {kernel_order} are not coprime")]
    NotCoprime { r: u64, kernel_order: u128 },
    #[error("element of order {found} where order {expected} was required")]
    WrongOrder { expected: u64, found: u64 },
    #[error("element is not semiregular on the quotient domain")]
    NotSemiregularOnQuotient,
    #[error("no preimage of the quotient element exists in the ambient group")]
    NoPreimage,
    #[error("lemma violated: {0}")]
    LemmaViolated(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// A graph quotient by the orbits of a normal subgroup, together with the
/// kernel and the faithful induced action on orbits.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: Graph,
    /// Orbit index of each vertex; orbits numbered by smallest member.
    pub orbit_of: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    /// Elements of the ambient group fixing every orbit setwise.
    pub kernel: GeneratedGroup,
    /// The ambient group's action on orbit indices (≅ ambient/kernel).
    pub induced: GeneratedGroup,
}

impl QuotientResult {
    /// The block-action image of an ambient element.
    pub fn induce(&self, p: &Permutation) -> Permutation {
        let mut images = vec![0usize; self.blocks.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            images[b] = self.orbit_of[p.image(block[0])];
        }
        Permutation::from_images(images).expect("blocks permute")
    }
}

/// Checks `normal ≤ ambient` elementwise and normality by conjugating every
/// normal generator with every ambient generator; silent non-normality
/// would corrupt every downstream fact, so this is never skipped.
fn check_normal(ambient: &GeneratedGroup, normal: &GeneratedGroup) -> Result<(), QuotientError> {
    if ambient.domain_size() != normal.domain_size() {
        return Err(QuotientError::DomainMismatch {
            ambient: ambient.domain_size(),
            normal: normal.domain_size(),
        });
    }
    for (i, m) in normal.generators().iter().enumerate() {
        if !ambient.contains(m) {
            return Err(QuotientError::NotASubgroup { index: i });
        }
    }
    for (ai, a) in ambient.generators().iter().enumerate() {
        for (ni, m) in normal.generators().iter().enumerate() {
            if !normal.contains(&m.conjugate_by(a)?) {
                return Err(QuotientError::NotNormal {
                    ambient: ai,
                    normal: ni,
                });
            }
        }
    }
    Ok(())
}

/// Builds the quotient of `g` by the orbits of `normal`, with the kernel of
/// the ambient action on orbits found by a capped exhaustive filter.
pub fn quotient_by(
    g: &Graph,
    ambient: &GeneratedGroup,
    normal: &GeneratedGroup,
    cap: u64,
) -> Result<QuotientResult, QuotientError> {
    if ambient.domain_size() != g.vertex_count() {
        return Err(QuotientError::GraphMismatch {
            group: ambient.domain_size(),
            graph: g.vertex_count(),
        });
    }
    check_normal(ambient, normal)?;

    let blocks = normal.orbits();
    let mut orbit_of = vec![0usize; g.vertex_count()];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            orbit_of[v] = b;
        }
    }
    let mut quotient_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter_map(|&(u, v)| {
            let (bu, bv) = (orbit_of[u], orbit_of[v]);
            (bu != bv).then(|| (bu.min(bv), bu.max(bv)))
        })
        .collect();
    quotient_edges.sort_unstable();
    quotient_edges.dedup();
    let quotient = Graph::from_edge_list(blocks.len(), &quotient_edges)?;

    // kernel: every ambient element fixing each block setwise
    let kernel_gens: Vec<Permutation> = ambient
        .elements(cap)?
        .filter(|p| !p.is_identity() && (0..g.vertex_count()).all(|v| orbit_of[p.image(v)] == orbit_of[v]))
        .collect();
    let kernel = GeneratedGroup::new(g.vertex_count(), kernel_gens)?;

    let induced_gens: Vec<Permutation> = ambient
        .generators()
        .iter()
        .map(|p| {
            let images: Vec<usize> = blocks.iter().map(|block| orbit_of[p.image(block[0])]).collect();
            Permutation::from_images(images).expect("ambient permutes blocks")
        })
        .filter(|p| !p.is_identity())
        .collect();
    let induced = GeneratedGroup::new(blocks.len(), induced_gens)?;

    debug_assert_eq!(ambient.order(), kernel.order() * induced.order());

    Ok(QuotientResult {
        quotient,
        orbit_of,
        blocks,
        kernel,
        induced,
    })
}

/// The two numbers compared by the quotient-valency fact, with the
/// divisibility already asserted.
#[derive(Debug, Clone, Serialize)]
pub struct ValencyCheck {
    pub quotient_valency: usize,
    pub kernel_local_orbit_count: usize,
    pub ambient_local_two_transitive: bool,
}

/// Valency of `v`'s block in the quotient versus the orbit count of the
/// kernel stabilizer on Γ(v). The valency must divide the orbit count; when
/// the ambient local action at `v` is 2-transitive and the block valency
/// exceeds 1, the valency is preserved and the kernel local action trivial.
pub fn quotient_valency_check(
    qr: &QuotientResult,
    g: &Graph,
    ambient: &GeneratedGroup,
    v: usize,
) -> Result<ValencyCheck, QuotientError> {
    let quotient_valency = qr.quotient.degree(qr.orbit_of[v]);
    let kernel_local = local_action(g, &qr.kernel, v)?;
    let kernel_local_orbit_count = kernel_local.group.orbits().len();
    if quotient_valency > 0 && kernel_local_orbit_count % quotient_valency != 0 {
        return Err(QuotientError::LemmaViolated(
            "quotient valency does not divide the kernel's local orbit count",
        ));
    }
    let ambient_local = local_action(g, ambient, v)?;
    let ambient_local_two_transitive = is_two_transitive(&ambient_local.group);
    if ambient_local_two_transitive && quotient_valency > 1 {
        if quotient_valency != g.degree(v) {
            return Err(QuotientError::LemmaViolated(
                "2-transitive local action but block valency differs from vertex valency",
            ));
        }
        if kernel_local.group.order() != 1 {
            return Err(QuotientError::LemmaViolated(
                "2-transitive local action but kernel acts non-trivially on the neighbourhood",
            ));
        }
    }
    Ok(ValencyCheck {
        quotient_valency,
        kernel_local_orbit_count,
        ambient_local_two_transitive,
    })
}

/// Which route produced a lifted element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LiftRoute {
    /// The power `h^s` of an arbitrary preimage `h` already worked.
    Power,
    /// Fallback: scanned the kernel coset of the preimage.
    CosetScan,
}

#[derive(Debug, Clone)]
pub struct Lift {
    pub element: Permutation,
    pub route: LiftRoute,
}

/// Lifts a semiregular element of prime order `r` from the block action to
/// the ambient group, given that `r` is coprime to the kernel order.
///
/// Constructive route: pick any preimage `h`, confirm `r` divides its order
/// `m` and take `h^(m/r)`; should that candidate ever fail semiregularity
/// the kernel coset of `h` is scanned instead.
pub fn lift_semiregular(
    ambient: &GeneratedGroup,
    kernel: &GeneratedGroup,
    qr: &QuotientResult,
    induced_elt: &Permutation,
    r: u64,
    cap: u64,
) -> Result<Lift, QuotientError> {
    let kernel_order = kernel.order();
    // r is prime, so coprimality is just non-divisibility
    if r < 2 || kernel_order.is_multiple_of(r as u128) {
        return Err(QuotientError::NotCoprime { r, kernel_order });
    }
    if induced_elt.order() != r {
        return Err(QuotientError::WrongOrder {
            expected: r,
            found: induced_elt.order(),
        });
    }
    let block_domain: std::collections::BTreeSet<usize> = (0..qr.blocks.len()).collect();
    if !matches!(crate::perm::is_semiregular(induced_elt, &block_domain), Ok(Some(_))) {
        return Err(QuotientError::NotSemiregularOnQuotient);
    }

    let vertex_domain: std::collections::BTreeSet<usize> = (0..ambient.domain_size()).collect();
    let h = ambient
        .elements(cap)?
        .find(|p| &qr.induce(p) == induced_elt)
        .ok_or(QuotientError::NoPreimage)?;
    let m = h.order();
    if m % r == 0 {
        let candidate = h.pow((m / r) as i64);
        if candidate.order() == r
            && matches!(crate::perm::is_semiregular(&candidate, &vertex_domain), Ok(Some(_)))
        {
            return Ok(Lift {
                element: candidate,
                route: LiftRoute::Power,
            });
        }
    }
    // guaranteed to succeed on in-hypothesis inputs
    for k in kernel.elements(cap)? {
        let candidate = h.then(&k);
        if candidate.order() == r
            && matches!(crate::perm::is_semiregular(&candidate, &vertex_domain), Ok(Some(_)))
        {
            return Ok(Lift {
                element: candidate,
                route: LiftRoute::CosetScan,
            });
        }
    }
    Err(QuotientError::LemmaViolated(
        "no semiregular lift of the required order exists in the kernel coset",
    ))
}

/// Central elements of prime order, found by a capped scan; handy for
/// building normal subgroups in tests and the corpus harness.
pub fn central_prime_order_elements(
    grp: &GeneratedGroup,
    cap: u64,
) -> Result<Vec<Permutation>, QuotientError> {
    let mut found = Vec::new();
    for p in grp.elements(cap)? {
        if !crate::perm::is_prime(p.order()) {
            continue;
        }
        if grp
            .generators()
            .iter()
            .all(|s| p.then(s) == s.then(&p))
        {
            found.push(p);
        }
    }
    Ok(found)
}

/// Convenience: builds the normal subgroup generated by `gens` inside
/// `ambient`, verifying normality.
pub fn normal_subgroup(
    ambient: &GeneratedGroup,
    gens: Vec<Permutation>,
) -> Result<GeneratedGroup, QuotientError> {
    let sub = GeneratedGroup::new(ambient.domain_size(), gens)?;
    check_normal(ambient, &sub)?;
    Ok(sub)
}

/// Maps block structures through an explicit relabeling. Used to transport
/// groups between differently labeled copies of the same graph.
pub fn transport_group(
    grp: &GeneratedGroup,
    relabeling: &Permutation,
) -> Result<GeneratedGroup, QuotientError> {
    let gens: Vec<Permutation> = grp
        .generators()
        .iter()
        .map(|p| p.conjugate_by(relabeling))
        .collect::<Result<_, _>>()?;
    Ok(GeneratedGroup::new(relabeling.degree(), gens)?)
}

/// Re-expresses a quotient's blocks as a map for convenient lookups.
pub fn block_map(qr: &QuotientResult) -> BTreeMap<usize, Vec<usize>> {
    qr.blocks.iter().cloned().enumerate().collect()
}
