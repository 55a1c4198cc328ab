//! Automorphism groups, induced actions on edges and neighbourhoods, and
//! the edge-transitivity classifier.
//!
//! The automorphism search walks the pointwise-stabilizer tower of the
//! vertex ordering: at level k it looks, for every candidate image w of
//! vertex k, for one automorphism fixing 0..k-1 and sending k to w. The
//! collected witnesses generate the full group. Candidates are pruned by
//! iterated neighbourhood refinement, ties broken by smallest vertex index,
//! so runs are deterministic.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::group::{GeneratedGroup, GroupError};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("group domain {group} does not match vertex count {graph}")]
    DomainMismatch { group: usize, graph: usize },
    #[error("generator {index} is not an automorphism of the graph")]
    NotAnAutomorphism { index: usize },
    #[error("edge action failed to be faithful on a connected graph with ≥ 3 vertices")]
    EdgeActionNotFaithful,
    #[error("classification invariant violated: {0}")]
    InvariantViolated(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Iterated equitable refinement of an initial colouring: vertices are
/// re-coloured by (colour, sorted neighbour-colour multiset) until stable.
/// Colour ids are assigned in first-occurrence order, which makes the map
/// idempotent once the partition stabilizes.
fn equitable_refinement(g: &Graph, initial: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colors = initial.to_vec();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nbr: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nbr.sort_unstable();
                (colors[v], nbr)
            })
            .collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for sig in &signatures {
            let next = ids.len();
            ids.entry(sig).or_insert(next);
        }
        let new_colors: Vec<usize> = signatures.iter().map(|sig| ids[sig]).collect();
        if new_colors == colors {
            return colors;
        }
        colors = new_colors;
    }
}

/// Colouring with vertices `0..k` individualized and the rest refined
/// around them. Any automorphism fixing `0..k` pointwise preserves it.
fn refinement_with_prefix(g: &Graph, k: usize) -> Vec<usize> {
    let initial: Vec<usize> = (0..g.vertex_count()).map(|v| v.min(k)).collect();
    equitable_refinement(g, &initial)
}

/// Backtracking search for a single automorphism that fixes `0..prefix`
/// pointwise and maps `prefix` to `target`. `colors` must be invariant
/// under every such automorphism.
fn search_automorphism(
    g: &Graph,
    colors: &[usize],
    prefix: usize,
    target: usize,
) -> Option<Permutation> {
    let n = g.vertex_count();
    if colors[prefix] != colors[target] {
        return None;
    }
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut assigned: Vec<usize> = Vec::with_capacity(n);
    for v in 0..prefix {
        image[v] = Some(v);
        used[v] = true;
        assigned.push(v);
    }
    if !consistent(g, &image, &assigned, prefix, target) {
        return None;
    }
    image[prefix] = Some(target);
    used[target] = true;
    assigned.push(prefix);

    // assignment order: most already-assigned neighbours first
    let order = assignment_order(g, prefix + 1);

    fn extend(
        g: &Graph,
        colors: &[usize],
        order: &[usize],
        pos: usize,
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        assigned: &mut Vec<usize>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        // prefer candidates adjacent to the image of an assigned neighbour
        let anchor = g
            .neighbors(v)
            .iter()
            .find_map(|&u| image[u]);
        let candidates: Vec<usize> = match anchor {
            Some(mapped) => g.neighbors(mapped).to_vec(),
            None => (0..g.vertex_count()).collect(),
        };
        for cand in candidates {
            if used[cand] || colors[cand] != colors[v] {
                continue;
            }
            if !consistent(g, image, assigned, v, cand) {
                continue;
            }
            image[v] = Some(cand);
            used[cand] = true;
            assigned.push(v);
            if extend(g, colors, order, pos + 1, image, used, assigned) {
                return true;
            }
            assigned.pop();
            used[cand] = false;
            image[v] = None;
        }
        false
    }

    if extend(g, colors, &order, 0, &mut image, &mut used, &mut assigned) {
        let images: Vec<usize> = image.into_iter().map(Option::unwrap).collect();
        Some(Permutation::from_images(images).expect("bijection by construction"))
    } else {
        None
    }
}

fn consistent(g: &Graph, image: &[Option<usize>], assigned: &[usize], v: usize, cand: usize) -> bool {
    assigned.iter().all(|&u| {
        let mapped = image[u].unwrap();
        g.has_edge(u, v) == g.has_edge(mapped, cand)
    })
}

fn assignment_order(g: &Graph, seeded: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    placed[..seeded.min(n)].fill(true);
    let mut order = Vec::with_capacity(n.saturating_sub(seeded));
    for _ in seeded..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let attached = g.neighbors(v).iter().filter(|&&u| placed[u]).count();
                (attached, std::cmp::Reverse(v))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    order
}

/// Generators of the full automorphism group, found by the
/// stabilizer-tower sweep described in the module docs.
pub fn automorphism_group(g: &Graph) -> GeneratedGroup {
    let n = g.vertex_count();
    let mut gens: Vec<Permutation> = Vec::new();
    for k in 0..n {
        let colors = refinement_with_prefix(g, k);
        let cell: Vec<usize> = (k + 1..n).filter(|&w| colors[w] == colors[k]).collect();
        if cell.is_empty() {
            continue;
        }
        // skip images already reachable from k inside the current stabilizer:
        // only generators fixing 0..k pointwise may be used here, otherwise
        // the level-k transversal comes out incomplete
        let fixing: Vec<Permutation> = gens
            .iter()
            .filter(|p| (0..k).all(|v| p.image(v) == v))
            .cloned()
            .collect();
        let reached = GeneratedGroup::new(n, fixing)
            .expect("degrees agree")
            .orbit_of(k);
        for w in cell {
            if reached.contains(&w) {
                continue;
            }
            if let Some(p) = search_automorphism(g, &colors, k, w) {
                gens.push(p);
            }
        }
    }
    GeneratedGroup::new(n, gens).expect("degrees agree")
}

/// The induced permutation group on the canonical edge indexing
/// (lexicographically sorted vertex pairs).
#[derive(Debug, Clone)]
pub struct EdgeAction {
    pub edges: Vec<(usize, usize)>,
    pub group: GeneratedGroup,
}

impl EdgeAction {
    /// Image of a vertex permutation on edge indices.
    pub fn induce(&self, p: &Permutation) -> Result<Permutation, SymmetryError> {
        let index: BTreeMap<(usize, usize), usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, k))
            .collect();
        let images = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (p.image(u), p.image(v));
                index
                    .get(&(a.min(b), a.max(b)))
                    .copied()
                    .ok_or(SymmetryError::NotAnAutomorphism { index: 0 })
            })
            .collect::<Result<Vec<usize>, _>>()?;
        Ok(Permutation::from_images(images).expect("bijection"))
    }
}

/// Induced action of `grp` on the edge set of `g`. When `g` is connected
/// with at least 3 vertices the action is checked to be faithful.
pub fn edge_action(g: &Graph, grp: &GeneratedGroup) -> Result<EdgeAction, SymmetryError> {
    if grp.domain_size() != g.vertex_count() {
        return Err(SymmetryError::DomainMismatch {
            group: grp.domain_size(),
            graph: g.vertex_count(),
        });
    }
    let edges = g.edges();
    let index: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut induced_gens = Vec::with_capacity(grp.generators().len());
    for (gi, p) in grp.generators().iter().enumerate() {
        let images = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (p.image(u), p.image(v));
                index
                    .get(&(a.min(b), a.max(b)))
                    .copied()
                    .ok_or(SymmetryError::NotAnAutomorphism { index: gi })
            })
            .collect::<Result<Vec<usize>, _>>()?;
        induced_gens.push(Permutation::from_images(images).expect("bijection"));
    }
    let action = EdgeAction {
        edges,
        group: GeneratedGroup::new(g.edge_count(), induced_gens)?,
    };
    if g.vertex_count() >= 3 && g.is_connected() && action.group.order() != grp.order() {
        return Err(SymmetryError::EdgeActionNotFaithful);
    }
    Ok(action)
}

/// The permutation group induced by the vertex stabilizer on the
/// neighbourhood, on neighbourhood positions.
#[derive(Debug, Clone)]
pub struct LocalAction {
    pub vertex: usize,
    pub neighborhood: Vec<usize>,
    pub group: GeneratedGroup,
}

pub fn local_action(
    g: &Graph,
    grp: &GeneratedGroup,
    v: usize,
) -> Result<LocalAction, SymmetryError> {
    if grp.domain_size() != g.vertex_count() {
        return Err(SymmetryError::DomainMismatch {
            group: grp.domain_size(),
            graph: g.vertex_count(),
        });
    }
    let stab = grp.stabilizer(v)?;
    let neighborhood = g.neighbors(v).to_vec();
    let position: BTreeMap<usize, usize> = neighborhood
        .iter()
        .enumerate()
        .map(|(i, &w)| (w, i))
        .collect();
    let mut gens = Vec::new();
    for s in stab.generators() {
        let images: Vec<usize> = neighborhood.iter().map(|&w| position[&s.image(w)]).collect();
        let p = Permutation::from_images(images).expect("stabilizer permutes the neighbourhood");
        if !p.is_identity() {
            gens.push(p);
        }
    }
    Ok(LocalAction {
        vertex: v,
        neighborhood: neighborhood.clone(),
        group: GeneratedGroup::new(neighborhood.len(), gens)?,
    })
}

/// Transitive on ordered pairs of distinct points (vacuously for ≤ 1 point).
pub fn is_two_transitive(grp: &GeneratedGroup) -> bool {
    let n = grp.domain_size();
    if n <= 1 {
        return true;
    }
    if !grp.is_transitive() {
        return false;
    }
    // orbit of the pair (0, 1) must reach all n(n-1) ordered pairs
    let mut seen = BTreeSet::from([(0usize, 1usize)]);
    let mut queue = vec![(0usize, 1usize)];
    while let Some((a, b)) = queue.pop() {
        for s in grp.generators() {
            let next = (s.image(a), s.image(b));
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    seen.len() == n * (n - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GetCase {
    ArcTransitive,
    HalfArcTransitive,
    BipartiteBiOrbit,
    NotEdgeTransitive,
}

/// How a group acts on a connected graph, following the standard
/// trichotomy for edge-transitive actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub locally_arc_transitive: bool,
    pub get_case: GetCase,
    pub vertex_orbit_count: usize,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let root = self.find(self.0[x]);
            self.0[x] = root;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    fn class_count(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

pub fn classify(g: &Graph, grp: &GeneratedGroup) -> Result<TransitivityReport, SymmetryError> {
    if !g.is_connected() {
        return Err(SymmetryError::NotConnected);
    }
    for (i, p) in grp.generators().iter().enumerate() {
        if !g.is_automorphism(p) {
            return Err(SymmetryError::NotAnAutomorphism { index: i });
        }
    }
    let vertex_orbits = grp.orbits();
    let vertex_transitive = vertex_orbits.len() == 1;
    if g.edge_count() == 0 {
        return Ok(TransitivityReport {
            vertex_transitive,
            edge_transitive: false,
            arc_transitive: false,
            locally_arc_transitive: false,
            get_case: GetCase::NotEdgeTransitive,
            vertex_orbit_count: vertex_orbits.len(),
        });
    }
    let action = edge_action(g, grp)?;
    let edge_transitive = action.group.orbits().len() == 1;

    // arc orbits: arcs of edge k are 2k (u→v) and 2k+1 (v→u)
    let arc_index: BTreeMap<(usize, usize), usize> = action
        .edges
        .iter()
        .enumerate()
        .flat_map(|(k, &(u, v))| [((u, v), 2 * k), ((v, u), 2 * k + 1)])
        .collect();
    let mut dsu = Dsu::new(2 * action.edges.len());
    for p in grp.generators() {
        for (&(u, v), &idx) in &arc_index {
            dsu.union(idx, arc_index[&(p.image(u), p.image(v))]);
        }
    }
    let arc_transitive = dsu.class_count() == 1;

    let locally_arc_transitive = vertex_orbits
        .iter()
        .map(|orbit| orbit[0])
        .try_fold(true, |acc, v| -> Result<bool, SymmetryError> {
            Ok(acc && local_action(g, grp, v)?.group.is_transitive())
        })?;

    let get_case = if !edge_transitive {
        GetCase::NotEdgeTransitive
    } else if arc_transitive {
        GetCase::ArcTransitive
    } else if vertex_transitive {
        // half-arc-transitive: the local action must split the
        // neighbourhood into two orbits of equal size
        let local = local_action(g, grp, vertex_orbits[0][0])?;
        let orbits = local.group.orbits();
        if orbits.len() != 2 || orbits[0].len() != orbits[1].len() {
            return Err(SymmetryError::InvariantViolated(
                "vertex- and edge- but not arc-transitive action without two equal local orbits",
            ));
        }
        GetCase::HalfArcTransitive
    } else {
        let parts = g.bipartition().ok_or(SymmetryError::InvariantViolated(
            "edge-transitive, not vertex-transitive, yet not bipartite",
        ))?;
        let orbit_sets: Vec<BTreeSet<usize>> = vertex_orbits
            .iter()
            .map(|o| o.iter().copied().collect())
            .collect();
        let matches = orbit_sets.len() == 2
            && ((orbit_sets[0] == parts.part_a && orbit_sets[1] == parts.part_b)
                || (orbit_sets[0] == parts.part_b && orbit_sets[1] == parts.part_a));
        if !matches {
            return Err(SymmetryError::InvariantViolated(
                "vertex orbits do not coincide with the bipartition parts",
            ));
        }
        GetCase::BipartiteBiOrbit
    };

    Ok(TransitivityReport {
        vertex_transitive,
        edge_transitive,
        arc_transitive,
        locally_arc_transitive,
        get_case,
        vertex_orbit_count: vertex_orbits.len(),
    })
}

/// Seeded product-replacement walk yielding pseudo-random group elements.
struct RandomWalk {
    pool: Vec<Permutation>,
    rng: ChaCha8Rng,
}

impl RandomWalk {
    fn new(grp: &GeneratedGroup, seed: u64) -> Self {
        let mut pool: Vec<Permutation> = grp.generators().to_vec();
        let id = Permutation::identity(grp.domain_size());
        while pool.len() < 4 {
            pool.push(id.clone());
        }
        let mut walk = RandomWalk {
            pool,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..32 {
            walk.step();
        }
        walk
    }

    fn step(&mut self) -> Permutation {
        let i = self.rng.gen_range(0..self.pool.len());
        let mut j = self.rng.gen_range(0..self.pool.len());
        while j == i {
            j = self.rng.gen_range(0..self.pool.len());
        }
        let other = if self.rng.gen_bool(0.5) {
            self.pool[j].clone()
        } else {
            self.pool[j].inverse()
        };
        self.pool[i] = self.pool[i].then(&other);
        self.pool[i].clone()
    }
}

/// Subgroups generated by random elements of `grp`, filtered to those that
/// still act edge-transitively on `g`. Deterministic for a fixed seed; may
/// return fewer than `count`.
pub fn random_edge_transitive_subgroups(
    g: &Graph,
    grp: &GeneratedGroup,
    count: usize,
    seed: u64,
) -> Result<Vec<GeneratedGroup>, SymmetryError> {
    let action = edge_action(g, grp)?;
    if action.group.orbits().len() != 1 {
        return Err(SymmetryError::InvariantViolated(
            "sampling requires an edge-transitive ambient group",
        ));
    }
    let mut walk = RandomWalk::new(grp, seed);
    let mut found = Vec::new();
    let mut attempts = 0usize;
    let max_attempts = count.saturating_mul(60).max(60);
    while found.len() < count && attempts < max_attempts {
        attempts += 1;
        let gens = vec![walk.step(), walk.step()];
        let candidate = GeneratedGroup::new(g.vertex_count(), gens)?;
        let mut dsu = Dsu::new(action.edges.len());
        let index: BTreeMap<(usize, usize), usize> = action
            .edges
            .iter()
            .enumerate()
            .map(|(k, &e)| (e, k))
            .collect();
        for p in candidate.generators() {
            for (k, &(u, v)) in action.edges.iter().enumerate() {
                let (a, b) = (p.image(u), p.image(v));
                dsu.union(k, index[&(a.min(b), a.max(b))]);
            }
        }
        if dsu.class_count() == 1 {
            found.push(candidate);
        }
    }
    Ok(found)
}

/// The subgroup preserving `part` setwise: the whole group when no
/// generator crosses, otherwise the index-2 kernel of the crossing sign,
/// generated by the Schreier products.
pub fn part_preserving_subgroup(
    grp: &GeneratedGroup,
    part: &BTreeSet<usize>,
) -> Result<GeneratedGroup, SymmetryError> {
    let crosses = |p: &Permutation| !p.preserves_setwise(part);
    let Some(t) = grp.generators().iter().find(|p| crosses(p)).cloned() else {
        return Ok(grp.clone());
    };
    let t_inv = t.inverse();
    // Schreier generators for the transversal {1, t}: s and t·s·t⁻¹ when s
    // preserves the part, s·t⁻¹ and t·s when it crosses
    let mut gens = Vec::new();
    for s in grp.generators() {
        if crosses(s) {
            gens.push(s.then(&t_inv));
            gens.push(t.then(s));
        } else {
            gens.push(s.clone());
            gens.push(t.then(s).then(&t_inv));
        }
    }
    gens.retain(|p| !p.is_identity());
    for p in &gens {
        debug_assert!(p.preserves_setwise(part));
    }
    Ok(GeneratedGroup::new(grp.domain_size(), gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, wreath};
    use crate::named;

    /// Independent oracle: filter all n! permutations (n ≤ 8).
    fn brute_force_aut_order(g: &Graph) -> usize {
        fn go(g: &Graph, images: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let v = images.len();
            if v == g.vertex_count() {
                *count += 1;
                return;
            }
            for cand in 0..g.vertex_count() {
                if used[cand] {
                    continue;
                }
                if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(images[u], cand)) {
                    images.push(cand);
                    used[cand] = true;
                    go(g, images, used, count);
                    used[cand] = false;
                    images.pop();
                }
            }
        }
        let mut count = 0;
        go(g, &mut Vec::new(), &mut vec![false; g.vertex_count()], &mut count);
        count
    }

    #[test]
    fn automorphism_group_matches_brute_force_on_small_graphs() {
        for (g, expected) in [
            (named::cycle(5), 10),
            (named::complete(4), 24),
            (complete_bipartite(3, 3), 72),
            (Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap(), 2),
            (named::cycle(4), 8),
            (complete_bipartite(3, 4), 144),
            (named::hypercube(3), 48),
            (wreath(3).unwrap().0, 48),
            (complete_bipartite(4, 4), 1152),
        ] {
            let aut = automorphism_group(&g);
            for p in aut.generators() {
                assert!(g.is_automorphism(p));
            }
            assert_eq!(aut.order(), expected);
            assert_eq!(brute_force_aut_order(&g) as u128, expected);
        }
    }

    #[test]
    fn automorphism_group_of_subdivided_doubles() {
        // Aut(DDΛ) contains the twin flips extended by Aut(Λ); for these
        // bases that is the whole group: 2^|V(Λ)| · |Aut(Λ)|
        let k5 = named::complete(5);
        let (dd_k5, _) = crate::families::subdivided_double(&k5).unwrap();
        assert_eq!(automorphism_group(&dd_k5).order(), (1u128 << 5) * 120);

        let k44 = complete_bipartite(4, 4);
        let (dd_k44, _) = crate::families::subdivided_double(&k44).unwrap();
        assert_eq!(automorphism_group(&dd_k44).order(), (1u128 << 8) * 1152);
    }

    #[test]
    fn automorphism_group_known_orders() {
        assert_eq!(automorphism_group(&named::petersen()).order(), 120);
        assert_eq!(automorphism_group(&named::heawood()).order(), 336);
        assert_eq!(automorphism_group(&named::pappus()).order(), 216);
        assert_eq!(automorphism_group(&named::moebius_kantor()).order(), 96);
        assert_eq!(automorphism_group(&named::hypercube(4)).order(), 384);
        // wreath graphs: 2^n twin flips extended by the dihedral group
        for n in [3usize, 5, 6, 7, 8] {
            let (w, _) = wreath(n).unwrap();
            assert_eq!(
                automorphism_group(&w).order(),
                (1u128 << n) * 2 * n as u128,
                "W({n},2)"
            );
        }
    }

    #[test]
    fn edge_action_shapes() {
        // K_3 with Sym(3): faithful on 3 edges
        let k3 = named::complete(3);
        let sym3 = automorphism_group(&k3);
        let action = edge_action(&k3, &sym3).unwrap();
        assert_eq!(action.group.order(), 6);

        // path on 3 vertices: order-2 group faithful on 2 edges
        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let aut = automorphism_group(&p3);
        assert_eq!(edge_action(&p3, &aut).unwrap().group.order(), 2);

        // K_2: induced action trivial on the single edge (the ≥ 3 vertex
        // hypothesis for faithfulness is sharp)
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let aut2 = automorphism_group(&k2);
        assert_eq!(aut2.order(), 2);
        let action2 = edge_action(&k2, &aut2).unwrap();
        assert_eq!(action2.group.order(), 1);

        // a non-automorphism generator is rejected
        let bogus = GeneratedGroup::new(3, vec![Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()])
            .unwrap();
        assert!(matches!(
            edge_action(&p3, &bogus),
            Err(SymmetryError::NotAnAutomorphism { .. })
        ));
    }

    #[test]
    fn local_action_of_k33() {
        let k33 = complete_bipartite(3, 3);
        let aut = automorphism_group(&k33);
        let stab = aut.stabilizer(0).unwrap();
        assert_eq!(stab.order(), 12);
        let local = local_action(&k33, &aut, 0).unwrap();
        // the stabilizer induces Sym(3) on the three neighbours; the kernel
        // has order 2
        assert_eq!(local.group.order(), 6);
        assert!(local.group.is_transitive());
    }

    #[test]
    fn local_action_trivial_for_rotation_only() {
        let c4 = named::cycle(4);
        let rotation = GeneratedGroup::new(4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()])
            .unwrap();
        let local = local_action(&c4, &rotation, 0).unwrap();
        assert_eq!(local.group.order(), 1);
        assert_eq!(local.group.orbits().len(), 2);
    }

    #[test]
    fn wreath_local_action_is_transitive() {
        let (w4, _) = wreath(4).unwrap();
        let aut = automorphism_group(&w4);
        let local = local_action(&w4, &aut, 0).unwrap();
        assert_eq!(local.neighborhood.len(), 4);
        assert!(local.group.is_transitive());
    }

    #[test]
    fn classify_rotation_on_c4_is_half_arc_transitive() {
        let c4 = named::cycle(4);
        let rotation = GeneratedGroup::new(4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()])
            .unwrap();
        let report = classify(&c4, &rotation).unwrap();
        assert!(report.vertex_transitive);
        assert!(report.edge_transitive);
        assert!(!report.arc_transitive);
        assert_eq!(report.get_case, GetCase::HalfArcTransitive);
        assert!(!report.locally_arc_transitive);
    }

    #[test]
    fn classify_k34_is_bipartite_biorbit() {
        let k34 = complete_bipartite(3, 4);
        let aut = automorphism_group(&k34);
        let report = classify(&k34, &aut).unwrap();
        assert!(!report.vertex_transitive);
        assert!(report.edge_transitive);
        assert_eq!(report.get_case, GetCase::BipartiteBiOrbit);
        assert!(report.locally_arc_transitive);
        assert_eq!(report.vertex_orbit_count, 2);
    }

    #[test]
    fn classify_petersen_is_arc_transitive() {
        let petersen = named::petersen();
        let aut = automorphism_group(&petersen);
        let report = classify(&petersen, &aut).unwrap();
        assert!(report.arc_transitive);
        assert_eq!(report.get_case, GetCase::ArcTransitive);
        assert!(report.locally_arc_transitive);
        // arc orbit of size 2|E| = 30 is exactly one orbit
        assert_eq!(petersen.edge_count() * 2, 30);
    }

    #[test]
    fn classify_rejects_disconnected() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let grp = GeneratedGroup::trivial(4);
        assert!(matches!(classify(&g, &grp), Err(SymmetryError::NotConnected)));
    }

    #[test]
    fn sampled_subgroups_are_edge_transitive_and_deterministic() {
        let k33 = complete_bipartite(3, 3);
        let aut = automorphism_group(&k33);
        let subs = random_edge_transitive_subgroups(&k33, &aut, 5, 7).unwrap();
        assert_eq!(subs.len(), 5);
        for sub in &subs {
            assert_eq!(aut.order() % sub.order(), 0);
            let report = classify(&k33, sub).unwrap();
            assert!(report.edge_transitive);
            for p in sub.generators() {
                assert!(aut.contains(p));
            }
        }
        let again = random_edge_transitive_subgroups(&k33, &aut, 5, 7).unwrap();
        let orders: Vec<u128> = subs.iter().map(|s| s.order()).collect();
        let orders_again: Vec<u128> = again.iter().map(|s| s.order()).collect();
        assert_eq!(orders, orders_again);

        assert!(random_edge_transitive_subgroups(&k33, &aut, 0, 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn sampling_from_the_rotation_group_of_c4() {
        // ⟨rotation⟩ is edge-transitive on C_4; sampled subgroups are the
        // cyclic subgroups, and only the full Z_4 survives the filter
        let c4 = named::cycle(4);
        let rotation = GeneratedGroup::new(4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()])
            .unwrap();
        let subs = random_edge_transitive_subgroups(&c4, &rotation, 3, 2).unwrap();
        for sub in &subs {
            assert_eq!(sub.order(), 4);
            assert!(classify(&c4, sub).unwrap().edge_transitive);
        }
    }

    #[test]
    fn part_preserving_subgroup_has_index_two() {
        let k33 = complete_bipartite(3, 3);
        let aut = automorphism_group(&k33);
        let parts = k33.bipartition().unwrap();
        let preserving = part_preserving_subgroup(&aut, &parts.part_a).unwrap();
        assert_eq!(preserving.order() * 2, aut.order());
        for p in preserving.generators() {
            assert!(p.preserves_setwise(&parts.part_a));
            assert!(aut.contains(p));
        }
        // exact kernel: every part-preserving element of Aut is reached
        for p in aut.elements(1_000_000).unwrap() {
            assert_eq!(
                preserving.contains(&p),
                p.preserves_setwise(&parts.part_a)
            );
        }
        // the same index-2 drop on the other bipartite corpus graphs
        for name in ["q3", "heawood", "k44"] {
            let g = crate::named::by_name(name).unwrap();
            let aut = automorphism_group(&g);
            let parts = g.bipartition().unwrap();
            let preserving = part_preserving_subgroup(&aut, &parts.part_a).unwrap();
            assert_eq!(preserving.order() * 2, aut.order(), "{name}");
        }

        // already part-preserving group comes back unchanged in order
        let rotation = GeneratedGroup::new(6, vec![Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap()])
            .unwrap();
        let same = part_preserving_subgroup(&rotation, &parts.part_a).unwrap();
        assert_eq!(same.order(), rotation.order());
    }

    #[test]
    fn two_transitivity() {
        let sym3 = automorphism_group(&named::complete(3));
        assert!(is_two_transitive(&sym3));
        let c4rot = GeneratedGroup::new(4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()])
            .unwrap();
        assert!(!is_two_transitive(&c4rot));
        assert!(is_two_transitive(&GeneratedGroup::trivial(1)));
    }
}
