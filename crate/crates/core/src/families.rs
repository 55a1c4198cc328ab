//! Constructors and structural recognizers for the named graph families:
//! wreath graphs W(n,2), subdivided doubles DDΛ, subdivisions and complete
//! bipartite graphs. Constructors publish their labeling maps so that
//! certificates stay human-readable; recognizers are twin-contraction
//! based and certificate-producing, not generic isomorphism tests.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("wreath graphs need n ≥ 3, got {0}")]
    WreathTooSmall(usize),
    #[error("subdivided double needs at least one edge in the base graph")]
    EmptyEdgeSet,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex labeling of W(n,2): ring position `i ∈ Z_n` and twin slot
/// `u ∈ Z_2` sit at index `2i + u`.
#[derive(Debug, Clone, Serialize)]
pub struct WreathLabeling {
    pub n: usize,
}

impl WreathLabeling {
    pub fn vertex_of(&self, i: usize, u: usize) -> usize {
        2 * (i % self.n) + (u % 2)
    }

    pub fn position(&self, vertex: usize) -> (usize, usize) {
        (vertex / 2, vertex % 2)
    }

    pub fn vertex_labels(&self) -> Vec<String> {
        (0..2 * self.n)
            .map(|v| {
                let (i, u) = self.position(v);
                format!("({i},{u})")
            })
            .collect()
    }
}

/// Vertex labeling of DDΛ: the edge-vertex for base edge `k` (edges in the
/// base graph's lexicographic order) sits at index `k`; the pair-vertex
/// `(v, i)` sits at index `|E(Λ)| + 2v + i`.
#[derive(Debug, Clone, Serialize)]
pub struct DoubleLabeling {
    pub base_edges: Vec<(usize, usize)>,
    pub base_vertex_count: usize,
}

impl DoubleLabeling {
    pub fn edge_vertex(&self, edge_index: usize) -> usize {
        edge_index
    }

    pub fn pair_vertex(&self, v: usize, i: usize) -> usize {
        self.base_edges.len() + 2 * v + (i % 2)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.base_edges.binary_search(&key).ok()
    }

    pub fn vertex_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = self
            .base_edges
            .iter()
            .map(|&(u, v)| format!("e{{{u},{v}}}"))
            .collect();
        for v in 0..self.base_vertex_count {
            for i in 0..2 {
                labels.push(format!("({v},{i})"));
            }
        }
        labels
    }

    /// Lifts a base-graph automorphism to the subdivided double: the
    /// edge-vertex of `e` goes to the edge-vertex of `e^g` and `(v,i)` goes
    /// to `(v^g, i)`.
    pub fn induce_automorphism(&self, g: &Permutation) -> Option<Permutation> {
        let total = self.base_edges.len() + 2 * self.base_vertex_count;
        let mut images = Vec::with_capacity(total);
        for &(u, v) in &self.base_edges {
            images.push(self.edge_vertex(self.edge_index(g.image(u), g.image(v))?));
        }
        for v in 0..self.base_vertex_count {
            for i in 0..2 {
                images.push(self.pair_vertex(g.image(v), i));
            }
        }
        Permutation::from_images(images).ok()
    }

    /// The automorphism swapping `(v,0)` and `(v,1)` and fixing the rest.
    pub fn twin_flip(&self, v: usize) -> Permutation {
        let total = self.base_edges.len() + 2 * self.base_vertex_count;
        Permutation::from_cycles(total, &[vec![self.pair_vertex(v, 0), self.pair_vertex(v, 1)]])
            .expect("disjoint cycle")
    }
}

/// The wreath graph W(n,2): vertices `Z_n × Z_2`, with `(i,u)` adjacent to
/// `(j,v)` iff `i - j ≡ ±1 (mod n)`.
pub fn wreath(n: usize) -> Result<(Graph, WreathLabeling), FamilyError> {
    if n < 3 {
        return Err(FamilyError::WreathTooSmall(n));
    }
    let labeling = WreathLabeling { n };
    let mut edges = Vec::with_capacity(4 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        for u in 0..2 {
            for v in 0..2 {
                edges.push((labeling.vertex_of(i, u), labeling.vertex_of(j, v)));
            }
        }
    }
    Ok((Graph::from_edge_list(2 * n, &edges)?, labeling))
}

/// The subdivided double DDΛ: bipartite on E(Λ) ∪ (V(Λ) × Z_2), the
/// edge-vertex of `e` joined to `(v,i)` whenever `v` is an endvertex of `e`.
pub fn subdivided_double(base: &Graph) -> Result<(Graph, DoubleLabeling), FamilyError> {
    let base_edges = base.edges();
    if base_edges.is_empty() {
        return Err(FamilyError::EmptyEdgeSet);
    }
    let labeling = DoubleLabeling {
        base_edges: base_edges.clone(),
        base_vertex_count: base.vertex_count(),
    };
    let total = base_edges.len() + 2 * base.vertex_count();
    let mut edges = Vec::with_capacity(4 * base_edges.len());
    for (k, &(u, v)) in base_edges.iter().enumerate() {
        for i in 0..2 {
            edges.push((labeling.edge_vertex(k), labeling.pair_vertex(u, i)));
            edges.push((labeling.edge_vertex(k), labeling.pair_vertex(v, i)));
        }
    }
    Ok((Graph::from_edge_list(total, &edges)?, labeling))
}

/// The subdivision of Λ: one new degree-2 vertex per edge, replacing each
/// edge by a path of length 2. Edge `k` (lexicographic order) becomes
/// vertex `|V(Λ)| + k`.
pub fn subdivision(base: &Graph) -> Graph {
    let base_edges = base.edges();
    let n = base.vertex_count();
    let mut edges = Vec::with_capacity(2 * base_edges.len());
    for (k, &(u, v)) in base_edges.iter().enumerate() {
        edges.push((u, n + k));
        edges.push((v, n + k));
    }
    Graph::from_edge_list(n + base_edges.len(), &edges).expect("subdivision is simple")
}

/// K_{m,n} with parts `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let mut edges = Vec::with_capacity(m * n);
    for u in 0..m {
        for v in 0..n {
            edges.push((u, m + v));
        }
    }
    Graph::from_edge_list(m + n, &edges).expect("complete bipartite is simple")
}

/// A successful wreath recognition: the ring length and the map sending
/// the labeling position `(i,u)` (index `2i+u`) to the input's vertex.
#[derive(Debug, Clone)]
pub struct WreathMatch {
    pub n: usize,
    /// `vertex_of[2i+u]` is the input vertex playing the role of `(i,u)`.
    pub vertex_of: Vec<usize>,
}

/// Structural test for W(n,2): twin classes of size 2 whose contraction is
/// a cycle with every cross pair fully joined. The one wreath graph whose
/// twin classes are larger is W(4,2) = K_{4,4}, handled separately so the
/// round trip holds for every n ≥ 3.
pub fn recognize_wreath(g: &Graph) -> Option<WreathMatch> {
    if !g.is_connected() {
        return None;
    }
    let classes = g.twin_classes();
    if classes.len() == 2
        && classes.iter().all(|c| c.len() == 4)
        && g.vertex_count() == 8
        && g.regular_valency() == Some(4)
    {
        // candidate K_{4,4} = W(4,2): ring positions alternate between parts
        let a = &classes[0];
        let b = &classes[1];
        if a.iter()
            .all(|&u| b.iter().all(|&v| g.has_edge(u, v)))
        {
            let vertex_of = vec![a[0], a[1], b[0], b[1], a[2], a[3], b[2], b[3]];
            let matched = WreathMatch { n: 4, vertex_of };
            return reproduces_wreath(g, &matched).then_some(matched);
        }
        return None;
    }
    if classes.iter().any(|c| c.len() != 2) {
        return None;
    }
    let n = classes.len();
    if n < 3 {
        return None;
    }
    // contract twin classes and require a single cycle
    let class_of: BTreeMap<usize, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(idx, c)| c.iter().map(move |&v| (v, idx)))
        .collect();
    let mut class_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &g.edges() {
        let (cu, cv) = (class_of[&u], class_of[&v]);
        if cu == cv {
            return None;
        }
        if !class_adj[cu].contains(&cv) {
            class_adj[cu].push(cv);
            class_adj[cv].push(cu);
        }
    }
    if class_adj.iter().any(|adj| adj.len() != 2) {
        return None;
    }
    // walk the quotient cycle starting at the class of vertex 0
    let start = class_of[&0];
    let mut ring = vec![start];
    let mut prev = start;
    let mut current = *class_adj[start].iter().min().unwrap();
    while current != start {
        ring.push(current);
        let next = class_adj[current]
            .iter()
            .copied()
            .find(|&c| c != prev)
            .unwrap();
        prev = current;
        current = next;
    }
    if ring.len() != n {
        return None; // quotient is 2-regular but disconnected
    }
    let mut vertex_of = Vec::with_capacity(2 * n);
    for &class_idx in &ring {
        vertex_of.push(classes[class_idx][0]);
        vertex_of.push(classes[class_idx][1]);
    }
    let matched = WreathMatch { n, vertex_of };
    reproduces_wreath(g, &matched).then_some(matched)
}

fn reproduces_wreath(g: &Graph, m: &WreathMatch) -> bool {
    let Ok((expected, _)) = wreath(m.n) else {
        return false;
    };
    if g.vertex_count() != expected.vertex_count()
        || g.edge_count() != expected.edge_count()
        || m.vertex_of.len() != g.vertex_count()
    {
        return false;
    }
    expected
        .edges()
        .iter()
        .all(|&(u, v)| g.has_edge(m.vertex_of[u], m.vertex_of[v]))
}

/// A successful subdivided-double recognition: the rebuilt base graph and
/// the correspondence back into the input.
#[derive(Debug, Clone)]
pub struct DoubleMatch {
    pub base: Graph,
    /// Input vertex playing the role of the edge-vertex for base edge `k`.
    pub edge_vertex_of: Vec<usize>,
    /// Input vertex playing the role of `(v, i)` at index `2v + i`.
    pub pair_vertex_of: Vec<usize>,
}

/// Structural test for DDΛ: bipartite, one part made of valency-4 vertices
/// with trivial twins (the edge-vertices), the other partitioned into twin
/// classes of size exactly 2 (the `(v,0),(v,1)` pairs). Λ is rebuilt by
/// merging twin pairs and contracting edge-vertices, and the round trip is
/// checked before reporting success.
pub fn recognize_subdivided_double(g: &Graph) -> Option<DoubleMatch> {
    if !g.is_connected() {
        return None;
    }
    let parts = g.bipartition()?;
    let sides: [Vec<usize>; 2] = [
        parts.part_a.iter().copied().collect(),
        parts.part_b.iter().copied().collect(),
    ];
    let twin_class_of: BTreeMap<usize, Vec<usize>> = g
        .twin_classes()
        .into_iter()
        .flat_map(|class| {
            class
                .clone()
                .into_iter()
                .map(move |v| (v, class.clone()))
        })
        .collect();
    for (edge_side, pair_side) in [(&sides[0], &sides[1]), (&sides[1], &sides[0])] {
        if let Some(matched) = try_double_side(g, edge_side, pair_side, &twin_class_of) {
            return Some(matched);
        }
    }
    None
}

fn try_double_side(
    g: &Graph,
    edge_side: &[usize],
    pair_side: &[usize],
    twin_class_of: &BTreeMap<usize, Vec<usize>>,
) -> Option<DoubleMatch> {
    if edge_side
        .iter()
        .any(|&v| g.degree(v) != 4 || twin_class_of[&v].len() != 1)
    {
        return None;
    }
    let mut pair_classes: Vec<Vec<usize>> = Vec::new();
    for &v in pair_side {
        let class = &twin_class_of[&v];
        if class.len() != 2 {
            return None;
        }
        if class[0] == v {
            pair_classes.push(class.clone());
        }
    }
    pair_classes.sort_by_key(|c| c[0]);
    let base_index: BTreeMap<usize, usize> = pair_classes
        .iter()
        .enumerate()
        .flat_map(|(idx, c)| c.iter().map(move |&v| (v, idx)))
        .collect();
    // each edge-vertex must see exactly two full twin pairs
    let mut base_edges_with_source: Vec<((usize, usize), usize)> = Vec::new();
    for &e in edge_side {
        let mut endpoint_classes: Vec<usize> = g
            .neighbors(e)
            .iter()
            .map(|&w| base_index.get(&w).copied())
            .collect::<Option<Vec<_>>>()?;
        endpoint_classes.sort_unstable();
        endpoint_classes.dedup();
        if endpoint_classes.len() != 2 {
            return None;
        }
        base_edges_with_source.push(((endpoint_classes[0], endpoint_classes[1]), e));
    }
    base_edges_with_source.sort_unstable();
    let base_edges: Vec<(usize, usize)> =
        base_edges_with_source.iter().map(|&(e, _)| e).collect();
    let base = Graph::from_edge_list(pair_classes.len(), &base_edges).ok()?;
    let matched = DoubleMatch {
        base,
        edge_vertex_of: base_edges_with_source.iter().map(|&(_, v)| v).collect(),
        pair_vertex_of: pair_classes.iter().flatten().copied().collect(),
    };
    reproduces_double(g, &matched).then_some(matched)
}

fn reproduces_double(g: &Graph, m: &DoubleMatch) -> bool {
    let Ok((expected, _)) = subdivided_double(&m.base) else {
        return false;
    };
    if g.vertex_count() != expected.vertex_count() || g.edge_count() != expected.edge_count() {
        return false;
    }
    let to_input = |v: usize| {
        if v < m.edge_vertex_of.len() {
            m.edge_vertex_of[v]
        } else {
            m.pair_vertex_of[v - m.edge_vertex_of.len()]
        }
    };
    expected
        .edges()
        .iter()
        .all(|&(u, v)| g.has_edge(to_input(u), to_input(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_counts_and_parity() {
        let (w3, _) = wreath(3).unwrap();
        assert_eq!(w3.vertex_count(), 6);
        assert_eq!(w3.edge_count(), 12);
        assert_eq!(w3.regular_valency(), Some(4));
        assert!(w3.is_connected());
        assert!(w3.bipartition().is_none());

        let (w4, _) = wreath(4).unwrap();
        let parts = w4.bipartition().unwrap();
        assert_eq!(parts.part_a.len(), 4);

        let (w8, _) = wreath(8).unwrap();
        assert_eq!(w8.vertex_count(), 16);
        assert_eq!(w8.edge_count(), 32);

        assert!(matches!(wreath(2), Err(FamilyError::WreathTooSmall(2))));
    }

    #[test]
    fn wreath_4_is_complete_bipartite_4_4() {
        // ring differences ±1 mod 4 are exactly the odd differences
        let (w4, _) = wreath(4).unwrap();
        let classes = w4.twin_classes();
        assert_eq!(classes.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![4, 4]);
    }

    #[test]
    fn wreath_twin_classes_are_pairs_for_other_n() {
        for n in [3, 5, 6, 7, 8] {
            let (w, labeling) = wreath(n).unwrap();
            let classes = w.twin_classes();
            assert_eq!(classes.len(), n, "n = {n}");
            for class in &classes {
                assert_eq!(class.len(), 2, "n = {n}");
                let (i0, _) = labeling.position(class[0]);
                let (i1, _) = labeling.position(class[1]);
                assert_eq!(i0, i1);
            }
        }
    }

    #[test]
    fn subdivided_double_shapes() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let (dd_k2, _) = subdivided_double(&k2).unwrap();
        assert_eq!(dd_k2.vertex_count(), 5);
        assert_eq!(dd_k2.degree(0), 4); // the edge-vertex is the star centre
        assert_eq!(dd_k2.edge_count(), 4);

        let k5_edges: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| ((u + 1)..5).map(move |v| (u, v)))
            .collect();
        let k5 = Graph::from_edge_list(5, &k5_edges).unwrap();
        let (dd_k5, labeling) = subdivided_double(&k5).unwrap();
        assert_eq!(dd_k5.vertex_count(), 20);
        assert_eq!(dd_k5.regular_valency(), Some(4));
        assert!(dd_k5.bipartition().is_some());
        assert!(dd_k5.is_connected());
        for v in 0..5 {
            assert_eq!(dd_k5.degree(labeling.pair_vertex(v, 0)), k5.degree(v));
        }

        let (w4, _) = wreath(4).unwrap();
        let (sigma, _) = subdivided_double(&w4).unwrap();
        assert_eq!(sigma.vertex_count(), 32);
        assert_eq!(sigma.regular_valency(), Some(4));

        let lonely = Graph::from_edge_list(1, &[]).unwrap();
        assert!(matches!(
            subdivided_double(&lonely),
            Err(FamilyError::EmptyEdgeSet)
        ));
    }

    #[test]
    fn subdivision_shapes() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = subdivision(&k3);
        assert_eq!(s.vertex_count(), 6);
        assert_eq!(s.regular_valency(), Some(2));
        assert!(s.is_connected()); // C_6

        let k5_edges: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| ((u + 1)..5).map(move |v| (u, v)))
            .collect();
        let k5 = Graph::from_edge_list(5, &k5_edges).unwrap();
        let s5 = subdivision(&k5);
        assert_eq!(s5.vertex_count(), 15);
        let mut degrees: Vec<usize> = (0..15).map(|v| s5.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(&degrees[..10], &[2; 10]);
        assert_eq!(&degrees[10..], &[4; 5]);

        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let path = subdivision(&k2);
        assert_eq!(path.vertex_count(), 3);
        assert_eq!(path.edge_count(), 2);
    }

    #[test]
    fn complete_bipartite_counts() {
        let k33 = complete_bipartite(3, 3);
        assert_eq!(k33.vertex_count(), 6);
        assert_eq!(k33.edge_count(), 9);
        let k34 = complete_bipartite(3, 4);
        assert_eq!(k34.edge_count(), 12);
        let k44 = complete_bipartite(4, 4);
        assert_eq!(k44.regular_valency(), Some(4));
    }

    #[test]
    fn recognize_wreath_round_trips() {
        for n in 3..=64 {
            let (w, _) = wreath(n).unwrap();
            let matched = recognize_wreath(&w).unwrap_or_else(|| panic!("missed W({n},2)"));
            assert_eq!(matched.n, n);
        }
    }

    #[test]
    fn recognize_wreath_on_k44_labelings() {
        // K_{4,4} is W(4,2) in disguise, whatever the labeling
        let k44 = complete_bipartite(4, 4);
        assert_eq!(recognize_wreath(&k44).map(|m| m.n), Some(4));
    }

    #[test]
    fn recognize_wreath_rejects_non_wreaths() {
        let c8_edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let c8 = Graph::from_edge_list(8, &c8_edges).unwrap();
        assert!(recognize_wreath(&c8).is_none());

        let k34 = complete_bipartite(3, 4);
        assert!(recognize_wreath(&k34).is_none());

        let k55 = complete_bipartite(5, 5);
        assert!(recognize_wreath(&k55).is_none());
    }

    #[test]
    fn recognize_double_round_trips() {
        let k5_edges: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| ((u + 1)..5).map(move |v| (u, v)))
            .collect();
        let k5 = Graph::from_edge_list(5, &k5_edges).unwrap();
        let (dd, _) = subdivided_double(&k5).unwrap();
        let matched = recognize_subdivided_double(&dd).unwrap();
        assert_eq!(matched.base.vertex_count(), 5);
        assert_eq!(matched.base.edge_count(), 10);
        assert_eq!(matched.base.regular_valency(), Some(4));

        for base in [complete_bipartite(4, 4), wreath(5).unwrap().0, wreath(4).unwrap().0] {
            let (dd, _) = subdivided_double(&base).unwrap();
            let matched = recognize_subdivided_double(&dd)
                .unwrap_or_else(|| panic!("missed a subdivided double"));
            assert_eq!(matched.base.vertex_count(), base.vertex_count());
            assert_eq!(matched.base.edge_count(), base.edge_count());
        }
    }

    #[test]
    fn recognize_double_rejects_wreaths_and_odd_graphs() {
        // W(6,2) has twin pairs in both parts, so no valency-4 trivial-twin
        // side exists; arithmetic backs this up: a 4-valent base would need
        // |E| + 2|V| = 12 with |E| = 2|V|, i.e. a 4-valent graph on 3 vertices.
        let (w6, _) = wreath(6).unwrap();
        assert!(recognize_subdivided_double(&w6).is_none());

        let k33 = complete_bipartite(3, 3);
        assert!(recognize_subdivided_double(&k33).is_none());
    }

    #[test]
    fn twin_swap_is_a_semiregular_automorphism() {
        // swapping every pair {(i,0),(i,1)} at once: uniform 2-cycles
        use std::collections::BTreeSet;
        for n in [5usize, 8] {
            let (w, labeling) = wreath(n).unwrap();
            let swap = Permutation::from_images(
                (0..2 * n)
                    .map(|v| {
                        let (i, u) = labeling.position(v);
                        labeling.vertex_of(i, 1 - u)
                    })
                    .collect(),
            )
            .unwrap();
            assert!(w.is_automorphism(&swap));
            let domain: BTreeSet<usize> = (0..2 * n).collect();
            let cert = crate::perm::is_semiregular(&swap, &domain).unwrap().unwrap();
            assert_eq!(cert.cycle_length, 2);
        }
    }

    #[test]
    fn induced_automorphism_on_double() {
        let k5_edges: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| ((u + 1)..5).map(move |v| (u, v)))
            .collect();
        let k5 = Graph::from_edge_list(5, &k5_edges).unwrap();
        let (dd, labeling) = subdivided_double(&k5).unwrap();
        let five_cycle = Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let lifted = labeling.induce_automorphism(&five_cycle).unwrap();
        assert!(dd.is_automorphism(&lifted));
        assert_eq!(lifted.order(), 5);
        let flip = labeling.twin_flip(2);
        assert!(dd.is_automorphism(&flip));
    }
}
