//! Finite simple undirected graphs with the structural predicates the rest
//! of the crate consumes: connectivity, bipartiteness, valency, twin
//! classes and even-walk reachability.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be positive")]
    EmptyVertexSet,
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("endpoint {endpoint} out of range for {n} vertices")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("malformed graph file: {0}")]
    Parse(String),
}

/// A finite simple graph on vertices `0..n`, adjacency kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

/// The two sides of a bipartite graph; `part_a` contains vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub part_a: BTreeSet<usize>,
    pub part_b: BTreeSet<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange {
                    endpoint: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as sorted pairs in lexicographic order; this is the canonical
    /// edge indexing used for induced edge actions.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// The common valency, when every vertex has the same degree.
    pub fn regular_valency(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Two-colouring when no odd cycle exists. Component roots (smallest
    /// unvisited vertex first) go to `part_a`, so vertex 0 lies in `part_a`.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let n = self.vertex_count();
        let mut color = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let next = !color[v].unwrap();
                for &w in &self.adjacency[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(next);
                            queue.push_back(w);
                        }
                        Some(c) if c != next => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let part_a = (0..n).filter(|&v| color[v] == Some(false)).collect();
        let part_b = (0..n).filter(|&v| color[v] == Some(true)).collect();
        Some(Bipartition { part_a, part_b })
    }

    /// Vertices reachable from `u` by a walk of even length. For connected
    /// bipartite graphs this is the part containing `u`; an odd closed walk
    /// collapses the parity classes and the whole vertex set is returned.
    pub fn even_reachability(&self, u: usize) -> Result<BTreeSet<usize>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let n = self.vertex_count();
        // BFS on (vertex, parity) pairs
        let mut seen = vec![[false; 2]; n];
        seen[u][0] = true;
        let mut queue = VecDeque::from([(u, 0usize)]);
        while let Some((v, parity)) = queue.pop_front() {
            let next = parity ^ 1;
            for &w in &self.adjacency[v] {
                if !seen[w][next] {
                    seen[w][next] = true;
                    queue.push_back((w, next));
                }
            }
        }
        Ok((0..n).filter(|&v| seen[v][0]).collect())
    }

    /// Partition of the vertices by equal open neighbourhoods, classes
    /// ordered by smallest member. A graph is unworthy iff some class has
    /// size at least 2.
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        let mut by_neighborhood: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertex_count() {
            by_neighborhood
                .entry(&self.adjacency[v])
                .or_default()
                .push(v);
        }
        let mut classes: Vec<Vec<usize>> = by_neighborhood.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        classes
    }

    pub fn is_unworthy(&self) -> bool {
        self.twin_classes().iter().any(|c| c.len() >= 2)
    }

    /// Does the permutation preserve the edge set?
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        if p.degree() != self.vertex_count() {
            return false;
        }
        self.edges()
            .iter()
            .all(|&(u, v)| self.has_edge(p.image(u), p.image(v)))
    }

    /// The graph with every vertex `v` renamed to `relabeling(v)`.
    pub fn relabel(&self, relabeling: &Permutation) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (relabeling.image(u), relabeling.image(v)))
            .collect();
        Graph::from_edge_list(self.vertex_count(), &edges).expect("relabeling preserves simplicity")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.vertex_count(),
            edges: self.edges(),
        })
        .expect("graph serializes")
    }

    pub fn from_json(data: &str) -> Result<Self, GraphError> {
        let parsed: GraphJson =
            serde_json::from_str(data).map_err(|e| GraphError::Parse(e.to_string()))?;
        Graph::from_edge_list(parsed.n, &parsed.edges)
    }

    /// Plain-text reader: first line is the vertex count, then one `u v`
    /// pair per line. Blank lines and `#` comments are skipped.
    pub fn from_text(data: &str) -> Result<Self, GraphError> {
        let mut lines = data
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| GraphError::Parse("empty file".into()))?
            .parse()
            .map_err(|e| GraphError::Parse(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let u: usize = parts
                .next()
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?
                .parse()
                .map_err(|e| GraphError::Parse(format!("bad endpoint: {e}")))?;
            let v: usize = parts
                .next()
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?
                .parse()
                .map_err(|e| GraphError::Parse(format!("bad endpoint: {e}")))?;
            edges.push((u, v));
        }
        Graph::from_edge_list(n, &edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            n: self.vertex_count(),
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parsed = GraphJson::deserialize(deserializer)?;
        Graph::from_edge_list(parsed.n, &parsed.edges).map_err(serde::de::Error::custom)
    }
}
