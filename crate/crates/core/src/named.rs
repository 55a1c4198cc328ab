//! Standard small graphs used as corpus entries: cycles, complete graphs,
//! hypercubes, generalized Petersen graphs and LCF-notation cubic graphs.

use crate::families::{complete_bipartite, subdivided_double, wreath};
use crate::graph::Graph;

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges).expect("cycle is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(n, &edges).expect("complete graph is simple")
}

/// The d-dimensional hypercube: vertices are bit strings, edges flip one bit.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for bit in 0..d {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("hypercube is simple")
}

/// Generalized Petersen graph GP(n,k): outer cycle `0..n`, inner vertices
/// `n..2n` joined by spokes, inner edges step by `k`.
pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::from_edge_list(2 * n, &edges).expect("generalized Petersen is simple")
}

pub fn petersen() -> Graph {
    generalized_petersen(5, 2)
}

pub fn moebius_kantor() -> Graph {
    generalized_petersen(8, 3)
}

/// Cubic graph from LCF notation: a Hamiltonian cycle on `pattern.len() *
/// repeats` vertices plus the chord `i → i + pattern[i mod len]`.
pub fn lcf(pattern: &[i64], repeats: usize) -> Graph {
    let n = pattern.len() * repeats;
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let offset = pattern[i % pattern.len()].rem_euclid(n as i64) as usize;
        let j = (i + offset) % n;
        if i < j {
            edges.push((i, j));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edge_list(n, &edges).expect("LCF graph is simple")
}

pub fn heawood() -> Graph {
    lcf(&[5, -5], 7)
}

pub fn pappus() -> Graph {
    lcf(&[5, 7, -7, 7, -7, -5], 3)
}

/// Looks up a corpus graph by name. Wreath graphs are spelled `wreath-N`,
/// subdivided doubles `dd-<base>`.
pub fn by_name(name: &str) -> Option<Graph> {
    if let Some(n) = name.strip_prefix("wreath-") {
        return wreath(n.parse().ok()?).ok().map(|(g, _)| g);
    }
    if let Some(base_name) = name.strip_prefix("dd-") {
        let base = by_name(base_name)?;
        return subdivided_double(&base).ok().map(|(g, _)| g);
    }
    if let Some(n) = name.strip_prefix("cycle-") {
        let n: usize = n.parse().ok()?;
        return (n >= 3).then(|| cycle(n));
    }
    match name {
        "k4" => Some(complete(4)),
        "k5" => Some(complete(5)),
        "k33" => Some(complete_bipartite(3, 3)),
        "k34" => Some(complete_bipartite(3, 4)),
        "k44" => Some(complete_bipartite(4, 4)),
        "q3" => Some(hypercube(3)),
        "q4" => Some(hypercube(4)),
        "petersen" => Some(petersen()),
        "heawood" => Some(heawood()),
        "pappus" => Some(pappus()),
        "moebius-kantor" => Some(moebius_kantor()),
        _ => None,
    }
}
