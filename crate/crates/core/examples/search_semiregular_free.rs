//! How the shipped witness groups were found: a seeded random walk over a
//! Sylow 2-subgroup of Aut(DD(K44)), keeping 2-generated subgroups that
//! stay edge-transitive and scanning each for fixed-point-free
//! involutions. Any edge-transitive subgroup without a semiregular element
//! is conjugate into the Sylow subgroup (the edge count is a 2-power), so
//! sampling there loses nothing.
//!
//!     cargo run -p etsemi --example search_semiregular_free --release

use etsemi::families::{complete_bipartite, subdivided_double};
use etsemi::group::GeneratedGroup;
use etsemi::perm::Permutation;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() {
    let k44 = complete_bipartite(4, 4);
    let (dd, labeling) = subdivided_double(&k44).unwrap();
    let lift = |g: &Permutation| labeling.induce_automorphism(g).unwrap();
    let base = |cycles: &[Vec<usize>]| Permutation::from_cycles(8, cycles).unwrap();

    // Sylow 2-subgroup: all twin flips, a dihedral group on each part, and
    // the part swap — order 2^8 · 128 = 2^15
    let mut sylow_gens: Vec<Permutation> = (0..8).map(|v| labeling.twin_flip(v)).collect();
    sylow_gens.push(lift(&base(&[vec![0, 1, 2, 3]])));
    sylow_gens.push(lift(&base(&[vec![0, 2]])));
    sylow_gens.push(lift(&base(&[vec![4, 5, 6, 7]])));
    sylow_gens.push(lift(&base(&[vec![4, 6]])));
    sylow_gens.push(lift(&base(&[vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]])));
    assert_eq!(
        GeneratedGroup::new(32, sylow_gens.clone()).unwrap().order(),
        32768
    );

    let edges = dd.edges();
    let edge_index: std::collections::BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let edge_transitive = |grp: &GeneratedGroup| -> bool {
        let mut seen = vec![false; edges.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(k) = stack.pop() {
            let (u, v) = edges[k];
            for g in grp.generators() {
                let (a, b) = (g.image(u), g.image(v));
                let j = edge_index[&(a.min(b), a.max(b))];
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == edges.len()
    };
    let has_fpf_involution = |grp: &GeneratedGroup| -> bool {
        grp.elements(1_000_000)
            .unwrap()
            .any(|p| p.order() == 2 && p.fixed_points().is_empty())
    };

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut pool = sylow_gens;
    let mut step = || {
        let i = rng.gen_range(0..pool.len());
        let mut j = rng.gen_range(0..pool.len());
        while j == i {
            j = rng.gen_range(0..pool.len());
        }
        pool[i] = pool[i].compose(&pool[j]).unwrap();
        pool[i].clone()
    };
    for _ in 0..64 {
        step();
    }

    let mut candidates = 0u32;
    for trial in 0..4000u32 {
        let k = 2 + (trial % 2) as usize;
        let gens: Vec<Permutation> = (0..k).map(|_| step()).collect();
        let candidate = GeneratedGroup::new(32, gens).unwrap();
        if !edge_transitive(&candidate) {
            continue;
        }
        candidates += 1;
        if !has_fpf_involution(&candidate) {
            println!(
                "witness at trial {trial}: order {} (after {candidates} edge-transitive candidates)",
                candidate.order()
            );
            println!("{}", serde_json::to_string(&candidate).unwrap());
            return;
        }
    }
    println!("no witness found in 4000 trials ({candidates} edge-transitive candidates)");
}
