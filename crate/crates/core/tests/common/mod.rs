#![allow(dead_code)]

//! Shared oracles for the integration suites. Everything here is written
//! independently of the library's stabilizer-chain and search code so it
//! can serve as a cross-check.

use std::collections::BTreeSet;

use etsemi::graph::Graph;
use etsemi::named;
use etsemi::perm::Permutation;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Exhaustive closure under composition; `None` when the cap is exceeded.
pub fn naive_closure(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Option<BTreeSet<Permutation>> {
    let mut all: BTreeSet<Permutation> = BTreeSet::new();
    all.insert(Permutation::identity(degree));
    let mut queue: Vec<Permutation> = vec![Permutation::identity(degree)];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = p.compose(g).expect("same degree");
            if all.insert(q.clone()) {
                if all.len() > cap {
                    return None;
                }
                queue.push(q);
            }
        }
    }
    Some(all)
}

pub fn random_permutation(rng: &mut ChaCha8Rng, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// Direct semiregularity test on the whole domain, bypassing the library's
/// certificate machinery: non-identity and all cycles of one length ≥ 2.
pub fn semiregular_by_definition(p: &Permutation) -> bool {
    if p.is_identity() {
        return false;
    }
    let lengths: BTreeSet<usize> = p.cycles().iter().map(|c| c.len()).collect();
    lengths.len() == 1 && !lengths.contains(&1)
}

/// The distinct graphs appearing in the shipped corpus manifests.
pub fn corpus_graphs() -> Vec<(&'static str, Graph)> {
    [
        "k4",
        "k33",
        "q3",
        "petersen",
        "heawood",
        "pappus",
        "moebius-kantor",
        "k5",
        "k44",
        "wreath-3",
        "wreath-4",
        "wreath-5",
        "wreath-6",
        "wreath-7",
        "wreath-8",
        "dd-k5",
        "dd-k44",
        "dd-wreath-4",
        "q4",
    ]
    .into_iter()
    .map(|name| (name, named::by_name(name).expect("corpus graph exists")))
    .collect()
}
