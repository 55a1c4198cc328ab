//! Finitely generated permutation groups backed by a deterministic
//! stabilizer chain: exact order, membership, orbits, point stabilizers and
//! one-pass element enumeration.
//!
//! The chain is built once on demand and is read-only afterwards, so groups
//! are safe to share across threads. Base points are chosen as the smallest
//! moved points, making every run reproducible.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{is_prime, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator has degree {found}, group domain is {expected}")]
    GeneratorDegreeMismatch { expected: usize, found: usize },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderExceedsCap { order: u128, cap: u64 },
    #[error("point {point} outside domain of size {domain}")]
    PointOutOfRange { point: usize, domain: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A finite permutation group given by generators on `{0, …, domain_size-1}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "GroupData", into = "GroupData")]
pub struct GeneratedGroup {
    domain_size: usize,
    generators: Vec<Permutation>,
    #[serde(skip)]
    chain: OnceLock<StabilizerChain>,
}

#[derive(Serialize, Deserialize)]
struct GroupData {
    domain_size: usize,
    generators: Vec<Permutation>,
}

impl TryFrom<GroupData> for GeneratedGroup {
    type Error = GroupError;
    fn try_from(d: GroupData) -> Result<Self, GroupError> {
        GeneratedGroup::new(d.domain_size, d.generators)
    }
}

impl From<GeneratedGroup> for GroupData {
    fn from(g: GeneratedGroup) -> GroupData {
        GroupData {
            domain_size: g.domain_size,
            generators: g.generators,
        }
    }
}

impl GeneratedGroup {
    pub fn new(domain_size: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != domain_size {
                return Err(GroupError::GeneratorDegreeMismatch {
                    expected: domain_size,
                    found: g.degree(),
                });
            }
        }
        Ok(GeneratedGroup {
            domain_size,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(domain_size: usize) -> Self {
        GeneratedGroup {
            domain_size,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.domain_size, &self.generators, &[]))
    }

    /// Exact group order as the product of the chain's orbit lengths.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn order_exceeds(&self, cap: u64) -> bool {
        let mut acc: u128 = 1;
        for level in &self.chain().levels {
            acc = acc.saturating_mul(level.orbit.len() as u128);
            if acc > cap as u128 {
                return true;
            }
        }
        false
    }

    /// Membership test by sifting through the chain.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.domain_size {
            return false;
        }
        let (_, residue) = self.chain().sift_from(0, p.clone());
        residue.is_identity()
    }

    /// Orbit partition of the domain; orbits sorted by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.domain_size];
        let mut orbits = Vec::new();
        for start in 0..self.domain_size {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for g in &self.generators {
                    let w = g.image(v);
                    if !seen[w] {
                        seen[w] = true;
                        orbit.push(w);
                        queue.push_back(w);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        self.orbits()
            .into_iter()
            .find(|orbit| orbit.contains(&x))
            .unwrap_or_else(|| vec![x])
    }

    pub fn is_transitive(&self) -> bool {
        self.domain_size <= 1 || self.orbits().len() == 1
    }

    /// Point stabilizer, from a chain whose first base point is `x`.
    pub fn stabilizer(&self, x: usize) -> Result<GeneratedGroup, GroupError> {
        if x >= self.domain_size {
            return Err(GroupError::PointOutOfRange {
                point: x,
                domain: self.domain_size,
            });
        }
        let chain = StabilizerChain::build(self.domain_size, &self.generators, &[x]);
        let gens: Vec<Permutation> = chain
            .levels
            .iter()
            .skip(1)
            .flat_map(|level| level.own_gens.iter().cloned())
            .collect();
        GeneratedGroup::new(self.domain_size, gens)
    }

    /// Streams each element exactly once, in chain-enumeration order.
    /// Refuses to start when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Elements<'_>, GroupError> {
        if self.order_exceeds(cap) {
            return Err(GroupError::OrderExceedsCap {
                order: self.order(),
                cap,
            });
        }
        Ok(Elements::new(self.chain()))
    }

    /// The prime-order elements of the group, in chain-enumeration order.
    pub fn prime_order_elements(
        &self,
        cap: u64,
    ) -> Result<impl Iterator<Item = Permutation> + '_, GroupError> {
        Ok(self.elements(cap)?.filter(|p| is_prime(p.order())))
    }

    /// Derived subgroup: normal closure of the commutators of the generators.
    pub fn derived_subgroup(&self) -> GeneratedGroup {
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for a in &self.generators {
            for b in &self.generators {
                // [a,b] = a⁻¹ b⁻¹ a b
                let comm = a
                    .inverse()
                    .then(&b.inverse())
                    .then(a)
                    .then(b);
                if !comm.is_identity() {
                    queue.push_back(comm);
                }
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut sub = GeneratedGroup::trivial(self.domain_size);
        while let Some(c) = queue.pop_front() {
            if sub.contains(&c) {
                continue;
            }
            for s in &self.generators {
                queue.push_back(c.conjugate_by(s).expect("same degree"));
            }
            gens.push(c);
            sub = GeneratedGroup::new(self.domain_size, gens.clone()).expect("same degree");
        }
        sub
    }

    /// Solvability via the derived series; `None` when the order exceeds
    /// `cap` and the check is declared inconclusive.
    pub fn is_solvable(&self, cap: u64) -> Option<bool> {
        if self.order_exceeds(cap) {
            return None;
        }
        let mut current = self.clone();
        let mut order = current.order();
        loop {
            if order == 1 {
                return Some(true);
            }
            let next = current.derived_subgroup();
            let next_order = next.order();
            if next_order == order {
                return Some(false);
            }
            current = next;
            order = next_order;
        }
    }
}

/// Deterministic stabilizer chain (base + strong generators + transversals).
#[derive(Debug, Clone)]
pub(crate) struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

#[derive(Debug, Clone)]
struct ChainLevel {
    base_point: usize,
    /// Strong generators first attached at this level; they fix every
    /// earlier base point and move this one (except seeded prefix levels).
    own_gens: Vec<Permutation>,
    /// Orbit of the base point in BFS discovery order.
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        ChainLevel {
            base_point,
            own_gens: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }
}

impl StabilizerChain {
    /// Builds the chain, optionally forcing the first base points.
    pub(crate) fn build(
        degree: usize,
        generators: &[Permutation],
        base_prefix: &[usize],
    ) -> StabilizerChain {
        let mut chain = StabilizerChain {
            degree,
            levels: base_prefix
                .iter()
                .map(|&b| ChainLevel::new(b, degree))
                .collect(),
        };
        for g in generators {
            let (level, residue) = chain.sift_from(0, g.clone());
            if !residue.is_identity() {
                chain.insert_gen(level, residue);
                for l in (0..=level.min(chain.levels.len() - 1)).rev() {
                    chain.complete_level(l);
                }
            }
        }
        chain
    }

    fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, level| {
            acc.checked_mul(level.orbit.len() as u128)
                .expect("group order exceeds u128")
        })
    }

    /// Sifts `g` through levels `from..`, returning the level at which the
    /// residue could not be expressed and the residue itself.
    fn sift_from(&self, from: usize, g: Permutation) -> (usize, Permutation) {
        let mut h = g;
        for (idx, level) in self.levels.iter().enumerate().skip(from) {
            if h.is_identity() {
                return (idx, h);
            }
            let image = h.image(level.base_point);
            match &level.transversal[image] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (idx, h),
            }
        }
        (self.levels.len(), h)
    }

    fn insert_gen(&mut self, level: usize, g: Permutation) {
        if level == self.levels.len() {
            let bp = g
                .smallest_moved_point()
                .expect("non-identity residue moves a point");
            self.levels.push(ChainLevel::new(bp, self.degree));
        }
        self.levels[level].own_gens.push(g);
        self.recompute_orbit(level);
    }

    /// Generators acting at `level`: every strong generator attached at this
    /// level or deeper (all of which fix the earlier base points).
    fn effective_gens(&self, level: usize) -> Vec<Permutation> {
        self.levels[level..]
            .iter()
            .flat_map(|l| l.own_gens.iter().cloned())
            .collect()
    }

    fn recompute_orbit(&mut self, level: usize) {
        let gens = self.effective_gens(level);
        let base = self.levels[level].base_point;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[base] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![base];
        let mut queue = VecDeque::from([base]);
        while let Some(p) = queue.pop_front() {
            for s in &gens {
                let q = s.image(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().unwrap().then(s);
                    transversal[q] = Some(u);
                    orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
        self.levels[level].orbit = orbit;
        self.levels[level].transversal = transversal;
    }

    /// Ensures every Schreier generator of `level` sifts to the identity
    /// through the deeper levels, inserting residues as it goes. Assumes the
    /// deeper levels are already complete.
    fn complete_level(&mut self, level: usize) {
        'restart: loop {
            self.recompute_orbit(level);
            let orbit = self.levels[level].orbit.clone();
            let gens = self.effective_gens(level);
            for &p in &orbit {
                let u_p = self.levels[level].transversal[p].clone().unwrap();
                for s in &gens {
                    let q = s.image(p);
                    let u_q = self.levels[level].transversal[q].clone().unwrap();
                    let schreier = u_p.then(s).then(&u_q.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (drop, residue) = self.sift_from(level + 1, schreier);
                    if !residue.is_identity() {
                        self.insert_gen(drop, residue);
                        for l in (level + 1..=drop.min(self.levels.len() - 1)).rev() {
                            self.complete_level(l);
                        }
                        continue 'restart;
                    }
                }
            }
            return;
        }
    }
}

/// Lazy stream over the group elements: one coset representative per chain
/// level, advanced odometer-style with the top level fastest.
pub struct Elements<'a> {
    chain: &'a StabilizerChain,
    counters: Vec<usize>,
    /// `suffix[i]` is the element contributed by levels `i..`.
    suffix: Vec<Permutation>,
    started: bool,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabilizerChain) -> Self {
        let k = chain.levels.len();
        let mut suffix = vec![Permutation::identity(chain.degree); k + 1];
        for i in (0..k).rev() {
            let rep = chain.levels[i].transversal[chain.levels[i].orbit[0]]
                .as_ref()
                .unwrap();
            suffix[i] = suffix[i + 1].then(rep);
        }
        Elements {
            chain,
            counters: vec![0; k],
            suffix,
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let k = self.counters.len();
        let mut level = 0;
        loop {
            if level == k {
                return false;
            }
            if self.counters[level] + 1 < self.chain.levels[level].orbit.len() {
                self.counters[level] += 1;
                break;
            }
            self.counters[level] = 0;
            level += 1;
        }
        for i in (0..=level).rev() {
            let point = self.chain.levels[i].orbit[self.counters[i]];
            let rep = self.chain.levels[i].transversal[point].as_ref().unwrap();
            self.suffix[i] = self.suffix[i + 1].then(rep);
        }
        true
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.suffix.first().cloned().unwrap());
        }
        if self.advance() {
            Some(self.suffix[0].clone())
        } else {
            self.done = true;
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn cyc(degree: usize, cycles: &[Vec<usize>]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    /// Independent oracle: exhaustive closure under composition.
    fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Option<BTreeSet<Permutation>> {
        let mut all: BTreeSet<Permutation> = BTreeSet::new();
        all.insert(Permutation::identity(degree));
        let mut queue: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(p) = queue.pop() {
            for g in gens {
                let q = p.compose(g).unwrap();
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

    #[test]
    fn order_of_small_groups() {
        let g = GeneratedGroup::new(5, vec![cyc(5, &[vec![0, 1, 2, 3, 4]])]).unwrap();
        assert_eq!(g.order(), 5);

        let sym4 = GeneratedGroup::new(4, vec![cyc(4, &[vec![0, 1]]), cyc(4, &[vec![0, 1, 2, 3]])])
            .unwrap();
        assert_eq!(sym4.order(), 24);

        assert_eq!(GeneratedGroup::trivial(7).order(), 1);
    }

    #[test]
    fn aut_k34_order_matches_closure() {
        // Sym(3) × Sym(4) on 7 points; closure is the independent oracle.
        let gens = vec![
            cyc(7, &[vec![0, 1]]),
            cyc(7, &[vec![0, 1, 2]]),
            cyc(7, &[vec![3, 4]]),
            cyc(7, &[vec![3, 4, 5, 6]]),
        ];
        let by_closure = closure(7, &gens, 10_000).unwrap().len();
        assert_eq!(by_closure, 144);
        let g = GeneratedGroup::new(7, gens).unwrap();
        assert_eq!(g.order(), 144);
    }

    #[test]
    fn membership_accepts_exactly_generator_products() {
        let gens = vec![cyc(4, &[vec![0, 1, 2, 3]])];
        let g = GeneratedGroup::new(4, gens.clone()).unwrap();
        let all = closure(4, &gens, 100).unwrap();
        for p in closure(4, &[cyc(4, &[vec![0, 1]]), cyc(4, &[vec![0, 1, 2, 3]])], 100).unwrap() {
            assert_eq!(g.contains(&p), all.contains(&p), "disagree on {p}");
        }
    }

    #[test]
    fn orbits_are_the_expected_partition() {
        let trivial = GeneratedGroup::trivial(4);
        assert_eq!(trivial.orbits(), vec![vec![0], vec![1], vec![2], vec![3]]);

        let g = GeneratedGroup::new(4, vec![cyc(4, &[vec![0, 1], vec![2, 3]])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn stabilizer_orders_satisfy_orbit_stabilizer() {
        // regular action: trivial stabilizer
        let c3 = GeneratedGroup::new(3, vec![cyc(3, &[vec![0, 1, 2]])]).unwrap();
        assert_eq!(c3.stabilizer(1).unwrap().order(), 1);

        // Sym(4) natural action: point stabilizer of order 6
        let sym4 = GeneratedGroup::new(4, vec![cyc(4, &[vec![0, 1]]), cyc(4, &[vec![0, 1, 2, 3]])])
            .unwrap();
        let stab = sym4.stabilizer(2).unwrap();
        assert_eq!(stab.order(), 6);
        assert!(stab.generators().iter().all(|g| g.image(2) == 2));
    }

    #[test]
    fn elements_enumerates_each_exactly_once() {
        let gens = vec![cyc(4, &[vec![0, 1]]), cyc(4, &[vec![0, 1, 2, 3]])];
        let g = GeneratedGroup::new(4, gens.clone()).unwrap();
        let listed: Vec<Permutation> = g.elements(100).unwrap().collect();
        assert_eq!(listed.len(), 24);
        let distinct: BTreeSet<_> = listed.iter().cloned().collect();
        assert_eq!(distinct, closure(4, &gens, 100).unwrap());
    }

    #[test]
    fn elements_refuses_above_cap() {
        let sym8 = GeneratedGroup::new(
            8,
            vec![cyc(8, &[vec![0, 1]]), cyc(8, &[(0..8).collect::<Vec<_>>()])],
        )
        .unwrap();
        match sym8.elements(10_000) {
            Err(GroupError::OrderExceedsCap { order, cap }) => {
                assert_eq!(order, 40_320);
                assert_eq!(cap, 10_000);
            }
            other => panic!("expected cap error, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn prime_order_elements_of_c4() {
        let g = GeneratedGroup::new(4, vec![cyc(4, &[vec![0, 1, 2, 3]])]).unwrap();
        let primes: Vec<Permutation> = g.prime_order_elements(100).unwrap().collect();
        assert_eq!(primes, vec![cyc(4, &[vec![0, 2], vec![1, 3]])]);

        let trivial = GeneratedGroup::trivial(3);
        assert_eq!(trivial.prime_order_elements(10).unwrap().count(), 0);
    }

    #[test]
    fn derived_series_detects_solvability() {
        let sym4 = GeneratedGroup::new(4, vec![cyc(4, &[vec![0, 1]]), cyc(4, &[vec![0, 1, 2, 3]])])
            .unwrap();
        let d1 = sym4.derived_subgroup();
        assert_eq!(d1.order(), 12); // Alt(4)
        let d2 = d1.derived_subgroup();
        assert_eq!(d2.order(), 4); // V4
        assert_eq!(sym4.is_solvable(1_000_000), Some(true));

        let sym5 = GeneratedGroup::new(5, vec![cyc(5, &[vec![0, 1]]), cyc(5, &[vec![0, 1, 2, 3, 4]])])
            .unwrap();
        assert_eq!(sym5.is_solvable(1_000_000), Some(false));
        assert_eq!(sym5.is_solvable(10), None);
    }

    #[test]
    fn group_serde_round_trip() {
        let g = GeneratedGroup::new(4, vec![cyc(4, &[vec![0, 1, 2, 3]])]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"domain_size":4,"generators":[[1,2,3,0]]}"#);
        let back: GeneratedGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back.order(), 4);
        assert!(serde_json::from_str::<GeneratedGroup>(
            r#"{"domain_size":3,"generators":[[1,0]]}"#
        )
        .is_err());
    }

    #[test]
    fn ring_rotation_on_a_wreath_graph_has_two_orbits() {
        // ⟨shift⟩ on the 8 vertices of W(4,2) with (i,u) ↦ 2i+u
        let rotation = Permutation::from_images(vec![2, 3, 4, 5, 6, 7, 0, 1]).unwrap();
        let g = GeneratedGroup::new(8, vec![rotation]).unwrap();
        let orbits = g.orbits();
        assert_eq!(orbits, vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]]);
    }

    #[test]
    fn chain_matches_closure_on_random_generator_sets() {
        // deterministic xorshift so the test is reproducible
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut tested = 0;
        while tested < 20 {
            let degree = 4 + (next() % 7) as usize;
            let gen_count = 1 + (next() % 3) as usize;
            let gens: Vec<Permutation> = (0..gen_count)
                .map(|_| {
                    let mut images: Vec<usize> = (0..degree).collect();
                    for i in (1..degree).rev() {
                        let j = (next() % (i as u64 + 1)) as usize;
                        images.swap(i, j);
                    }
                    Permutation::from_images(images).unwrap()
                })
                .collect();
            let Some(all) = closure(degree, &gens, 5000) else {
                continue;
            };
            let group = GeneratedGroup::new(degree, gens).unwrap();
            assert_eq!(group.order(), all.len() as u128);
            tested += 1;
        }
    }
}
