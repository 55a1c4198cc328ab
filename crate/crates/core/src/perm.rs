//! Permutations of a finite domain `{0, …, m-1}`, stored as image tables.
//!
//! Products are read left to right throughout the crate: `x^(pq) = (x^p)^q`,
//! so `p.compose(&q)` applies `p` first and `q` second. Conjugation follows
//! the same convention, `p^q = q⁻¹ p q`.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image table of length {len} is not a bijection of 0..{len}")]
    NotABijection { len: usize },
    #[error("domain size mismatch: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },
    #[error("cycles are not disjoint (index {0} repeated)")]
    CyclesNotDisjoint(usize),
    #[error("index {index} out of range for domain of size {domain}")]
    OutOfRange { index: usize, domain: usize },
    #[error("subset is not invariant: {point} maps to {image} outside the subset")]
    SubsetNotInvariant { point: usize, image: usize },
    #[error("permutation acts trivially on the given subset")]
    TrivialOnSubset,
}

/// A bijection of `{0, …, m-1}` given by its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(PermError::NotABijection { len: n });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (pos, &v) in cycle.iter().enumerate() {
                if v >= degree {
                    return Err(PermError::OutOfRange {
                        index: v,
                        domain: degree,
                    });
                }
                if seen[v] {
                    return Err(PermError::CyclesNotDisjoint(v));
                }
                seen[v] = true;
                images[v] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self, PermError> {
        Self::from_cycles(degree, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a point: `x^p`.
    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Left-to-right composition: the result maps `x` to `q(p(x))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DomainMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&v| q.images[v]).collect(),
        })
    }

    /// Composition for callers that already know the degrees agree.
    #[inline]
    pub(crate) fn then(&self, q: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), q.degree());
        Permutation {
            images: self.images.iter().map(|&v| q.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Conjugate `self^q = q⁻¹ · self · q`.
    pub fn conjugate_by(&self, q: &Permutation) -> Result<Permutation, PermError> {
        q.inverse().compose(self)?.compose(q)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        result
    }

    /// Cycle decomposition including fixed points as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Least `k ≥ 1` with `p^k = identity`; the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, num_lcm)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&v| self.images[v] == v).collect()
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&v| self.images[v] != v).collect()
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&v| self.images[v] != v)
    }

    /// Does `self` map `set` into itself (setwise)?
    pub fn preserves_setwise(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&v| set.contains(&self.images[v]))
    }

    /// Cycle lengths of the restriction to an invariant subset.
    fn cycle_lengths_on(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut lengths = Vec::new();
        for &start in set {
            if seen.contains(&start) {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while seen.insert(v) {
                len += 1;
                v = self.images[v];
            }
            lengths.push(len);
        }
        lengths
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(images).map_err(D::Error::custom)
    }
}

/// An element together with the common length of its cycles on a set.
///
/// Witnesses that the element is semiregular there: every cycle on
/// `restricted_to` (the whole domain when absent) has length exactly
/// `cycle_length ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiregularCertificate {
    pub element: Permutation,
    pub cycle_length: usize,
    pub restricted_to: Option<BTreeSet<usize>>,
}

impl SemiregularCertificate {
    /// Re-checks the certificate in one pass over the relevant set.
    pub fn validate(&self) -> Result<bool, PermError> {
        let domain: BTreeSet<usize> = (0..self.element.degree()).collect();
        let set = self.restricted_to.as_ref().unwrap_or(&domain);
        match is_semiregular(&self.element, set)? {
            Some(cert) => Ok(cert.cycle_length == self.cycle_length),
            None => Ok(false),
        }
    }
}

/// Checks whether all cycles of `p` on the invariant subset `s` share one
/// length `ℓ ≥ 2`, returning the certificate when they do.
///
/// Errors when `s` is not `p`-invariant or `p` is trivial on `s`; the latter
/// signals "not a semiregular candidate", distinct from a length mismatch.
pub fn is_semiregular(
    p: &Permutation,
    s: &BTreeSet<usize>,
) -> Result<Option<SemiregularCertificate>, PermError> {
    for &v in s {
        if v >= p.degree() {
            return Err(PermError::OutOfRange {
                index: v,
                domain: p.degree(),
            });
        }
        if !s.contains(&p.image(v)) {
            return Err(PermError::SubsetNotInvariant {
                point: v,
                image: p.image(v),
            });
        }
    }
    if s.iter().all(|&v| p.image(v) == v) {
        return Err(PermError::TrivialOnSubset);
    }
    let lengths = p.cycle_lengths_on(s);
    let common = lengths[0];
    if common >= 2 && lengths.iter().all(|&l| l == common) {
        let whole = s.len() == p.degree();
        Ok(Some(SemiregularCertificate {
            element: p.clone(),
            cycle_length: common,
            restricted_to: if whole { None } else { Some(s.clone()) },
        }))
    } else {
        Ok(None)
    }
}

pub(crate) fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

pub(crate) fn num_lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / num_gcd(a, b) * b
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn is_prime_power(n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
