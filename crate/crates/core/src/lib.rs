//! Semiregular automorphisms of edge-transitive graphs at desk scale:
//! permutation-group machinery with exact stabilizer chains, graph families
//! and their structural recognizers, transitivity classifiers, quotient and
//! lifting tools, certificate search, and two built-in constructions of
//! edge-transitive 2-groups with exhaustive claim-by-claim verification.

pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod families;
pub mod graph;
pub mod group;
pub mod named;
pub mod perm;
pub mod quotient;
pub mod report;
pub mod semireg;
pub mod symmetry;

pub use graph::{Bipartition, Graph, GraphError};
pub use group::{GeneratedGroup, GroupError};
pub use perm::{is_semiregular, PermError, Permutation, SemiregularCertificate};

/// Default enumeration cap: exhaustive scans refuse to start beyond this
/// group order and report an inconclusive verdict instead.
pub const DEFAULT_CAP: u64 = 1_000_000;
