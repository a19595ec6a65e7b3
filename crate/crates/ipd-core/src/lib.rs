//! Induced path decompositions of simple graphs.
//!
//! An IPD partitions the vertex set into vertex-disjoint induced paths, each
//! with at least two vertices. This crate decides whether a graph has one,
//! computes the exact minimum number of paths, constructs decompositions for
//! the graph classes where a guarantee is known (regular, Hamiltonian,
//! claw-free, cubic bipartite), and cross-checks all of those guarantees
//! against brute force on exhaustively enumerated small graphs.

pub mod constructive;
pub mod corpus;
pub mod ekk;
pub mod enumerate;
mod error;
pub mod exec;
pub mod factor;
pub mod graph;
pub mod solver;
pub mod structure;

pub use error::{Error, Result};
pub use exec::Exec;

/// Search caps for the exponential kernels. Exceeding a cap is a refusal
/// (`Error::CapExceeded`), never a silent hang; callers override by passing
/// larger values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Hamiltonian cycle backtracking.
    pub hamiltonian: usize,
    /// IPD existence search (induced {P2, P3} partition).
    pub exists: usize,
    /// Exact minimum search for the number of paths.
    pub min_ipd: usize,
    /// Star partition search.
    pub star: usize,
    /// Subset scan for the star-partition obstruction.
    pub ekk: usize,
    /// Exhaustive 2-factor enumeration fallback.
    pub factor_enum: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            hamiltonian: graph::DEFAULT_HAMILTONIAN_CAP,
            exists: solver::DEFAULT_EXISTS_CAP,
            min_ipd: solver::DEFAULT_MIN_IPD_CAP,
            star: ekk::DEFAULT_STAR_CAP,
            ekk: ekk::DEFAULT_EKK_CAP,
            factor_enum: factor::DEFAULT_FACTOR_ENUM_CAP,
        }
    }
}
