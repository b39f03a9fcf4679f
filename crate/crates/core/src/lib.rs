//! Signless Laplacian spectral radius and perfect matchings.
//!
//! A connected graph of even order `n >= 4` whose signless Laplacian spectral
//! radius `q1(G)` exceeds [`spectral::q1_threshold`] has a perfect matching,
//! and the bound is attained by graphs without one. This crate computes
//! every quantity involved, checks the intermediate inequalities on concrete
//! instances, and sweeps graph corpora for counterexamples.

pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod proof;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use matching::{maximum_matching, MatchingResult};
pub use spectral::{q1, Partition, QuotientMatrix, SymMatrix};

pub use verify::{check_graph, Verdict, VerdictRecord};
