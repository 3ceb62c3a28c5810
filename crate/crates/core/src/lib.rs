//! Combinatorial invariants of graph C*-algebras of amplified graphs.
//!
//! Graphs are finite-vertex multigraphs stored as multiplicity matrices over
//! `{0, 1, 2, ..., ω}` ([`Graph`], [`Multiplicity`]). On top of them the crate
//! provides:
//!
//! * [`graph`]: amplification, transitive closure, reachability, hereditary
//!   sets, components, quotient and restriction graphs;
//! * [`ideal_lattice`]: breaking vertices, admissible pairs, condition (K),
//!   unitality of ideals and normalisation of singular graphs;
//! * [`moves`]: the isomorphism-preserving moves (shortcuts, adding edges past
//!   finite emitters, out-splitting, out-amalgamation) with replayable records;
//! * [`invariant`]: the tempered primitive ideal space, its canonical form and
//!   witness-producing isomorphism decisions;
//! * [`realize`]: an amplified graph for every admissible invariant;
//! * [`oracle`]: brute-force enumeration and verification sweeps.

#![allow(clippy::needless_range_loop)]

pub mod fixtures;
pub mod graph;
pub mod ideal_lattice;
pub mod invariant;
pub mod moves;
pub mod multiplicity;
pub mod oracle;
pub mod realize;

pub use graph::{Graph, GraphError, VertexSet};
pub use ideal_lattice::{AdmissiblePair, Convention, FCardinality, IdealError};
pub use invariant::{CanonicalForm, InvariantError, PointWitness, Tau, TemperedPrimSpace};
pub use moves::{MoveError, MoveRecord, SplitSpec};
pub use multiplicity::Multiplicity;
pub use oracle::{SweepMode, SweepReport};
pub use realize::{RealizeError, TargetSpec};
