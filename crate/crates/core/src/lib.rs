//! Regularity of powers of edge ideals: graphs, monomial ideals, a
//! multigraded Betti engine, even-connection colon graphs and a
//! verification harness for the associated bounds.

pub mod betti;
pub mod canon;
pub mod error;
pub mod even;
pub mod graph;
pub mod graph6;
pub mod homology;
pub mod invariants;
pub mod monomial;
pub mod report;
pub mod verify;

pub use betti::{
    graded_betti, hochster_oracle, regularity, regularity_of_power, BettiTable, EngineConfig,
};
pub use canon::{canonical_form, enumerate_graphs, is_isomorphic, CanonicalForm};
pub use error::{AlgebraError, EngineError, GraphError};
pub use even::{
    colon_graph, even_connected_pairs, ColonGraphResult, EdgeMultiset, EvenConnectionCertificate,
};
pub use graph::{Edge, Graph, VertexSet};
pub use graph6::{emit_graph6, parse_graph6};
pub use homology::{FieldSpec, HomologyConfig, RankFault};
pub use invariants::{
    induced_matching_number, is_cameron_walker, is_chordal, is_co_chordal, is_gap_free,
    local_regularity, matching_number, InvariantRecord,
};
pub use monomial::{edge_ideal, symbolic_square, Monomial, MonomialIdeal, Variable};
pub use report::{SuiteReport, Violation};
