//! Construction, verification and structural analysis of CNF encodings of
//! the "at most one" and "exactly one" constraints.

pub mod bounds;
pub mod cnf;
pub mod dimacs;
pub mod encodings;
pub mod implication;
pub mod propagation;
pub mod regular;
pub mod search;
pub mod semantics;
pub mod verify;

pub use bounds::{bounds_table, lower_bound_2cnf, lower_bound_general, regular_form_floor, BoundsError, BoundsRow};
pub use cnf::{
    assign, dp_eliminate, resolve, substitute, Clause, CnfError, Encoding, Formula, Lit, PartialAssignment, Var,
};
pub use dimacs::{parse_dimacs, serialize_dimacs, DimacsError};
pub use encodings::{expected_size, generate, EncodingKind};
pub use implication::{analyze_2cnf, implication_graph, ImplicationGraph, TwoCnfDiagnostics};
pub use propagation::{derives, up_closure, UpKind, UpOutcome};
pub use regular::{
    check_regular, normalize_to_regular, reduce_step, star_analysis, ReduceRule, ReduceStep, StructureError,
    StructureReport,
};
pub use search::{find_minimum, semantic_consequences, Requirement, SearchResult, SearchSpec};
pub use semantics::{is_implicate, prime_reduce, Limits, SemanticError};
