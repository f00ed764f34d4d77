//! Exact solvers and tooling for polar, monopolar and unipolar vertex
//! partitions, comparability recognition by transitive orientation, and a
//! positive 1-in-3-SAT reduction that produces hard 3-colourable
//! comparability instances.
//!
//! The crate is organised around plain data types (`Graph`, `Partition`,
//! `Orientation`, `Formula`) and pure functions over them. Brute-force
//! oracles sit next to every solver so results can always be cross-checked
//! on small inputs. With the default `parallel` feature the exhaustive
//! scans and corpus drivers run on rayon; without it everything falls back
//! to sequential loops with identical results.

pub mod comparability;
pub mod dimacs;
mod error;
pub mod exec;
pub mod gadget;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod reduction;
pub mod rng;
pub mod selftest;
pub mod solver;

pub use comparability::{
    chain_coloring, find_transitive_orientation, find_transitive_orientation_with_sinks,
    is_3col_comparability, is_comparability, is_comparability_brute, Coloring, Orientation,
};
pub use dimacs::{read_dimacs_graph, write_dimacs_graph};
pub use error::{
    CapacityError, ContractCheck, DimacsError, FormulaError, GadgetError, GraphError,
    OrientationError, PartitionError, ReductionError,
};
pub use gadget::{
    build_q, default_clause_gadget, read_gadget_bundle, synthesize_clause_gadget,
    verify_clause_gadget, verify_q, write_gadget_bundle, ClauseGadget, GadgetCertificate,
};
pub use graph::{Graph, VertexSet};
pub use oracle::{
    brute_monopolar, brute_polar, brute_unipolar, enumerate_monopolar, DEFAULT_BRUTE_BOUND,
};
pub use partition::{validate, Partition, PartitionKind};
pub use reduction::{
    assignment_to_partition, brute_force_1in3, build_reduction, check_1in3, parse_formula,
    partition_to_assignment, write_mapping, Assignment, Formula, LabeledReduction,
};
pub use solver::{solve_monopolar, solve_polar, solve_unipolar, DEFAULT_UNIPOLAR_BOUND};
