//! Zero-sum subsequences of small cross number in finite abelian groups,
//! found constructively through weighted graph pebbling on valuation lattices,
//! together with a Monte Carlo laboratory for the associated probability
//! thresholds.
//!
//! Module map:
//! - [`group`], [`oracle`], [`davenport`]: exact group arithmetic, the
//!   minimum-cross oracle, and Davenport-type quantities.
//! - [`graph`], [`solver`]: weighted graphs, pebble configurations and
//!   solvability deciders.
//! - [`engine`]: the labeled-pebble reduction from sequences to lattice
//!   pebbling, with verified certificates.
//! - [`lab`]: random models, estimators, half-point search and threshold
//!   formula evaluators.

pub mod davenport;
pub mod engine;
pub mod graph;
pub mod group;
pub mod lab;
pub mod oracle;
pub mod primes;
pub mod solver;

pub use davenport::{
    canonical_zero_sum_free, dav, davenport_search, invariant_factors, DavenportError,
    DavenportOptions,
};
pub use engine::{
    extract, place, prefix_zero_subset, verify_certificate, Diagnosis, EngineError, ExtractOptions,
    ExtractOutcome, LabeledPebble, PebbleNode, ZeroSumCertificate,
};
pub use graph::{
    apply_move, parse_graph_descriptor, replay, Configuration, GraphError, GraphKind, LatticeInfo,
    Move, WeightedGraph,
};
pub use group::{
    cross_number, format_sequence, is_h_sum, is_zero_sum, parse_group_spec, parse_sequence,
    CrossValue, GroupElement, GroupError, GroupSpec, PrimePower, SubgroupVertex, ZSequence,
};
pub use lab::{LabError, RandomModel};
pub use oracle::{
    has_small_h_sum, is_good, min_cross_zero_sum, OracleError, OracleLimits, OracleWitness,
};
pub use solver::{
    is_solvable, is_upward_solvable, potential_bound, solve_path_graph, solve_path_greedy,
    upward_plan, Firing, SolveCertificate, SolverOptions, UpwardOutcome,
};
