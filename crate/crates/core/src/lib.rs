//! Italian and perfect Italian domination on Sierpiński graphs `S(K_n, t)`.
//!
//! * [`graph`] builds `S(K_n, t)`, `K_n` and `P_m`, with JSON and DOT output.
//! * [`domination`] holds weight functions and the two domination checks.
//! * [`constructions`] produces optimal functions and the closed-form values.
//! * [`solver`] computes exact optima with three independent engines.

pub mod constructions;
pub mod domination;
pub mod error;
pub mod graph;
pub mod solver;
pub mod word;

pub use constructions::{
    closed_form_italian, closed_form_perfect, construct, construct_kn, construct_level2,
    construct_level3plus, construct_path, Construction, Regime,
};
pub use domination::{
    total_weight, verify, verify_idf, verify_pid, Variant, VerificationReport, Violation,
    ViolationKind, WeightDocument, WeightFunction,
};
pub use error::{Error, Result};
pub use graph::{
    adjacent_by_rule, build_complete, build_path, build_sierpinski, build_sierpinski_with_capacity,
    Capacity, Family, Graph, GraphDocument, SierpinskiGraph,
};
pub use solver::{
    enumerate_optima, solve, solve_branch_bound, solve_branch_bound_with_incumbent,
    solve_exhaustive, solve_path_dp, Engine, Enumeration, SearchConfig, SolveResult, VertexOrder,
};
pub use word::{rank_word, word_rank, VertexWord};
