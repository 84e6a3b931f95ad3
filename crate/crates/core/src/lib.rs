//! Restricted common superstring and supersequence: given a multiset of
//! symbols `t` and a set of patterns, order `t` so that as many patterns as
//! possible occur as substrings (or subsequences).
//!
//! The crate provides an exact branch-and-bound solver, approximation
//! algorithms for both kinds, reductions from clique / Max-ATSP / maximum
//! acyclic subgraph together with certificate maps, exact oracles for those
//! graph problems, and a benchmark harness.

pub mod bench;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod matcher;
pub mod model;
pub mod oracles;
pub mod reductions;
pub mod seed;
pub mod superstring;
pub mod supersequence;

pub use error::{Error, Result};
pub use exact::{solve_exact, upper_bound, ExactResult, Pruning, SearchConfig};
pub use graph::{Digraph, GraphFile, UndirectedGraph};
pub use model::{
    contains_subsequence, contains_substring, is_arrangement_of, score_arrangement, validate_instance, Alphabet,
    Arrangement, Instance, Kind, MultisetText, Pattern, Scorer, SolutionReport, Symbol, Violation,
};
