//! Exact computation of matrix permanents, permanental polynomials, and
//! permanental rank/nullity of rational matrices and signed graphs, with a
//! verification harness for the rank-nullity identity
//! rho_per(A) + eta_per(A) = n and its class theorems.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, and all
//! analyses either return exact values or refuse with a resource error at
//! their documented caps.

pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod permanent;
pub mod poly;
pub mod rank;
pub mod rng;
pub mod sachs;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use gen::{example_matrix, generate, GenConfig, GenKind, Generated};
pub use graph::{diag_similar, Balance, CycleParity, Sign, SignedGraph, SwitchingVector};
pub use matrix::{ExactMatrix, IndexSet};
pub use permanent::{permanent, permanent_naive, permanent_naive_capped, permanent_sub};
pub use poly::{perm_nullity, perm_poly, perm_poly_principal_sums, UnivariatePoly};
pub use rank::{
    perm_rank_exact, perm_rank_nonnegative, support_matching_bound, PermRankResult,
    SupportDigraph,
};
pub use rng::SplitMix64;
pub use sachs::{
    criterion_report, ek_ok, for_each_sachs, sachs_coefficient, sachs_subgraphs,
    CriterionReport, EkOkResult, SachsComponent, SachsSubgraph,
};
pub use scalar::Rational;
pub use verify::{batch_verify, search_counterexamples, verify, BatchSummary, VerifyReport};
