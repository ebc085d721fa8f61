//! Sparse symmetric matrix reordering.
//!
//! The crate provides Reverse Cuthill-McKee orderings driven by three
//! starting-node heuristics (minimum degree, George-Liu, and the bi-criteria
//! node finder that also weighs level-structure width), the bandwidth and
//! profile metrics used to judge them, and an envelope Cholesky solver whose
//! cost follows the profile directly.
//!
//! ```
//! use rcmpp::{rcm_pipeline, Algorithm, SparseSymMatrix, StartPolicy};
//!
//! // Path 0-2-1 stored out of order.
//! let m = SparseSymMatrix::from_triplets(
//!     3,
//!     &[(0, 0, 2.0), (1, 1, 2.0), (2, 2, 2.0), (0, 2, -1.0), (2, 0, -1.0), (1, 2, -1.0), (2, 1, -1.0)],
//!     true,
//! )
//! .unwrap();
//! let (_, report) = rcm_pipeline(&m, Algorithm::RcmPlusPlus, StartPolicy::default()).unwrap();
//! assert_eq!((report.bandwidth_before, report.bandwidth_after), (2, 1));
//! ```

pub mod envelope;
pub mod finders;
pub mod graph;
pub mod matrix;
pub mod matrix_market;
pub mod metrics;
pub mod ordering;

pub use envelope::{envelope_cholesky, EnvelopeFactor, SolverError};
pub use finders::{
    bnf_find, gl_find, mind_find, resolve_start, FinderError, FinderTrace, StartPolicy, TraceEntry,
};
pub use graph::{
    bfs_level_structure, connected_components, AdjacencyGraph, BfsWorkspace, ComponentSet,
    GraphError, LevelStructure,
};
pub use matrix::{MatrixError, SparseSymMatrix};
pub use matrix_market::{
    parse_matrix_market, parse_matrix_market_with, write_matrix_market, MatrixMarketError,
    ParseOptions,
};
pub use metrics::{
    bandwidth, exponential_smoothing, profile, proportion_optimal, relative_difference,
    MetricsError, SeriesPoint,
};
pub use ordering::{
    apply_permutation, cuthill_mckee, find_start_nodes, rcm_pipeline, reverse, Algorithm, Finder,
    Permutation, ReorderError, ReorderReport,
};
